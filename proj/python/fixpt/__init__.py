"""Fixed-point iteration schemes, certifiers and convergence checks."""

from ._fixpt import (
    ConfigError,
    ContractViolation,
    DomainViolation,
    FixptError,
    InfeasibleConstraint,
    ParameterError,
    apply_power,
    catalog_ids,
    certify,
    check_lemma21,
    compare,
    modulus,
    norm,
    run,
    run_scenario,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "DomainViolation",
    "FixptError",
    "InfeasibleConstraint",
    "ParameterError",
    "apply_power",
    "catalog_ids",
    "certify",
    "check_lemma21",
    "compare",
    "modulus",
    "norm",
    "run",
    "run_scenario",
]
