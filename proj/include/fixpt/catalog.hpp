#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fixpt/mapping.hpp"

namespace fixpt {

/// Tx = qx on [0, 1), T1 = 0. Discontinuous at 1, nearly nonexpansive with a_n = q^n.
Mapping make_example21(double q);

/// Tx = qx on the unit ball of l_p^dim.
Mapping make_linear_contraction(double q, std::size_t dim, double p = 2.0);

/// Identity on [0, 1]^dim; every point is fixed.
Mapping make_identity(std::size_t dim, double p = 2.0);

/// Catalog map with Lipschitz constant above one whose iterates settle to
/// nonexpansive ones (k_n -> 1 after finitely many steps).
///
/// dim == 1 falls back to Tx = x / 2 on [0, 1] with k_n = 1. For dim >= 2, on
/// [0, 1] x [0, 4] x [0, 1]^(dim - 2):
///     T(x)_0 = 0,  T(x)_1 = 2 x_0 + x_1 / 2,  T(x)_i = x_i / 2 (i >= 2)
/// so T^n(x)_1 = 2^(2-n) x_0 + 2^(-n) x_1 and k_n = max(1, ||(2^(2-n), 2^(-n))||_q)
/// with q the conjugate exponent of p.
Mapping make_asymptotically_nonexpansive_example(std::size_t dim, double p = 2.0);

/// Tx = cos x on [0, 1]. Its fixed point is deliberately left undeclared.
Mapping make_cosine();

/// Identifiers accepted by make_catalog_mapping.
const std::vector<std::string>& catalog_ids();

using CatalogParams = std::map<std::string, double>;

/// Builds a catalog mapping in `space`. Throws ParameterError for unknown ids,
/// unknown parameter names, or parameters outside their range.
Mapping make_catalog_mapping(std::string_view id, const CatalogParams& params,
                             const NormedSpace& space);

}  // namespace fixpt
