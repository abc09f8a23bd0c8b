#include "fixpt/mapping.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fixpt/errors.hpp"
#include "fixpt/format.hpp"
#include "fixpt/random.hpp"

namespace fixpt {

namespace {

constexpr std::uint64_t kValidationSeed = 0x5eed'f1c5;
constexpr std::size_t kSelfMapSamples = 1000;
constexpr std::size_t kPowerSamples = 100;
constexpr std::size_t kPowerCheckMaxN = 20;
constexpr double kPowerAgreement = 1e-10;
constexpr double kFixedPointResidual = 1e-10;
constexpr std::size_t kScheduleHorizon = 1000;
constexpr std::size_t kMinConclusiveSamples = 10;
constexpr std::array<double, 2> kDiscontinuityOffsets = {1e-3, 1e-6};

double max_abs_diff(const Vector& a, const Vector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<Vector> corner_points(const Domain& domain) {
    if (domain.kind() != Domain::Kind::box) return {};
    return {Vector(std::vector<double>(domain.lower().begin(), domain.lower().end())),
            Vector(std::vector<double>(domain.upper().begin(), domain.upper().end()))};
}

/// Points within the domain next to every declared discontinuity.
std::vector<Vector> discontinuity_neighbours(const Mapping& m, const Vector& d) {
    std::vector<Vector> out;
    for (double off : kDiscontinuityOffsets) {
        for (std::size_t i = 0; i < d.dim(); ++i) {
            for (double sign : {-1.0, 1.0}) {
                Vector z = d + Vector::basis(d.dim(), i, sign * off);
                if (m.contains(z)) out.push_back(std::move(z));
            }
        }
    }
    return out;
}

/// Fixed-order list of sample pairs: discontinuity-adjacent pairs and box
/// corners first, then seeded random pairs up to sample_count.
std::vector<std::pair<Vector, Vector>> sample_pairs(const Mapping& m, std::size_t sample_count,
                                                    std::uint64_t seed) {
    std::vector<std::pair<Vector, Vector>> pairs;
    pairs.reserve(sample_count);
    const auto& disc = m.meta().discontinuities;
    for (const auto& d : disc) {
        if (!m.contains(d)) continue;
        for (auto& z : discontinuity_neighbours(m, d)) pairs.emplace_back(std::move(z), d);
    }
    const auto corners = corner_points(m.domain());
    if (corners.size() == 2) pairs.emplace_back(corners[0], corners[1]);
    if (pairs.size() > sample_count) pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(sample_count), pairs.end());

    Rng rng(seed);
    std::size_t draw = 0;
    while (pairs.size() < sample_count) {
        Vector x = sample_domain(m.domain(), m.space(), rng);
        Vector y = sample_domain(m.domain(), m.space(), rng);
        // Every fourth random pair straddles a discontinuity at a random offset.
        if (!disc.empty() && draw % 4 == 3) {
            const Vector& d = disc[rng.integer(0, disc.size() - 1)];
            const double off = std::pow(10.0, -rng.uniform(2.0, 9.0));
            Vector z = d + Vector::basis(d.dim(), rng.integer(0, d.dim() - 1),
                                         rng.uniform() < 0.5 ? -off : off);
            if (m.contains(z) && m.contains(d)) {
                x = std::move(z);
                y = d;
            }
        }
        ++draw;
        pairs.emplace_back(std::move(x), std::move(y));
    }
    return pairs;
}

Verdict verdict_for(double max_violation, std::size_t sample_count) {
    if (max_violation > kCertTolerance) return Verdict::refuted;
    if (sample_count < kMinConclusiveSamples) return Verdict::inconclusive;
    return Verdict::certified;
}

/// Evaluates violation(n, ||T^n x - T^n y||, ||x - y||) over sampled pairs
/// and 1 <= n <= n_max; keeps the first maximum in sample order.
template <class ViolationFn>
Certificate certify_pairs(const Mapping& m, std::string property, std::size_t n_max,
                          std::size_t sample_count, std::uint64_t seed, ViolationFn violation) {
    if (n_max == 0) {
        throw ContractViolation("n_max must be >= 1");
    }
    Certificate cert;
    cert.property_name = std::move(property);
    cert.n_min = 1;
    cert.n_max = n_max;
    cert.sample_count = sample_count;
    bool first = true;
    for (const auto& [x, y] : sample_pairs(m, sample_count, seed)) {
        const double dxy = m.space().distance(x, y);
        Vector tx = x;
        Vector ty = y;
        for (std::size_t n = 1; n <= n_max; ++n) {
            if (m.has_closed_form_power()) {
                tx = m.apply_power(n, x);
                ty = m.apply_power(n, y);
            } else {
                tx = m.apply(tx);
                ty = m.apply(ty);
            }
            const double v = violation(n, m.space().distance(tx, ty), dxy);
            if (first || v > cert.max_violation) {
                cert.max_violation = v;
                cert.witness = Witness{x, y, n};
                first = false;
            }
        }
    }
    if (first) {
        cert.max_violation = -std::numeric_limits<double>::infinity();
    }
    cert.verdict = verdict_for(cert.max_violation, sample_count);
    return cert;
}

void check_schedule_range(const Schedule& s, const char* name, double lo, double lim,
                          std::size_t horizon) {
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (s.at(n) < lo) {
            throw ScheduleViolation(std::string(name) + "_" + std::to_string(n) + " = " +
                                    format_double(s.at(n)) + " is below " + format_double(lo));
        }
    }
    const auto l = s.limit();
    if (!l || std::abs(*l - lim) > 0.0) {
        throw ScheduleViolation(std::string(name) + " must converge to " + format_double(lim));
    }
}

}  // namespace

std::string_view to_string(MappingClass c) {
    switch (c) {
        case MappingClass::nonexpansive: return "nonexpansive";
        case MappingClass::asymptotically_nonexpansive: return "asymptotically_nonexpansive";
        case MappingClass::nearly_nonexpansive: return "nearly_nonexpansive";
        case MappingClass::uniformly_lipschitz_only: return "uniformly_lipschitz_only";
        case MappingClass::unknown: return "unknown";
    }
    return "unknown";
}

MappingClass mapping_class_from_string(std::string_view name) {
    for (auto c : {MappingClass::nonexpansive, MappingClass::asymptotically_nonexpansive,
                   MappingClass::nearly_nonexpansive, MappingClass::uniformly_lipschitz_only,
                   MappingClass::unknown}) {
        if (to_string(c) == name) return c;
    }
    throw ParameterError("unknown mapping class '" + std::string(name) + "'");
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::refuted: return "refuted";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Mapping::Mapping(std::string name, NormedSpace space, Domain domain, Evaluator apply,
                 std::optional<PowerEvaluator> power, MappingMeta meta)
    : name_(std::move(name)), space_(space), domain_(std::move(domain)), apply_(std::move(apply)),
      power_(std::move(power)), meta_(std::move(meta)) {
    if (domain_.dim() != space_.dim()) {
        throw ContractViolation("mapping domain and space dimensions differ");
    }
    validate();
}

void Mapping::require_in_domain(const Vector& x) const {
    if (x.dim() != space_.dim() || !domain_.contains(space_, x)) {
        throw DomainViolation("point outside the domain of mapping '" + name_ + "'");
    }
}

Vector Mapping::apply(const Vector& x) const {
    require_in_domain(x);
    return apply_(x);
}

Vector Mapping::apply_power(std::size_t n, const Vector& x) const {
    require_in_domain(x);
    if (n == 0) return x;
    if (power_) return (*power_)(n, x);
    Vector y = x;
    for (std::size_t i = 0; i < n; ++i) y = apply_(y);
    return y;
}

std::size_t Mapping::power_cost(std::size_t n) const noexcept {
    if (n == 0) return 0;
    return power_ ? 1 : n;
}

bool Mapping::has_known_fixed_set() const noexcept {
    return meta_.fixed_set_is_domain ||
           (meta_.known_fixed_points && !meta_.known_fixed_points->empty());
}

std::optional<double> Mapping::distance_to_fixed_set(const Vector& x) const {
    if (meta_.fixed_set_is_domain) {
        // Distance from x to C itself; zero for every x in C.
        return contains(x) ? 0.0 : std::optional<double>{};
    }
    if (!meta_.known_fixed_points || meta_.known_fixed_points->empty()) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : *meta_.known_fixed_points) best = std::min(best, space_.distance(x, p));
    return best;
}

void Mapping::validate() const {
    switch (meta_.declared_class) {
        case MappingClass::asymptotically_nonexpansive:
            if (!meta_.k_schedule) {
                throw ContractViolation("asymptotically nonexpansive mapping needs a k_schedule");
            }
            check_schedule_range(*meta_.k_schedule, "k", 1.0, 1.0, kScheduleHorizon);
            break;
        case MappingClass::nearly_nonexpansive:
            if (!meta_.a_schedule) {
                throw ContractViolation("nearly nonexpansive mapping needs an a_schedule");
            }
            check_schedule_range(*meta_.a_schedule, "a", 0.0, 0.0, kScheduleHorizon);
            break;
        default:
            break;
    }
    if (meta_.lipschitz_L && !(*meta_.lipschitz_L > 0.0)) {
        throw ContractViolation("Lipschitz constant must be > 0");
    }

    Rng rng(kValidationSeed);
    std::vector<Vector> probes = corner_points(domain_);
    for (const auto& d : meta_.discontinuities) {
        if (contains(d)) probes.push_back(d);
    }
    for (std::size_t i = 0; i < kSelfMapSamples; ++i) {
        probes.push_back(sample_domain(domain_, space_, rng));
    }
    for (const auto& x : probes) {
        const Vector tx = apply_(x);
        if (!contains(tx)) {
            throw ContractViolation("mapping '" + name_ + "' is not a self-map of its domain");
        }
    }

    if (power_) {
        for (std::size_t i = 0; i < kPowerSamples; ++i) {
            const std::size_t n = rng.integer(1, kPowerCheckMaxN);
            const Vector x = sample_domain(domain_, space_, rng);
            Vector iterated = x;
            for (std::size_t k = 0; k < n; ++k) iterated = apply_(iterated);
            if (max_abs_diff((*power_)(n, x), iterated) > kPowerAgreement) {
                throw ContractViolation("closed-form power of '" + name_ +
                                        "' disagrees with repeated application at n = " +
                                        std::to_string(n));
            }
        }
    }

    if (meta_.known_fixed_points) {
        for (const auto& p : *meta_.known_fixed_points) {
            if (!contains(p) || space_.distance(p, apply_(p)) > kFixedPointResidual) {
                throw ContractViolation("declared fixed point of '" + name_ + "' is not fixed");
            }
        }
    }
}

Vector apply_power(const Mapping& m, std::size_t n, const Vector& x) { return m.apply_power(n, x); }

Certificate certify_nearly_nonexpansive(const Mapping& m, const Schedule& a, std::size_t n_max,
                                        std::size_t sample_count, std::uint64_t seed) {
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (a.at(n) < 0.0) throw ContractViolation("a_n must be >= 0");
    }
    return certify_pairs(m, "nearly_nonexpansive", n_max, sample_count, seed,
                         [&a](std::size_t n, double dt, double dxy) { return dt - dxy - a.at(n); });
}

Certificate certify_uniform_lipschitz(const Mapping& m, double L, std::size_t n_max,
                                      std::size_t sample_count, std::uint64_t seed) {
    if (!(L > 0.0)) throw ContractViolation("L must be > 0");
    return certify_pairs(m, "uniformly_lipschitz", n_max, sample_count, seed,
                         [L](std::size_t, double dt, double dxy) { return dt - L * dxy; });
}

Certificate certify_asymptotically_nonexpansive(const Mapping& m, const Schedule& k,
                                                std::size_t n_max, std::size_t sample_count,
                                                std::uint64_t seed) {
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (k.at(n) < 1.0) throw ContractViolation("k_n must be >= 1");
    }
    return certify_pairs(m, "asymptotically_nonexpansive", n_max, sample_count, seed,
                         [&k](std::size_t n, double dt, double dxy) { return dt - k.at(n) * dxy; });
}

Certificate certify_nonexpansive(const Mapping& m, std::size_t sample_count, std::uint64_t seed) {
    return certify_pairs(m, "nonexpansive", 1, sample_count, seed,
                         [](std::size_t, double dt, double dxy) { return dt - dxy; });
}

Schedule near_sequence_from_asymptotic(const Schedule& k, double diam) {
    if (!(diam >= 0.0) || !std::isfinite(diam)) {
        throw ContractViolation("diameter must be finite and >= 0");
    }
    std::size_t horizon = kScheduleHorizon;
    if (const auto* t = std::get_if<Schedule::Table>(&k.params())) {
        horizon = std::max(horizon, t->values.size() + 1);
    }
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (k.at(n) < 1.0) {
            throw ScheduleViolation("k_" + std::to_string(n) + " = " + format_double(k.at(n)) +
                                    " is below 1");
        }
    }
    const auto lim = k.limit();
    if (lim && *lim < 1.0) {
        throw ScheduleViolation("k_n tends to a value below 1");
    }

    struct Transform {
        double diam;
        Schedule operator()(const Schedule::Constant& c) const {
            return Schedule::constant((c.value - 1.0) * diam);
        }
        Schedule operator()(const Schedule::HarmonicTail&) const {
            // k_n -> 0 contradicts the range check above.
            throw ScheduleViolation("harmonic k_n tends to 0");
        }
        Schedule operator()(const Schedule::Geometric& g) const {
            return Schedule::formula(-diam, g.scale * diam, g.ratio, 0.0);
        }
        Schedule operator()(const Schedule::Table& t) const {
            std::vector<double> v(t.values.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = (t.values[i] - 1.0) * diam;
            return Schedule::table(std::move(v), (t.tail - 1.0) * diam);
        }
        Schedule operator()(const Schedule::Formula& f) const {
            return Schedule::formula((f.offset - 1.0) * diam, f.scale * diam, f.ratio, f.power,
                                     f.shift);
        }
    };
    return std::visit(Transform{diam}, k.params());
}

std::optional<Schedule> effective_near_sequence(const Mapping& m) {
    const auto& meta = m.meta();
    if (meta.a_schedule) return meta.a_schedule;
    if (meta.k_schedule) {
        return near_sequence_from_asymptotic(*meta.k_schedule, m.domain().diameter(m.space()));
    }
    if (meta.declared_class == MappingClass::nonexpansive) return Schedule::constant(0.0);
    return std::nullopt;
}

double fixed_point_residual(const Mapping& m, const Vector& x) {
    return m.space().distance(x, m.apply(x));
}

}  // namespace fixpt
