#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fixpt {

/// Real sequence indexed from n = 1 (alpha_n, beta_n, a_n, k_n).
///
/// Every kind is a plain parameter record, so schedules compare, copy and
/// serialize by value.
class Schedule {
public:
    struct Constant {
        double value = 0.0;
        friend bool operator==(const Constant&, const Constant&) = default;
    };
    /// scale / (n + shift)
    struct HarmonicTail {
        double scale = 1.0;
        double shift = 0.0;
        friend bool operator==(const HarmonicTail&, const HarmonicTail&) = default;
    };
    /// scale * ratio^n
    struct Geometric {
        double ratio = 0.5;
        double scale = 1.0;
        friend bool operator==(const Geometric&, const Geometric&) = default;
    };
    /// values[n - 1] for n <= values.size(), tail afterwards.
    struct Table {
        std::vector<double> values;
        double tail = 0.0;
        friend bool operator==(const Table&, const Table&) = default;
    };
    /// offset + scale * ratio^n / (n + shift)^power
    struct Formula {
        double offset = 0.0;
        double scale = 1.0;
        double ratio = 1.0;
        double power = 0.0;
        double shift = 0.0;
        friend bool operator==(const Formula&, const Formula&) = default;
    };

    using Params = std::variant<Constant, HarmonicTail, Geometric, Table, Formula>;

    explicit Schedule(Params params);

    static Schedule constant(double value) { return Schedule(Constant{value}); }
    static Schedule harmonic_tail(double scale, double shift) {
        return Schedule(HarmonicTail{scale, shift});
    }
    static Schedule geometric(double ratio, double scale = 1.0) {
        return Schedule(Geometric{ratio, scale});
    }
    static Schedule table(std::vector<double> values, double tail) {
        return Schedule(Table{std::move(values), tail});
    }
    static Schedule formula(double offset, double scale, double ratio, double power,
                            double shift = 0.0) {
        return Schedule(Formula{offset, scale, ratio, power, shift});
    }

    /// Value at index n >= 1. Throws ContractViolation for n == 0.
    double at(std::size_t n) const;

    std::string_view kind_name() const;
    const Params& params() const noexcept { return params_; }

    /// lim at(n) when it follows from the parameters, nullopt when the
    /// sequence has no finite limit.
    std::optional<double> limit() const;
    /// Whether sum at(n) converges, decided from the parameters.
    bool summable() const;

    /// Smallest and largest value over 1..horizon, folded with limit().
    std::pair<double, double> bounds(std::size_t horizon) const;

    std::string describe() const;

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    Params params_;
};

}  // namespace fixpt
