#include "fixpt/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fixpt/errors.hpp"
#include "fixpt/format.hpp"

namespace fixpt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw ParameterError(std::string("schedule parameter '") + what + "' must be finite");
    }
}

}  // namespace

Schedule::Schedule(Params params) : params_(std::move(params)) {
    std::visit(overloaded{
                   [](const Constant& c) { require_finite(c.value, "value"); },
                   [](const HarmonicTail& h) {
                       require_finite(h.scale, "scale");
                       require_finite(h.shift, "shift");
                       if (h.shift <= -1.0) {
                           throw ParameterError("harmonic_tail shift must exceed -1");
                       }
                   },
                   [](const Geometric& g) {
                       require_finite(g.ratio, "ratio");
                       require_finite(g.scale, "scale");
                   },
                   [](const Table& t) {
                       for (double v : t.values) require_finite(v, "values");
                       require_finite(t.tail, "tail");
                   },
                   [](const Formula& f) {
                       require_finite(f.offset, "offset");
                       require_finite(f.scale, "scale");
                       require_finite(f.ratio, "ratio");
                       require_finite(f.power, "power");
                       require_finite(f.shift, "shift");
                       if (f.shift <= -1.0) throw ParameterError("formula shift must exceed -1");
                       if (f.ratio < 0.0) throw ParameterError("formula ratio must be >= 0");
                   },
               },
               params_);
}

double Schedule::at(std::size_t n) const {
    if (n == 0) {
        throw ContractViolation("schedules are indexed from n = 1");
    }
    const double nd = static_cast<double>(n);
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.value; },
            [nd](const HarmonicTail& h) { return h.scale / (nd + h.shift); },
            [nd](const Geometric& g) { return g.scale * std::pow(g.ratio, nd); },
            [n](const Table& t) { return n <= t.values.size() ? t.values[n - 1] : t.tail; },
            [nd](const Formula& f) {
                return f.offset + f.scale * std::pow(f.ratio, nd) / std::pow(nd + f.shift, f.power);
            },
        },
        params_);
}

std::string_view Schedule::kind_name() const {
    return std::visit(overloaded{
                          [](const Constant&) { return std::string_view("constant"); },
                          [](const HarmonicTail&) { return std::string_view("harmonic_tail"); },
                          [](const Geometric&) { return std::string_view("geometric"); },
                          [](const Table&) { return std::string_view("table"); },
                          [](const Formula&) { return std::string_view("formula"); },
                      },
                      params_);
}

std::optional<double> Schedule::limit() const {
    return std::visit(
        overloaded{
            [](const Constant& c) -> std::optional<double> { return c.value; },
            [](const HarmonicTail&) -> std::optional<double> { return 0.0; },
            [](const Geometric& g) -> std::optional<double> {
                if (g.scale == 0.0 || std::abs(g.ratio) < 1.0) return 0.0;
                if (g.ratio == 1.0) return g.scale;
                return std::nullopt;
            },
            [](const Table& t) -> std::optional<double> { return t.tail; },
            [](const Formula& f) -> std::optional<double> {
                if (f.scale == 0.0 || f.ratio < 1.0) return f.offset;
                if (f.ratio == 1.0) {
                    if (f.power > 0.0) return f.offset;
                    if (f.power == 0.0) return f.offset + f.scale;
                }
                return std::nullopt;
            },
        },
        params_);
}

bool Schedule::summable() const {
    return std::visit(overloaded{
                          [](const Constant& c) { return c.value == 0.0; },
                          [](const HarmonicTail& h) { return h.scale == 0.0; },
                          [](const Geometric& g) { return g.scale == 0.0 || std::abs(g.ratio) < 1.0; },
                          [](const Table& t) { return t.tail == 0.0; },
                          [](const Formula& f) {
                              if (f.offset != 0.0) return false;
                              if (f.scale == 0.0 || f.ratio < 1.0) return true;
                              return f.ratio == 1.0 && f.power > 1.0;
                          },
                      },
                      params_);
}

std::pair<double, double> Schedule::bounds(std::size_t horizon) const {
    double lo = at(1);
    double hi = lo;
    for (std::size_t n = 2; n <= horizon; ++n) {
        const double v = at(n);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (const auto l = limit()) {
        lo = std::min(lo, *l);
        hi = std::max(hi, *l);
    }
    return {lo, hi};
}

std::string Schedule::describe() const {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const Constant& c) { out << "constant(" << format_double(c.value) << ")"; },
                   [&](const HarmonicTail& h) {
                       out << format_double(h.scale) << "/(n+" << format_double(h.shift) << ")";
                   },
                   [&](const Geometric& g) {
                       out << format_double(g.scale) << "*" << format_double(g.ratio) << "^n";
                   },
                   [&](const Table& t) {
                       out << "table(" << t.values.size() << " values, tail "
                           << format_double(t.tail) << ")";
                   },
                   [&](const Formula& f) {
                       out << format_double(f.offset) << " + " << format_double(f.scale) << "*"
                           << format_double(f.ratio) << "^n/(n+" << format_double(f.shift)
                           << ")^" << format_double(f.power);
                   },
               },
               params_);
    return out.str();
}

}  // namespace fixpt
