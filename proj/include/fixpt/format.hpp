#pragma once

#include <string>

namespace fixpt {

/// Shortest decimal string that parses back to exactly `value`.
/// Non-finite values render as "nan", "inf" and "-inf".
std::string format_double(double value);

}  // namespace fixpt
