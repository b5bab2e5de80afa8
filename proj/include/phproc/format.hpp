#pragma once

#include <string>

namespace phproc {

/// Locale-independent text for a double with 12 significant digits
/// ("nan", "inf" and "-inf" for non-finite values).
std::string format_number(double value);

/// format_number, then parsed back: the double that the text represents.
double round_to_output(double value);

}  // namespace phproc
