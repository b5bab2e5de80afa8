#include "phproc/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace phproc {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                      std::chars_format::general, 12);
    return std::string(buffer.data(), result.ptr);
}

double round_to_output(double value) {
    if (!std::isfinite(value)) return value;
    const std::string text = format_number(value);
    double parsed = value;
    std::from_chars(text.data(), text.data() + text.size(), parsed);
    return parsed;
}

}  // namespace phproc
