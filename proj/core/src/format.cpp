#include "bisim/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string_view>

namespace bisim {

void append_number(std::string& out, double x)
{
    if (std::isnan(x)) {
        out += "nan";
        return;
    }
    if (std::isinf(x)) {
        out += x > 0 ? "inf" : "-inf";
        return;
    }
    if (x == 0.0) {
        out += std::signbit(x) ? "-0" : "0";
        return;
    }
    std::array<char, 64> buf{};
    auto sci = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific);
    const std::string_view text(buf.data(), static_cast<std::size_t>(sci.ptr - buf.data()));
    const auto e = text.find('e');
    const int exponent = std::atoi(text.data() + e + 1);
    if (std::abs(exponent) > 4) {
        out += text;
        return;
    }
    auto fixed = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed);
    out.append(buf.data(), fixed.ptr);
}

std::string format_number(double x)
{
    std::string s;
    append_number(s, x);
    return s;
}

}  // namespace bisim
