#pragma once

#include <string>

namespace bisim {

// Shortest decimal that round-trips; scientific notation once the decimal
// exponent leaves [-4, 4].
std::string format_number(double x);
void append_number(std::string& out, double x);

}  // namespace bisim
