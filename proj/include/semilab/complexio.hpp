#pragma once

#include <complex>
#include <string>

namespace semilab {

// Parses "a+bi" style complex literals: "1", "-0.5i", "0.3+0.2i", "1e-3-2i",
// "i", "-i". Whitespace is not allowed. Throws std::invalid_argument on
// malformed input.
std::complex<double> parse_complex(const std::string& s);

// Formats a complex number back to the "a+bi" form with shortest round-trip
// decimal digits; pure-real and pure-imaginary values are shortened.
std::string format_complex(std::complex<double> z);

}  // namespace semilab
