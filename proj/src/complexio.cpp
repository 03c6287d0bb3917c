#include "semilab/complexio.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace semilab {

namespace {

double parse_double(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;  // bare "i" / "+i"
  if (s == "-") return -1.0;              // "-i"
  // from_chars rejects a leading '+', which the a+bi split produces.
  const std::size_t start = s[0] == '+' ? 1 : 0;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("parse_complex: bad number '" + s + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::complex<double> parse_complex(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_complex: empty input");
  // Split at the last '+'/'-' that is neither leading nor an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const bool has_i = s.back() == 'i' || s.back() == 'I';
  if (!has_i) {
    if (split != std::string::npos)
      throw std::invalid_argument("parse_complex: two parts but no 'i' in '" + s + "'");
    return {parse_double(s), 0.0};
  }
  std::string body = s.substr(0, s.size() - 1);
  if (split == std::string::npos) return {0.0, parse_double(body)};
  return {parse_double(s.substr(0, split)),
          parse_double(body.substr(split))};
}

std::string format_complex(std::complex<double> z) {
  const double re = z.real(), im = z.imag();
  if (im == 0.0) return format_double(re);
  std::string imag = format_double(im) + "i";
  if (re == 0.0) return imag;
  return im < 0 || std::signbit(im) ? format_double(re) + imag
                                    : format_double(re) + "+" + imag;
}

}  // namespace semilab
