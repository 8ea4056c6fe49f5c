#include "hmpeq/scalar.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace hmpeq {

std::string ScalarTraits<Rational>::to_string(const Rational& x) {
  Rational canonical = x;
  canonical.canonicalize();
  return canonical.get_str();
}

std::string ScalarTraits<double>::to_string(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, end);
  if (s.find('.') == std::string::npos) {
    const auto e = s.find('e');
    if (e == std::string::npos)
      s += ".0";
    else
      s.insert(e, ".0");
  }
  return s;
}

}  // namespace hmpeq
