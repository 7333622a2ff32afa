#include "m7inv/rational.hpp"

#include <vector>

namespace m7inv {

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational: empty string");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(text));
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw std::invalid_argument("Rational: malformed fraction");
    return Rational(mpz_class(num), mpz_class(den));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse \"" + text + "\"");
  }
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

mpz_class gcd_nonneg(const std::vector<mpz_class>& values) {
  mpz_class g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

}  // namespace m7inv
