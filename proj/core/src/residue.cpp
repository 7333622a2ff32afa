#include "m7inv/residue.hpp"

namespace m7inv {

ResidueClass::ResidueClass(const Rational& value, const Rational& modulus) {
  if (modulus.sign() < 0) throw std::domain_error("ResidueClass: negative modulus");
  modulus_ = modulus;
  if (modulus.is_zero()) {
    value_ = value;
  } else {
    value_ = value - Rational((value / modulus).floor()) * modulus;
  }
}

ResidueClass reduce(const Rational& value, const Rational& modulus) {
  return ResidueClass(value, modulus);
}

ResidueClass& ResidueClass::operator+=(const ResidueClass& o) {
  if (modulus_ != o.modulus_)
    throw std::invalid_argument("ResidueClass: modulus mismatch in addition");
  *this = ResidueClass(value_ + o.value_, modulus_);
  return *this;
}

ResidueClass& ResidueClass::operator-=(const ResidueClass& o) {
  if (modulus_ != o.modulus_)
    throw std::invalid_argument("ResidueClass: modulus mismatch in subtraction");
  *this = ResidueClass(value_ - o.value_, modulus_);
  return *this;
}

ResidueClass scale_into(const ResidueClass& x, const mpz_class& factor,
                        const Rational& new_modulus) {
  if (new_modulus.sign() < 0) throw std::domain_error("scale_into: negative modulus");
  // factor * old_modulus must land in new_modulus * Z, otherwise the result
  // would depend on the lift of x.
  const Rational carried = Rational(factor) * x.modulus();
  if (new_modulus.is_zero()) {
    if (!carried.is_zero()) throw std::domain_error("scale_into: ill-defined scaling");
  } else if (!(carried / new_modulus).is_integer()) {
    throw std::domain_error("scale_into: ill-defined scaling");
  }
  return ResidueClass(Rational(factor) * x.value(), new_modulus);
}

}  // namespace m7inv
