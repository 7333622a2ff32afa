#pragma once

#include <vector>

#include "m7inv/rational.hpp"

namespace m7inv {

/// A rational taken modulo a rational modulus m >= 0.
///
/// The representative is canonical: in [0, m) when m > 0. Modulus 0 means
/// no reduction takes place (the class is an honest rational). Addition and
/// subtraction are defined only between classes with equal modulus.
class ResidueClass {
 public:
  ResidueClass() = default;  // 0 mod 0
  ResidueClass(const Rational& value, const Rational& modulus);

  const Rational& value() const { return value_; }
  const Rational& modulus() const { return modulus_; }
  bool is_zero() const { return value_.is_zero(); }

  ResidueClass operator-() const { return ResidueClass(-value_, modulus_); }
  ResidueClass& operator+=(const ResidueClass& o);
  ResidueClass& operator-=(const ResidueClass& o);
  friend ResidueClass operator+(ResidueClass a, const ResidueClass& b) { return a += b; }
  friend ResidueClass operator-(ResidueClass a, const ResidueClass& b) { return a -= b; }

  /// Scaling by an integer; well defined for any modulus.
  ResidueClass scaled(const mpz_class& factor) const {
    return ResidueClass(value_ * Rational(factor), modulus_);
  }

  friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

 private:
  Rational value_;
  Rational modulus_;
};

/// Canonical representative of value mod modulus (modulus >= 0; 0 = no reduction).
ResidueClass reduce(const Rational& value, const Rational& modulus);

/// Reinterprets `factor * x` in a new modulus. Well defined only when
/// factor * x.modulus() is an integer multiple of the new modulus (so the
/// choice of lift cannot leak through); throws otherwise.
ResidueClass scale_into(const ResidueClass& x, const mpz_class& factor,
                        const Rational& new_modulus);

}  // namespace m7inv
