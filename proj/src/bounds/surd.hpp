#pragma once

#include <string>

#include "common/bigint.hpp"

namespace fqp::bounds {

// Exact real number a + b*sqrt(m) with rational a, b and integer m >= 1.
// Used for bounds carrying q^{k/2} with k odd; every comparison squares
// instead of rounding.
class Surd {
 public:
  Surd() : m_(1) {}
  Surd(BigInt v) : a_(Rational(v)), m_(1) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational a, Rational b, BigInt m);

  // q^{k/2}.
  static Surd half_power(const BigInt& q, unsigned k);

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& surd_coefficient() const noexcept { return b_; }
  const BigInt& radicand() const noexcept { return m_; }
  bool is_rational() const noexcept { return b_ == 0 || m_ == 1; }

  Surd operator+(const Surd& o) const;
  Surd operator*(const Rational& c) const;

  // Sign of (*this - x).
  int compare(const Rational& x) const;
  bool at_least(const Rational& x) const { return compare(x) >= 0; }

  BigInt floor() const;
  BigInt ceil() const;

  // "a", "b*sqrt(m)" or "a + b*sqrt(m)".
  std::string to_string() const;

 private:
  void normalize();

  Rational a_, b_;
  BigInt m_;
};

BigInt floor_of(const Rational& x);
BigInt ceil_of(const Rational& x);

}  // namespace fqp::bounds
