#include "bounds/surd.hpp"

#include "common/error.hpp"

namespace fqp::bounds {

namespace mp = boost::multiprecision;

namespace {

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Sign of u + b*sqrt(m), m > 0.
int surd_sign(const Rational& u, const Rational& b, const BigInt& m) {
  const int su = sign_of(u), sb = sign_of(b);
  if (sb == 0) return su;
  if (su == 0 || su == sb) return sb;
  const Rational lhs = u * u, rhs = b * b * Rational(m);
  if (lhs > rhs) return su;
  if (lhs < rhs) return sb;
  return 0;
}

}  // namespace

BigInt floor_of(const Rational& x) {
  const BigInt num = mp::numerator(x), den = mp::denominator(x);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

Surd::Surd(Rational a, Rational b, BigInt m) : a_(std::move(a)), b_(std::move(b)), m_(std::move(m)) {
  if (m_ < 1) throw ValidationError("surd radicand must be positive");
  normalize();
}

void Surd::normalize() {
  if (b_ == 0) {
    m_ = 1;
    return;
  }
  const BigInt root = mp::sqrt(m_);
  if (root * root == m_) {
    a_ += b_ * Rational(root);
    b_ = 0;
    m_ = 1;
  }
}

Surd Surd::half_power(const BigInt& q, unsigned k) {
  const BigInt whole = big_pow(q, k / 2);
  if (k % 2 == 0) return Surd(whole);
  return Surd(Rational(0), Rational(whole), q);
}

Surd Surd::operator+(const Surd& o) const {
  if (is_rational()) return Surd(a_ + o.a_, o.b_, o.m_);
  if (o.is_rational() || o.m_ == m_) return Surd(a_ + o.a_, b_ + o.b_, m_);
  throw Error("cannot add surds with different radicands");
}

Surd Surd::operator*(const Rational& c) const { return Surd(a_ * c, b_ * c, m_); }

int Surd::compare(const Rational& x) const { return surd_sign(a_ - x, b_, m_); }

BigInt Surd::floor() const {
  BigInt k = floor_of(a_);
  if (b_ != 0) {
    const BigInt t = mp::sqrt(floor_of(b_ * b_ * Rational(m_)));
    k += b_ > 0 ? t : -t - 1;
  }
  while (compare(Rational(k)) < 0) --k;
  while (compare(Rational(k + 1)) >= 0) ++k;
  return k;
}

BigInt Surd::ceil() const {
  const BigInt f = floor();
  return compare(Rational(f)) == 0 ? f : f + 1;
}

std::string Surd::to_string() const {
  if (b_ == 0) return a_.str();
  std::string s;
  if (a_ != 0) s = a_.str() + " + ";
  if (b_ != 1) s += b_.str() + "*";
  return s + "sqrt(" + m_.str() + ")";
}

}  // namespace fqp::bounds
