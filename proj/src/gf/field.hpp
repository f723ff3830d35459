#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "common/error.hpp"

namespace fqp::gf {

// Index of an element of F_{p^k}: the coordinate vector (c_0, ..., c_{k-1})
// in the basis 1, x, ..., x^{k-1} read as the base-p number sum c_i p^i.
// Index order is the enumeration order, which is lexicographic on the
// coordinate vector read from c_{k-1} down to c_0. The prime subfield
// occupies indices [0, p).
using Raw = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;

class Field;
class Element;

// Fields are interned: one instance per (p, k) lives for the whole program,
// so pointer equality is field equality.
using FieldRef = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);

// F_{p^k} with the lexicographically smallest monic irreducible modulus
// (coefficients compared from the constant term up).
FieldRef make_field(std::uint64_t p, unsigned k,
                    std::uint64_t max_cardinality = kMaxFieldSize);

// Parses "p" or "p^k". Errors name the offending token.
FieldRef parse_field(std::string_view text,
                     std::uint64_t max_cardinality = kMaxFieldSize);

class Field {
 public:
  enum class Mode { Table, Prime, Zech };

  Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  std::uint32_t cardinality() const noexcept { return q_; }
  // c_0, ..., c_k of the monic modulus; empty for a prime field.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  std::string name() const;
  Mode mode() const noexcept { return mode_; }

  static constexpr Raw zero() noexcept { return 0; }
  static constexpr Raw one() noexcept { return 1; }
  // Class of x in F_p[x]/(modulus); 1 in a prime field.
  Raw generator() const noexcept { return k_ == 1 ? 1 : p_; }

  // Integer reduced into the prime subfield.
  Raw from_int(std::int64_t c) const noexcept;
  std::vector<std::uint32_t> coordinates(Raw a) const;
  Raw from_coordinates(std::span<const std::uint32_t> coords) const;
  bool in_prime_subfield(Raw a) const noexcept { return a < p_; }

  Raw add(Raw a, Raw b) const noexcept {
    switch (mode_) {
      case Mode::Table:
        return add_tab_[a * q_ + b];
      case Mode::Prime: {
        const Raw s = a + b;
        return s >= p_ ? s - p_ : s;
      }
      case Mode::Zech:
        break;
    }
    return zech_add(a, b);
  }
  Raw neg(Raw a) const noexcept {
    switch (mode_) {
      case Mode::Table:
        return neg_tab_[a];
      case Mode::Prime:
        return a == 0 ? 0 : p_ - a;
      case Mode::Zech:
        break;
    }
    if (a == 0 || p_ == 2) return a;
    return exp_[log_[a] + (q_ - 1) / 2];
  }
  Raw sub(Raw a, Raw b) const noexcept { return add(a, neg(b)); }
  Raw mul(Raw a, Raw b) const noexcept {
    switch (mode_) {
      case Mode::Table:
        return mul_tab_[a * q_ + b];
      case Mode::Prime:
        return static_cast<Raw>(std::uint64_t{a} * b % p_);
      case Mode::Zech:
        break;
    }
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  // a*b + c
  Raw fma(Raw a, Raw b, Raw c) const noexcept { return add(mul(a, b), c); }
  // Throws ValidationError on zero.
  Raw inv(Raw a) const;
  // pow(0, 0) == 1.
  Raw pow(Raw a, std::uint64_t e) const noexcept;

  Element element(Raw a) const;
  std::vector<Element> elements() const;
  std::string format(Raw a) const;

 private:
  Raw zech_add(Raw a, Raw b) const noexcept;
  void build_tables();

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  Mode mode_;

  std::vector<std::uint8_t> add_tab_, mul_tab_, neg_tab_, inv_tab_;
  std::vector<Raw> exp_;   // 2(q-1) entries so log sums need no reduction
  std::vector<Raw> log_;
  std::vector<Raw> zech_;  // log(1 + g^n), kNoLog when 1 + g^n == 0
  static constexpr Raw kNoLog = UINT32_MAX;
};

// Element bound to its field. Arithmetic between different fields throws.
class Element {
 public:
  Element(const Field& f, Raw v) : field_(&f), value_(v) {}

  const Field& field() const noexcept { return *field_; }
  Raw raw() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Element inv() const { return {*field_, field_->inv(value_)}; }
  Element pow(std::uint64_t e) const { return {*field_, field_->pow(value_, e)}; }
  Element operator-() const { return {*field_, field_->neg(value_)}; }

  friend Element operator+(const Element& a, const Element& b) {
    check_same(a, b);
    return {*a.field_, a.field_->add(a.value_, b.value_)};
  }
  friend Element operator-(const Element& a, const Element& b) {
    check_same(a, b);
    return {*a.field_, a.field_->sub(a.value_, b.value_)};
  }
  friend Element operator*(const Element& a, const Element& b) {
    check_same(a, b);
    return {*a.field_, a.field_->mul(a.value_, b.value_)};
  }
  friend bool operator==(const Element& a, const Element& b) noexcept {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  std::string to_string() const { return field_->format(value_); }

 private:
  static void check_same(const Element& a, const Element& b) {
    if (a.field_ != b.field_)
      throw ValidationError("mixed fields: " + a.field_->name() + " and " +
                            b.field_->name());
  }

  const Field* field_;
  Raw value_;
};

// Ring embedding F -> E for F = F_{p^a}, E = F_{p^b}, a | b. F's generator
// maps to the first root of F's modulus in E's enumeration order.
class Embedding {
 public:
  Embedding(FieldRef from, FieldRef to);

  const FieldRef& source() const noexcept { return from_; }
  const FieldRef& target() const noexcept { return to_; }
  Raw operator()(Raw a) const noexcept { return image_[a]; }
  Element apply(const Element& a) const;
  // Element of F mapping to b, if b lies in the image.
  std::optional<Raw> preimage(Raw b) const;

 private:
  FieldRef from_, to_;
  std::vector<Raw> image_;
  std::unordered_map<Raw, Raw> back_;
};

}  // namespace fqp::gf
