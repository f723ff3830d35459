#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bounds/bounds.hpp"
#include "common/bigint.hpp"
#include "common/exec.hpp"
#include "gf/field.hpp"

namespace fqp::valueset {

using gf::FieldRef;
using gf::Raw;

// Univariate polynomial, coefficients from degree 0 upwards.
class UniPoly {
 public:
  UniPoly(FieldRef field, std::vector<Raw> coeffs);

  const FieldRef& field() const noexcept { return field_; }
  const std::vector<Raw>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Raw eval(Raw x) const noexcept;
  std::string to_string() const;

 private:
  FieldRef field_;
  std::vector<Raw> coeffs_;
};

std::uint64_t value_set_size(const UniPoly& f);

// sum_{r=1}^{d} (-1)^{r-1} / r!
Rational mu(int d);

// f = T^d + a_{d-1}T^{d-1} + ... + a_1 T with a_{d-1}, ..., a_{d-s} fixed and
// a_{d-s-1}, ..., a_1 free.
struct ValueSetFamily {
  FieldRef field;
  int d = 0;
  int s = 0;
  std::vector<Raw> fixed;  // a_{d-1}, ..., a_{d-s}

  std::uint64_t size() const;  // q^{d-s-1}
  // T^d plus the fixed terms; every member agrees with it above degree d-s-1.
  UniPoly fixed_part() const;
  // Free coefficients a_1, a_2, ... are the base-q digits of idx.
  UniPoly member(std::uint64_t idx) const;
  std::string tuple_string() const;
};

ValueSetFamily make_family(FieldRef field, int d, int s, std::vector<Raw> fixed);

Rational average_direct(const ValueSetFamily& fam, const ExecOptions& opts);

// Whether f restricted to X is the restriction of a polynomial of degree
// <= deg f - s - 1. X must have distinct elements.
bool is_allowable(const UniPoly& f, std::span<const Raw> X, int s);

// Number of allowable r-subsets for the family, d-s+1 <= r <= d.
std::uint64_t chi(const ValueSetFamily& fam, int r, const ExecOptions& opts);

// sum_{r=1}^{d} (-1)^{r-1} C(q,r) q^{1-r}
Rational cohen_average(int d, std::uint64_t q);

Rational average_via_chi(const ValueSetFamily& fam, const ExecOptions& opts);

int chi_D(int s, int d, int r);
BigInt chi_delta(int s, int d, int r);

// Bracket for e^{-1}.
Rational inv_e_lower();
Rational inv_e_upper();

struct ChiCheck {
  std::uint64_t chi = 0;
  bounds::BoundRow row;
};
ChiCheck chi_bound_check(const ValueSetFamily& fam, int r, const ExecOptions& opts);

struct ECheck {
  Rational average;
  Rational deviation;          // |N(d,s) - mu_d q|
  Rational e_lower, e_upper;   // E(s,d) with e^{-1} at either end of its bracket
  bounds::BoundRow row;
};
ECheck e_bound_check(const ValueSetFamily& fam, const ExecOptions& opts);

// Fixed-coefficient tuples for a sweep cell: every tuple when q^s <= limit,
// otherwise `limit` distinct tuples drawn from the seed.
std::vector<std::vector<Raw>> fixed_tuples(const gf::Field& F, int s, std::uint64_t seed,
                                           std::size_t limit = 25);

}  // namespace fqp::valueset
