#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bounds/surd.hpp"
#include "common/bigint.hpp"

namespace fqp::bounds {

// Shape of a complete intersection in P^n together with the field size.
struct BoundContext {
  unsigned n = 0;
  unsigned r = 0;
  int s = -1;               // declared singular-locus dimension, -1 smooth
  std::vector<int> d;       // nonincreasing, n - r entries
  std::uint64_t q = 0;

  BigInt delta() const;
  int D() const;
  int dmax() const;
  bool nonlinear() const;   // every d_i >= 2
  BoundContext with_s(int s2) const {
    BoundContext c = *this;
    c.s = s2;
    return c;
  }
};

// Sorts the degrees and checks the shape.
BoundContext make_context(unsigned n, unsigned r, int s, std::vector<int> d, std::uint64_t q);

// Primitive Betti numbers of smooth complete intersections: curves (d has
// n-1 entries) and surfaces (d has n-2 entries).
BigInt betti_b1(unsigned n, const std::vector<int>& d);
BigInt betti_b2(unsigned n, const std::vector<int>& d);
BigInt betti_b2_upper(unsigned n, const std::vector<int>& d);
// b_k'(n, d) for k in {1, 2}; empty otherwise.
std::optional<BigInt> primitive_betti(unsigned k, unsigned n, const std::vector<int>& d);

// b * q^{r/2}.
Surd deligne_bound(std::uint64_t q, unsigned r, const BigInt& b);

BigInt projective_upper(const BigInt& delta, unsigned r, std::uint64_t q);
BigInt serre(const BigInt& delta, unsigned n, std::uint64_t q);
BigInt serre_multih(int d, unsigned n, unsigned m, std::uint64_t q);

// Zero-count bounds for a multihomogeneous polynomial on P^{n_1} x ... x P^{n_m}
// and on the affine cone F_q^{n_1+1} x ... x F_q^{n_m+1}.
BigInt eta(const std::vector<int>& d, const std::vector<int>& n, std::uint64_t q);
BigInt eta_affine(const std::vector<int>& d, const std::vector<int>& n, std::uint64_t q);
// q^{|n|} * prod (q - d_i): lower bound on the non-zeros in the affine cone.
BigInt nonzero_lower(const std::vector<int>& d, const std::vector<int>& n, std::uint64_t q);

// Needs 0 <= s <= r-2.
BigInt B_ds(const BoundContext& ctx);

struct MainEstimate {
  bool applicable = false;
  std::string reason;       // why not applicable
  BigInt bprime;            // b'_{r-s-1}(n-s-1, d)
  BigInt constant;          // A (all points) or B (smooth points)
  Surd theorem;             // b' q^{(r+s+1)/2} + constant q^{r-1}
  Surd corollary;
  std::optional<Surd> alternate;  // smooth s=r-2 variant with 8(r+1)
};
MainEstimate main_estimate(const BoundContext& ctx, bool smooth);

struct ComparisonBounds {
  BigInt C;                        // 9 * 2^{n-r} ((n-r)d + 3)^{n+1}
  std::optional<Surd> gl;          // b' q^{(r+s+1)/2} + C q^{(r+s)/2}
  std::string gl_reason;
  std::optional<Surd> cm;          // s = r-2 only
  bool cm_q_valid = false;         // q > 2(n-r)d delta + 1
  BigInt cm_q_threshold;
  std::string cm_reason;
};
ComparisonBounds comparison_bounds(const BoundContext& ctx);

enum class ThresholdKind { SmoothPoint, Section };

struct Threshold {
  std::string name;
  ThresholdKind kind = ThresholdKind::SmoothPoint;
  int s = 0;                 // singular-locus dimension the threshold was taken at
  bool applicable = false;
  std::string reason;
  BigInt value;              // guaranteed iff q > value
  bool guaranteed = false;
  std::string formula;
};
std::vector<Threshold> existence_thresholds(const BoundContext& ctx);

enum class Verdict { Holds, Violated, NotApplicable, Inconclusive };
enum class BoundClass { Hard, Soft };
const char* to_string(Verdict v);
const char* to_string(BoundClass c);

struct BoundRow {
  std::string bound;
  std::string formula;
  std::string lhs;
  std::string rhs;
  Verdict verdict = Verdict::NotApplicable;
  BoundClass cls = BoundClass::Hard;
  std::string note;
};

struct Measured {
  std::optional<BigInt> total;
  std::optional<BigInt> smooth;
};

struct CheckOptions {
  // Test fixture: evaluates the degree bound with p_{r-1} in place of p_r.
  bool inject_fault = false;
};

struct BoundReport {
  BoundContext ctx;
  Measured measured;
  std::vector<BoundRow> rows;
  bool hard_violation() const;
};

BoundReport check(const BoundContext& ctx, const Measured& m, const CheckOptions& opts = {});

// Generic row builders, shared with the value-set and multihomogeneous
// checks: lhs <= rhs.
BoundRow upper_row(std::string bound, std::string formula, const Rational& lhs, const Surd& rhs,
                   BoundClass cls, std::string note = {});
BoundRow not_applicable_row(std::string bound, std::string reason, BoundClass cls = BoundClass::Hard);

}  // namespace fqp::bounds
