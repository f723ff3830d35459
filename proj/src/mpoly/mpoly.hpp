#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gf/field.hpp"

namespace fqp::mpoly {

using gf::FieldRef;
using gf::Raw;

using Exponents = std::vector<std::uint16_t>;

// Graded lexicographic: lower total degree first, ties broken so that the
// larger exponent on the earlier variable comes first.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const noexcept;
};

// Degree of the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

// Sparse polynomial over a finite field whose variables are partitioned into
// consecutive groups X_1, ..., X_m (sizes n_i + 1). A single group is an
// ordinary polynomial in X_0, ..., X_n.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Raw, GrlexLess>;

  MultiPoly(FieldRef field, std::vector<std::size_t> group_sizes);
  static MultiPoly in_vars(FieldRef field, std::size_t num_vars) {
    return MultiPoly(std::move(field), {num_vars});
  }

  const FieldRef& field() const noexcept { return field_; }
  const std::vector<std::size_t>& groups() const noexcept { return groups_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Adds c * X^e to the polynomial; coefficients that cancel are dropped.
  void add_term(const Exponents& e, Raw c);
  Raw coefficient(const Exponents& e) const;

  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly scaled(Raw c) const;
  bool operator==(const MultiPoly& other) const;

  // x holds one coordinate per variable, groups concatenated.
  Raw eval(std::span<const Raw> x) const;
  Raw eval(const std::vector<std::vector<Raw>>& per_group) const;

  // Formal derivative; coefficients e*c are reduced mod p.
  MultiPoly partial_derivative(std::size_t var) const;
  std::vector<MultiPoly> gradient() const;

  // (d_1, ..., d_m) when every term has degree d_i in group i.
  std::optional<std::vector<int>> multidegree() const;
  int total_degree() const;
  std::vector<int> group_degrees() const;

  // Same polynomial with coefficients pushed through an embedding.
  MultiPoly embed(const gf::Embedding& emb) const;

  std::string to_string() const;

 private:
  void check_same_shape(const MultiPoly& other) const;

  FieldRef field_;
  std::vector<std::size_t> groups_;
  std::size_t num_vars_;
  TermMap terms_;
};

// Flattened evaluator for hot loops.
class CompiledPoly {
 public:
  explicit CompiledPoly(const MultiPoly& f);

  Raw eval(const Raw* x) const noexcept {
    const gf::Field& F = *field_;
    Raw acc = 0;
    for (const auto& t : terms_) {
      Raw v = t.coeff;
      for (std::uint32_t i = t.begin; i < t.end; ++i) {
        const Raw base = x[factors_[i].var];
        for (std::uint16_t e = factors_[i].exp; e > 0; --e) v = F.mul(v, base);
      }
      acc = F.add(acc, v);
    }
    return acc;
  }
  const gf::Field& field() const noexcept { return *field_; }

 private:
  struct Term {
    Raw coeff;
    std::uint32_t begin, end;
  };
  struct Factor {
    std::uint32_t var;
    std::uint16_t exp;
  };
  const gf::Field* field_;
  std::vector<Term> terms_;
  std::vector<Factor> factors_;
};

// Parses the text format `c*X0^a0*X1^a1 + ...`: integer coefficients reduced
// mod p, `*` and `^` mandatory, variables indexed globally.
MultiPoly parse_poly(std::string_view text, FieldRef field,
                     std::vector<std::size_t> group_sizes);

// All exponent vectors of total degree d in n variables, in grlex order.
std::vector<Exponents> monomials_of_degree(std::size_t num_vars, int d);

// Uniform coefficients on every monomial of the requested multidegree,
// redrawn until the result is nonzero. Deterministic in the seed.
MultiPoly random_multihomogeneous(FieldRef field, std::vector<std::size_t> group_sizes,
                                  const std::vector<int>& multidegree,
                                  std::uint64_t seed);

}  // namespace fqp::mpoly
