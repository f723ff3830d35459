#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common/bigint.hpp"
#include "common/exec.hpp"
#include "mpoly/mpoly.hpp"
#include "points/points.hpp"

namespace fqp::counting {

using gf::FieldRef;
using gf::Raw;
using mpoly::MultiPoly;

// A declared complete intersection V = {F_1 = ... = F_{n-r} = 0} in P^n.
// Complete-intersection-ness and the singular-locus bound are taken on
// trust; only the syntactic invariants are checked.
struct VarietySpec {
  FieldRef field;
  unsigned n = 0;
  unsigned r = 0;
  std::vector<MultiPoly> generators;  // sorted by degree, nonincreasing
  std::vector<int> degrees;
  int s = -1;  // declared dim of the singular locus; -1 means smooth
  std::string name;

  bool smooth() const noexcept { return s < 0; }
  BigInt delta() const;
  int D() const;
  int max_degree() const;
};

// Validates and sorts. `s` empty means declared smooth.
VarietySpec make_variety(FieldRef field, unsigned n, unsigned r, std::vector<MultiPoly> generators,
                         std::optional<int> s, std::string name = {});

// Polar, audit and bound operations need every d_i >= 2.
void require_nonlinear(const VarietySpec& V, const std::string& what);

// Generators and their gradients pushed into F_{q^k}.
class LevelView {
 public:
  LevelView(const VarietySpec& V, unsigned k);

  unsigned level() const noexcept { return k_; }
  const FieldRef& field() const noexcept { return field_; }
  const gf::Embedding& embedding() const noexcept { return emb_; }
  std::size_t num_generators() const noexcept { return gens_.size(); }
  unsigned n() const noexcept { return n_; }

  bool on_variety(const Raw* x) const noexcept {
    for (const auto& g : gens_)
      if (g.eval(x) != 0) return false;
    return true;
  }
  // (n-r) x (n+1) Jacobian at x, row-major.
  void jacobian(const Raw* x, Raw* out) const noexcept;
  unsigned jacobian_rank(const Raw* x) const;

 private:
  unsigned k_, n_;
  FieldRef field_;
  gf::Embedding emb_;
  std::vector<mpoly::CompiledPoly> gens_;
  std::vector<mpoly::CompiledPoly> grads_;  // generator-major
};

// Field F_{q^k} for the variety's base field.
FieldRef level_field(const gf::Field& base, unsigned k);

std::uint64_t count_points(const VarietySpec& V, const ExecOptions& opts);

struct SmoothCounts {
  std::uint64_t total = 0, smooth = 0, singular = 0;
};
SmoothCounts count_smooth_points(const VarietySpec& V, const ExecOptions& opts);

// Rank of the Jacobian at x, a point with coordinates in F_{q^level}.
// Throws if x is not on V.
unsigned jacobian_rank(const VarietySpec& V, const std::vector<Raw>& x, unsigned level = 1);

// Points of V(F_{q^k}) in enumeration order, flattened n+1 coordinates each.
std::vector<Raw> variety_points(const LevelView& view, const ExecOptions& opts);

// Reduction over P^n(F_Q) split across workers; body(x, acc) folds a point
// into a chunk-local accumulator.
template <class T, class Body, class Combine>
T reduce_projective(std::uint32_t Q, unsigned n, const ExecOptions& opts, const std::string& what,
                    T init, Body body, Combine combine) {
  points::ProjectiveSpace P(Q, n);
  require_budget(P.size(), opts, what);
  return parallel_reduce(
      P.size(), opts.workers, init,
      [&](std::uint64_t lo, std::uint64_t hi) {
        T acc = init;
        P.for_range(lo, hi, [&](const Raw* x) { body(x, acc); });
        return acc;
      },
      combine);
}

}  // namespace fqp::counting
