#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "counting/variety.hpp"

namespace fqp::counting {

// (s+2) x (n+1) matrix over F_q; row j gives the linear form Y_j.
struct LinearProjection {
  unsigned rows = 0, cols = 0;
  std::vector<Raw> entries;
  std::optional<std::uint64_t> seed;  // set when sampled
  unsigned attempts = 0;              // draws rejected before this one, plus one
  unsigned rank_rejections = 0;
  unsigned screen_rejections = 0;

  Raw at(unsigned i, unsigned j) const { return entries[i * cols + j]; }
  std::vector<std::vector<Raw>> row_vectors() const;
};

// Validates shape (s+2) x (n+1) and full rank s+2.
LinearProjection make_projection(const VarietySpec& V, const std::vector<std::vector<Raw>>& rows);

struct SampleOptions {
  // V ∩ L must be nonsingular at every point over F_{q^k}, k <= screen_level;
  // 0 disables the screen.
  unsigned screen_level = 2;
  unsigned max_attempts = 200;
};

// Uniform entries drawn from a seeded generator; draws that are rank
// deficient or fail the screen are rejected and counted.
LinearProjection sample_projection(const VarietySpec& V, std::uint64_t seed, const SampleOptions& sopts,
                                   const ExecOptions& opts);

// True when every point of (V ∩ L)(F_{q^k}), k <= level, has M(x, λ) of full
// rank n - r + s + 2.
bool passes_screen(const VarietySpec& V, const LinearProjection& proj, unsigned level, const ExecOptions& opts);

struct FiberReport {
  std::vector<std::uint64_t> fiber_counts;  // N_y per y in P^{s+1}(F_q), enumeration order; includes e
  std::uint64_t exceptional = 0;            // e = |(V ∩ L)(F_q)|
  std::uint64_t total = 0;                  // |V(F_q)|
  BigInt identity_lhs;                      // sum N_y - (p_{s+1} - 1) e
  bool identity_holds = false;
};

FiberReport fiber_decomposition(const VarietySpec& V, const LinearProjection& proj, const ExecOptions& opts);

// Points x of V(F_{q^level}) where M(x, λ) has rank < n - r + s + 2,
// flattened n+1 coordinates each, in enumeration order.
std::vector<Raw> polar_minor_locus(const VarietySpec& V, const LinearProjection& proj, unsigned level,
                                   const ExecOptions& opts);

// Points of V over F_{q^k} for k = 1..K, computed once and reused across
// projections.
class PointCache {
 public:
  PointCache(const VarietySpec& V, unsigned max_level, const ExecOptions& opts);
  unsigned max_level() const noexcept { return static_cast<unsigned>(levels_.size()); }
  const LevelView& view(unsigned k) const { return levels_.at(k - 1).view; }
  const std::vector<Raw>& points(unsigned k) const { return levels_.at(k - 1).points; }

 private:
  struct Level {
    LevelView view;
    std::vector<Raw> points;
  };
  std::vector<Level> levels_;
};

struct AuditResult {
  unsigned max_level = 0;
  // Indices into P^{s+1}(F_q) of certified-singular fibers, ascending.
  std::vector<std::uint64_t> flagged;
  // Flag counts after levels 1..K (cumulative).
  std::vector<std::uint64_t> flagged_by_level;
  static constexpr const char* kSemantics =
      "one-sided: each flagged y has a certified singular point on V_y over F_{q^k}, k <= K; "
      "an unflagged y is not certified nonsingular";
};

// y in P^{s+1}(F_q) such that V_y carries a point over F_{q^k}, k <= K, where
// the Jacobian of (F_1..F_{n-r}, the s+1 forms cutting V_y) has rank below
// n - r + s + 1.
AuditResult singular_fiber_audit(const VarietySpec& V, const LinearProjection& proj, const PointCache& cache);
AuditResult singular_fiber_audit(const VarietySpec& V, const LinearProjection& proj, unsigned K,
                                 const ExecOptions& opts);

// Coefficient rows of the s+1 linear forms y_j Y_{i0} - Y_j (j != i0) cutting
// V_y, where i0 is the position of y's leading 1.
std::vector<std::vector<Raw>> fiber_forms(const gf::Field& F, const LinearProjection& proj,
                                          const std::vector<Raw>& y);

struct SectionSearchResult {
  bool found = false;
  std::uint64_t seed = 0;
  std::optional<LinearProjection> projection;
  std::uint64_t y_index = 0;
  std::vector<Raw> y;
  std::uint64_t fiber_points = 0;       // |V_y(F_q)|
  std::vector<Raw> smooth_witness;      // an F_q-point of V_y, when found
  unsigned seeds_tried = 0;
  unsigned level = 0;
  std::string note;
};

// First (λ, y) over the seeds in order whose fiber passes the level-K audit
// and has an F_q-point.
SectionSearchResult nonsingular_section_search(const VarietySpec& V, const std::vector<std::uint64_t>& seeds,
                                               unsigned K, const SampleOptions& sopts,
                                               const ExecOptions& opts);

}  // namespace fqp::counting
