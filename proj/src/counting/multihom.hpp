#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "common/exec.hpp"
#include "mpoly/mpoly.hpp"

namespace fqp::counting {

struct MultihomCount {
  std::uint64_t projective = 0;  // zeros in P^{n_1} x ... x P^{n_m}(F_q)
  std::uint64_t affine = 0;      // zeros in F_q^{n_1+1} x ... x F_q^{n_m+1}
};

// Group i of the polynomial has n_i + 1 variables. Projective zeros are
// counted by contracting the coefficient tensor one group at a time and
// counting the last group's zeros chart by chart; the affine count follows
// from the projective one by scaling each group. Throws on the zero
// polynomial or when f is not multihomogeneous for its groups.
MultihomCount count_multihomogeneous_zeros(const mpoly::MultiPoly& f, const ExecOptions& opts);

// Plain enumeration of both domains; the reference for the above.
MultihomCount count_multihomogeneous_zeros_direct(const mpoly::MultiPoly& f, const ExecOptions& opts);

// First point of the multiprojective enumeration where f does not vanish,
// coordinates concatenated.
std::optional<std::vector<gf::Raw>> find_nonzero_point(const mpoly::MultiPoly& f,
                                                       const ExecOptions& opts);

}  // namespace fqp::counting
