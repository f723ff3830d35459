#include "counting/multihom.hpp"

#include <map>

#include "points/points.hpp"

namespace fqp::counting {

using gf::Raw;
using mpoly::Exponents;
using mpoly::MultiPoly;

namespace {

std::vector<int> checked_multidegree(const MultiPoly& f) {
  if (f.is_zero()) throw ValidationError("cannot count zeros of the zero polynomial");
  auto md = f.multidegree();
  if (!md) throw ValidationError("polynomial is not multihomogeneous for the declared groups");
  return *md;
}

// Zeros in P^n(F_q) of homogeneous polynomials of one fixed degree given by
// their coefficient vectors over a fixed monomial list.
class HomogeneousZeroCounter {
 public:
  HomogeneousZeroCounter(const gf::Field& F, std::size_t nvars, int d, const std::vector<Exponents>& monos)
      : F_(F), q_(F.cardinality()), nv_(nvars), d_(d) {
    pow_.resize(std::size_t{q_} * (d + 1));
    for (Raw a = 0; a < q_; ++a)
      for (int e = 0; e <= d; ++e) pow_[a * (d + 1) + e] = F.pow(a, e);

    // Root-count table for univariate polynomials of degree <= d.
    std::uint64_t size = 1;
    for (int i = 0; i <= d + 1 && size <= (1u << 22); ++i) size *= q_;
    if (size <= (1u << 22)) {
      const std::uint64_t entries = size / q_;
      roots_.resize(entries);
      std::vector<Raw> u(d + 1);
      for (std::uint64_t idx = 0; idx < entries; ++idx) {
        std::uint64_t t = idx;
        for (int k = 0; k <= d; ++k) {
          u[k] = static_cast<Raw>(t % q_);
          t /= q_;
        }
        roots_[idx] = static_cast<std::uint32_t>(count_univariate_roots(u));
      }
    }

    // Chart j: points (0, ..., 0, 1, a_{j+1}, ..., a_n). Monomials touching
    // X_0..X_{j-1} vanish there.
    const std::size_t n = nvars - 1;
    charts_.resize(nvars);
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t m = 0; m < monos.size(); ++m) {
        const auto& e = monos[m];
        bool ok = true;
        for (std::size_t i = 0; i < j; ++i) ok &= e[i] == 0;
        if (!ok) continue;
        ChartTerm t{static_cast<std::uint32_t>(m), e[n], {}};
        for (std::size_t i = j + 1; i < n; ++i) t.inner.push_back(e[i]);
        charts_[j].push_back(std::move(t));
      }
    }
  }

  std::uint64_t count(const Raw* c) const {
    const std::size_t n = nv_ - 1;
    std::uint64_t zeros = 0;
    std::vector<Raw> u(d_ + 1), a;
    for (std::size_t j = 0; j <= n; ++j) {
      const auto& terms = charts_[j];
      if (j == n) {
        Raw v = 0;
        for (const auto& t : terms) v = F_.add(v, c[t.mono]);
        zeros += v == 0;
        continue;
      }
      // Free inner coordinates a_{j+1..n-1}; the last one is the root variable.
      const std::size_t inner = n - j - 1;
      a.assign(inner, 0);
      for (;;) {
        std::fill(u.begin(), u.end(), 0);
        for (const auto& t : terms) {
          Raw v = c[t.mono];
          if (v == 0) continue;
          for (std::size_t i = 0; i < inner; ++i) v = F_.mul(v, pow_[a[i] * (d_ + 1) + t.inner[i]]);
          u[t.last] = F_.add(u[t.last], v);
        }
        zeros += roots(u);
        std::size_t i = inner;
        while (i > 0 && a[i - 1] + 1 == q_) a[--i] = 0;
        if (i == 0) break;
        ++a[i - 1];
      }
    }
    return zeros;
  }

 private:
  struct ChartTerm {
    std::uint32_t mono;
    std::uint16_t last;
    std::vector<std::uint16_t> inner;
  };

  std::uint64_t count_univariate_roots(const std::vector<Raw>& u) const {
    std::uint64_t r = 0;
    for (Raw t = 0; t < q_; ++t) {
      Raw v = 0;
      for (int k = d_; k >= 0; --k) v = F_.add(F_.mul(v, t), u[k]);
      r += v == 0;
    }
    return r;
  }

  std::uint64_t roots(const std::vector<Raw>& u) const {
    if (roots_.empty()) return count_univariate_roots(u);
    std::uint64_t idx = 0;
    for (int k = d_; k >= 0; --k) idx = idx * q_ + u[k];
    return roots_[idx];
  }

  const gf::Field& F_;
  Raw q_;
  std::size_t nv_;
  int d_;
  std::vector<Raw> pow_;
  std::vector<std::uint32_t> roots_;
  std::vector<std::vector<ChartTerm>> charts_;
};

}  // namespace

MultihomCount count_multihomogeneous_zeros(const MultiPoly& f, const ExecOptions& opts) {
  const auto md = checked_multidegree(f);
  const gf::Field& F = *f.field();
  const Raw q = F.cardinality();
  const auto& groups = f.groups();
  const std::size_t m = groups.size();

  std::vector<std::vector<Exponents>> monos(m);
  std::vector<std::map<Exponents, std::size_t>> mono_index(m);
  std::vector<std::size_t> stride(m + 1, 1);
  for (std::size_t g = 0; g < m; ++g) {
    monos[g] = mpoly::monomials_of_degree(groups[g], md[g]);
    for (std::size_t i = 0; i < monos[g].size(); ++i) mono_index[g][monos[g][i]] = i;
  }
  for (std::size_t g = m; g-- > 0;) stride[g] = stride[g + 1] * monos[g].size();

  std::vector<Raw> coeffs(stride[0], 0);
  for (const auto& [e, c] : f.terms()) {
    std::size_t flat = 0, v = 0;
    for (std::size_t g = 0; g < m; ++g) {
      Exponents part(e.begin() + v, e.begin() + v + groups[g]);
      v += groups[g];
      flat += mono_index[g].at(part) * stride[g + 1];
    }
    coeffs[flat] = c;
  }

  std::vector<points::ProjectiveSpace> spaces;
  std::uint64_t outer = 1;
  for (std::size_t g = 0; g < m; ++g) {
    spaces.emplace_back(q, static_cast<unsigned>(groups[g] - 1));
    if (g + 1 < m) outer *= spaces.back().size();
  }
  // Work is roughly outer points times one pass over the last group.
  require_budget(outer * spaces.back().size(), opts, "multihomogeneous zero count");

  // Monomial values at every point of each non-final group.
  std::vector<std::vector<Raw>> values(m);
  for (std::size_t g = 0; g + 1 < m; ++g) {
    const auto& P = spaces[g];
    values[g].reserve(P.size() * monos[g].size());
    P.for_range(0, P.size(), [&](const Raw* x) {
      for (const auto& e : monos[g]) {
        Raw v = 1;
        for (std::size_t i = 0; i < e.size(); ++i) v = F.mul(v, F.pow(x[i], e[i]));
        values[g].push_back(v);
      }
    });
  }

  HomogeneousZeroCounter last(F, groups[m - 1], md[m - 1], monos[m - 1]);

  // Contract group g at point index pt of that group: out[rest] = sum_j v_j * in[j, rest].
  auto contract = [&](std::size_t g, std::uint64_t pt, const std::vector<Raw>& in, std::vector<Raw>& out) {
    const std::size_t M = monos[g].size(), rest = stride[g + 1];
    out.assign(rest, 0);
    const Raw* v = values[g].data() + pt * M;
    for (std::size_t j = 0; j < M; ++j) {
      if (v[j] == 0) continue;
      const Raw* row = in.data() + j * rest;
      for (std::size_t t = 0; t < rest; ++t)
        if (row[t]) out[t] = F.fma(v[j], row[t], out[t]);
    }
  };

  std::uint64_t projective = 0;
  if (m == 1) {
    projective = last.count(coeffs.data());
  } else {
    projective = parallel_reduce(
        spaces[0].size(), opts.workers, std::uint64_t{0},
        [&](std::uint64_t lo, std::uint64_t hi) {
          std::vector<std::vector<Raw>> tensors(m);
          std::uint64_t zeros = 0;
          auto rec = [&](auto&& self, std::size_t g, const std::vector<Raw>& in) -> void {
            if (g + 1 == m) {
              zeros += last.count(in.data());
              return;
            }
            for (std::uint64_t pt = 0; pt < spaces[g].size(); ++pt) {
              contract(g, pt, in, tensors[g + 1]);
              self(self, g + 1, tensors[g + 1]);
            }
          };
          for (std::uint64_t pt = lo; pt < hi; ++pt) {
            contract(0, pt, coeffs, tensors[1]);
            rec(rec, 1, tensors[1]);
          }
          return zeros;
        },
        std::plus<>());
  }

  // Affine zeros. Groups of degree 0 do not occur in f, so they contribute a
  // full factor q^{n_i+1} (affine) or p_{n_i} (projective). For the rest, a
  // tuple with some zero group is a zero; tuples with every group nonzero
  // are (q-1)^{m'} scalings of a projective point.
  std::uint64_t free_affine = 1, free_proj = 1, all = 1, nonzero_groups = 1, scalings = 1;
  for (std::size_t g = 0; g < m; ++g) {
    const auto qa = points::checked_pow(q, static_cast<unsigned>(groups[g]));
    if (md[g] == 0) {
      free_affine *= qa;
      free_proj *= spaces[g].size();
    } else {
      all *= qa;
      nonzero_groups *= qa - 1;
      scalings *= q - 1;
    }
  }
  MultihomCount out;
  out.projective = projective;
  if (nonzero_groups == 1 && all == 1) {
    // Every group has degree 0: f is a nonzero constant.
    out.affine = 0;
  } else {
    out.affine = free_affine * (all - nonzero_groups + scalings * (projective / free_proj));
  }
  return out;
}

MultihomCount count_multihomogeneous_zeros_direct(const MultiPoly& f, const ExecOptions& opts) {
  checked_multidegree(f);
  const gf::Field& F = *f.field();
  const Raw q = F.cardinality();
  std::vector<unsigned> dims;
  for (auto g : f.groups()) dims.push_back(static_cast<unsigned>(g - 1));
  const mpoly::CompiledPoly cf(f);

  points::MultiProjectiveSpace M(q, dims);
  require_budget(M.size(), opts, "multiprojective enumeration");
  MultihomCount out;
  out.projective = parallel_reduce(
      M.size(), opts.workers, std::uint64_t{0},
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t z = 0;
        M.for_range(lo, hi, [&](const Raw* x) { z += cf.eval(x) == 0; });
        return z;
      },
      std::plus<>());

  points::AffineSpace A(q, static_cast<unsigned>(f.num_vars()));
  require_budget(A.size(), opts, "affine enumeration");
  out.affine = parallel_reduce(
      A.size(), opts.workers, std::uint64_t{0},
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t z = 0;
        A.for_range(lo, hi, [&](const Raw* x) { z += cf.eval(x) == 0; });
        return z;
      },
      std::plus<>());
  return out;
}

std::optional<std::vector<Raw>> find_nonzero_point(const MultiPoly& f, const ExecOptions& opts) {
  checked_multidegree(f);
  std::vector<unsigned> dims;
  for (auto g : f.groups()) dims.push_back(static_cast<unsigned>(g - 1));
  points::MultiProjectiveSpace M(f.field()->cardinality(), dims);
  const mpoly::CompiledPoly cf(f);
  std::vector<Raw> x(M.num_coords());
  // Sequential scan; the first hit is almost always early.
  for (std::uint64_t i = 0; i < M.size(); ++i) {
    if (i >= opts.budget) throw BudgetError("nonzero-point search exceeded the budget");
    M.point(i, x.data());
    if (cf.eval(x.data()) != 0) return x;
  }
  return std::nullopt;
}

}  // namespace fqp::counting
