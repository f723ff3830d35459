#include "counting/variety.hpp"

#include <algorithm>

#include "counting/linalg.hpp"

namespace fqp::counting {

BigInt VarietySpec::delta() const {
  BigInt d = 1;
  for (int x : degrees) d *= x;
  return d;
}

int VarietySpec::D() const {
  int d = 0;
  for (int x : degrees) d += x - 1;
  return d;
}

int VarietySpec::max_degree() const {
  return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

VarietySpec make_variety(FieldRef field, unsigned n, unsigned r, std::vector<MultiPoly> generators,
                         std::optional<int> s, std::string name) {
  if (n < 1) throw ValidationError("invariant violated: ambient dimension n must be >= 1");
  if (r >= n) throw ValidationError("invariant violated: dimension r must be < n (r=" + std::to_string(r) +
                                    ", n=" + std::to_string(n) + ")");
  if (generators.size() != n - r)
    throw ValidationError("invariant violated: a complete intersection of dimension " + std::to_string(r) +
                          " in P^" + std::to_string(n) + " needs n - r = " + std::to_string(n - r) +
                          " generators, got " + std::to_string(generators.size()));
  std::vector<std::pair<int, MultiPoly>> tagged;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    auto& g = generators[i];
    const std::string label = "generator " + std::to_string(i + 1);
    if (g.field() != field) throw ValidationError("invariant violated: " + label + " is over a different field");
    if (g.groups().size() != 1 || g.num_vars() != n + 1)
      throw ValidationError("invariant violated: " + label + " must be a polynomial in X0..X" + std::to_string(n));
    if (g.is_zero()) throw ValidationError("invariant violated: " + label + " is the zero polynomial");
    const auto md = g.multidegree();
    if (!md) throw ValidationError("invariant violated: " + label + " is not homogeneous");
    if ((*md)[0] < 1) throw ValidationError("invariant violated: " + label + " is a nonzero constant");
    tagged.emplace_back((*md)[0], std::move(g));
  }
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (s) {
    if (*s < 0 || *s > static_cast<int>(r) - 2)
      throw ValidationError("invariant violated: singular-locus bound s must satisfy 0 <= s <= r - 2 (s=" +
                            std::to_string(*s) + ", r=" + std::to_string(r) + ")");
  }
  VarietySpec V;
  V.field = std::move(field);
  V.n = n;
  V.r = r;
  for (auto& [d, g] : tagged) {
    V.degrees.push_back(d);
    V.generators.push_back(std::move(g));
  }
  V.s = s ? *s : -1;
  V.name = std::move(name);
  return V;
}

void require_nonlinear(const VarietySpec& V, const std::string& what) {
  for (int d : V.degrees)
    if (d < 2)
      throw ValidationError("invariant violated: " + what + " requires every generator degree d_i >= 2");
}

FieldRef level_field(const gf::Field& base, unsigned k) {
  if (k < 1) throw ValidationError("extension level must be >= 1");
  return gf::make_field(base.characteristic(), base.degree() * k);
}

LevelView::LevelView(const VarietySpec& V, unsigned k)
    : k_(k), n_(V.n), field_(level_field(*V.field, k)), emb_(V.field, field_) {
  for (const auto& g : V.generators) {
    auto e = g.embed(emb_);
    gens_.emplace_back(e);
    for (std::size_t j = 0; j <= V.n; ++j) grads_.emplace_back(e.partial_derivative(j));
  }
}

void LevelView::jacobian(const Raw* x, Raw* out) const noexcept {
  for (std::size_t i = 0; i < grads_.size(); ++i) out[i] = grads_[i].eval(x);
}

unsigned LevelView::jacobian_rank(const Raw* x) const {
  std::vector<Raw> m(grads_.size());
  jacobian(x, m.data());
  return matrix_rank(*field_, m.data(), gens_.size(), n_ + 1);
}

std::uint64_t count_points(const VarietySpec& V, const ExecOptions& opts) {
  LevelView view(V, 1);
  return reduce_projective<std::uint64_t>(
      V.field->cardinality(), V.n, opts, "counting points of P^" + std::to_string(V.n), 0,
      [&](const Raw* x, std::uint64_t& acc) { acc += view.on_variety(x); }, std::plus<>());
}

SmoothCounts count_smooth_points(const VarietySpec& V, const ExecOptions& opts) {
  LevelView view(V, 1);
  const unsigned full = V.n - V.r;
  auto add = [](SmoothCounts a, SmoothCounts b) {
    return SmoothCounts{a.total + b.total, a.smooth + b.smooth, a.singular + b.singular};
  };
  return reduce_projective<SmoothCounts>(
      V.field->cardinality(), V.n, opts, "counting points of P^" + std::to_string(V.n), {},
      [&](const Raw* x, SmoothCounts& acc) {
        if (!view.on_variety(x)) return;
        ++acc.total;
        if (view.jacobian_rank(x) == full)
          ++acc.smooth;
        else
          ++acc.singular;
      },
      add);
}

unsigned jacobian_rank(const VarietySpec& V, const std::vector<Raw>& x, unsigned level) {
  LevelView view(V, level);
  if (x.size() != V.n + 1)
    throw ValidationError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                          std::to_string(V.n + 1));
  for (Raw c : x)
    if (c >= view.field()->cardinality()) throw ValidationError("coordinate outside F_" + view.field()->name());
  if (std::all_of(x.begin(), x.end(), [](Raw c) { return c == 0; }))
    throw ValidationError("the zero vector is not a projective point");
  if (!view.on_variety(x.data())) throw ValidationError("point is not on the variety");
  return view.jacobian_rank(x.data());
}

std::vector<Raw> variety_points(const LevelView& view, const ExecOptions& opts) {
  const std::size_t w = view.n() + 1;
  return reduce_projective<std::vector<Raw>>(
      view.field()->cardinality(), view.n(), opts,
      "enumerating P^" + std::to_string(view.n()) + "(F_" + view.field()->name() + ")", {},
      [&](const Raw* x, std::vector<Raw>& acc) {
        if (view.on_variety(x)) acc.insert(acc.end(), x, x + w);
      },
      [](std::vector<Raw> a, std::vector<Raw> b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      });
}

}  // namespace fqp::counting
