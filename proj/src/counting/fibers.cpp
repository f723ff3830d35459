#include "counting/fibers.hpp"

#include <algorithm>
#include <set>

#include "common/rng.hpp"
#include "counting/linalg.hpp"

namespace fqp::counting {

namespace {

void require_s(const VarietySpec& V, const std::string& what) {
  if (V.s < 0 || V.s > static_cast<int>(V.r) - 2)
    throw ValidationError("invariant violated: " + what + " requires a declared 0 <= s <= r - 2");
}

std::vector<Raw> embed_entries(const gf::Embedding& emb, const std::vector<Raw>& v) {
  std::vector<Raw> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = emb(v[i]);
  return out;
}

// Y(x) over the level field.
void project(const gf::Field& E, const std::vector<Raw>& lam, unsigned rows, unsigned cols, const Raw* x,
             Raw* y) {
  for (unsigned j = 0; j < rows; ++j) {
    Raw acc = 0;
    for (unsigned i = 0; i < cols; ++i) acc = E.fma(lam[j * cols + i], x[i], acc);
    y[j] = acc;
  }
}

// Maps a nonzero Y(x) over F_{q^k} to its point of P^{s+1}(F_q), if rational.
std::optional<std::vector<Raw>> rational_image(const LevelView& view, std::vector<Raw> y) {
  points::canonicalize(*view.field(), y);
  for (auto& c : y) {
    auto pre = view.embedding().preimage(c);
    if (!pre) return std::nullopt;
    c = *pre;
  }
  return y;
}

}  // namespace

std::vector<std::vector<Raw>> LinearProjection::row_vectors() const {
  std::vector<std::vector<Raw>> out;
  for (unsigned i = 0; i < rows; ++i) out.emplace_back(entries.begin() + i * cols, entries.begin() + (i + 1) * cols);
  return out;
}

LinearProjection make_projection(const VarietySpec& V, const std::vector<std::vector<Raw>>& rows) {
  require_s(V, "a linear projection");
  const unsigned want_rows = static_cast<unsigned>(V.s) + 2, cols = V.n + 1;
  if (rows.size() != want_rows)
    throw ValidationError("invariant violated: projection needs s + 2 = " + std::to_string(want_rows) +
                          " rows, got " + std::to_string(rows.size()));
  LinearProjection p;
  p.rows = want_rows;
  p.cols = cols;
  for (const auto& r : rows) {
    if (r.size() != cols)
      throw ValidationError("invariant violated: projection rows need n + 1 = " + std::to_string(cols) + " entries");
    for (Raw c : r)
      if (c >= V.field->cardinality()) throw ValidationError("projection entry outside F_" + V.field->name());
    p.entries.insert(p.entries.end(), r.begin(), r.end());
  }
  if (matrix_rank(*V.field, p.entries, p.rows, p.cols) != p.rows)
    throw ValidationError("invariant violated: projection matrix must have rank s + 2 (rank deficiency)");
  p.attempts = 1;
  return p;
}

bool passes_screen(const VarietySpec& V, const LinearProjection& proj, unsigned level, const ExecOptions& opts) {
  const auto basis = kernel_basis(*V.field, proj.entries, proj.rows, proj.cols);
  const unsigned t = static_cast<unsigned>(basis.size());
  const unsigned full = (V.n - V.r) + proj.rows;
  for (unsigned k = 1; k <= level; ++k) {
    LevelView view(V, k);
    const gf::Field& E = *view.field();
    std::vector<std::vector<Raw>> b;
    for (const auto& v : basis) b.push_back(embed_entries(view.embedding(), v));
    const auto lam = embed_entries(view.embedding(), proj.entries);
    points::ProjectiveSpace P(E.cardinality(), t - 1);
    require_budget(P.size(), opts, "screening V ∩ L");
    bool ok = true;
    std::vector<Raw> x(V.n + 1), m(full * (V.n + 1));
    P.for_range(0, P.size(), [&](const Raw* c) {
      if (!ok) return;
      std::fill(x.begin(), x.end(), 0);
      for (unsigned i = 0; i < t; ++i)
        if (c[i])
          for (unsigned j = 0; j <= V.n; ++j) x[j] = E.fma(c[i], b[i][j], x[j]);
      if (!view.on_variety(x.data())) return;
      view.jacobian(x.data(), m.data());
      std::copy(lam.begin(), lam.end(), m.begin() + (V.n - V.r) * (V.n + 1));
      if (matrix_rank(E, m.data(), full, V.n + 1) < full) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

LinearProjection sample_projection(const VarietySpec& V, std::uint64_t seed, const SampleOptions& sopts,
                                   const ExecOptions& opts) {
  require_s(V, "a linear projection");
  require_nonlinear(V, "projection sampling");
  const unsigned rows = static_cast<unsigned>(V.s) + 2, cols = V.n + 1;
  const Raw q = V.field->cardinality();
  Rng rng(seed);
  LinearProjection p;
  p.rows = rows;
  p.cols = cols;
  p.seed = seed;
  for (unsigned attempt = 1; attempt <= sopts.max_attempts; ++attempt) {
    p.entries.resize(std::size_t{rows} * cols);
    for (auto& e : p.entries) e = static_cast<Raw>(rng.below(q));
    p.attempts = attempt;
    if (matrix_rank(*V.field, p.entries, rows, cols) != rows) {
      ++p.rank_rejections;
      continue;
    }
    if (sopts.screen_level > 0 && !passes_screen(V, p, sopts.screen_level, opts)) {
      ++p.screen_rejections;
      continue;
    }
    return p;
  }
  throw ValidationError("no projection passed the rank and screen checks after " +
                        std::to_string(sopts.max_attempts) + " draws (seed " + std::to_string(seed) + ", " +
                        std::to_string(p.rank_rejections) + " rank-deficient, " +
                        std::to_string(p.screen_rejections) + " singular on V ∩ L)");
}

FiberReport fiber_decomposition(const VarietySpec& V, const LinearProjection& proj, const ExecOptions& opts) {
  require_s(V, "fiber decomposition");
  if (proj.rows != static_cast<unsigned>(V.s) + 2 || proj.cols != V.n + 1)
    throw ValidationError("invariant violated: projection shape does not match (s + 2) x (n + 1)");
  if (matrix_rank(*V.field, proj.entries, proj.rows, proj.cols) != proj.rows)
    throw ValidationError("invariant violated: projection matrix must have rank s + 2 (rank deficiency)");
  const gf::Field& F = *V.field;
  const Raw q = F.cardinality();
  points::ProjectiveSpace target(q, proj.rows - 1);
  LevelView view(V, 1);

  struct Acc {
    std::vector<std::uint64_t> counts;
    std::uint64_t e = 0, total = 0;
  };
  Acc init{std::vector<std::uint64_t>(target.size(), 0), 0, 0};
  Acc acc = reduce_projective<Acc>(
      q, V.n, opts, "fiber decomposition over P^" + std::to_string(V.n), init,
      [&](const Raw* x, Acc& a) {
        if (!view.on_variety(x)) return;
        ++a.total;
        std::vector<Raw> y(proj.rows);
        project(F, proj.entries, proj.rows, proj.cols, x, y.data());
        if (!points::canonicalize(F, y)) {
          ++a.e;
          return;
        }
        ++a.counts[target.index_of(y)];
      },
      [](Acc a, Acc b) {
        for (std::size_t i = 0; i < a.counts.size(); ++i) a.counts[i] += b.counts[i];
        a.e += b.e;
        a.total += b.total;
        return a;
      });

  FiberReport rep;
  rep.exceptional = acc.e;
  rep.total = acc.total;
  rep.fiber_counts = std::move(acc.counts);
  BigInt sum = 0;
  for (auto& c : rep.fiber_counts) {
    c += acc.e;
    sum += c;
  }
  rep.identity_lhs = sum - (points::p_r(q, V.s + 1) - 1) * acc.e;
  rep.identity_holds = rep.identity_lhs == BigInt(acc.total);
  if (!rep.identity_holds)
    throw Error("fiber identity failed: sum N_y - (p_{s+1} - 1) e = " + rep.identity_lhs.str() +
                " but |V(F_q)| = " + std::to_string(acc.total));
  return rep;
}

std::vector<Raw> polar_minor_locus(const VarietySpec& V, const LinearProjection& proj, unsigned level,
                                   const ExecOptions& opts) {
  require_s(V, "the polar locus");
  require_nonlinear(V, "the polar locus");
  if (matrix_rank(*V.field, proj.entries, proj.rows, proj.cols) != proj.rows)
    throw ValidationError("invariant violated: projection matrix must have rank s + 2 (rank deficiency)");
  LevelView view(V, level);
  const gf::Field& E = *view.field();
  const auto lam = embed_entries(view.embedding(), proj.entries);
  const unsigned full = (V.n - V.r) + proj.rows;
  const std::size_t w = V.n + 1;
  return reduce_projective<std::vector<Raw>>(
      E.cardinality(), V.n, opts, "polar locus over P^" + std::to_string(V.n), {},
      [&](const Raw* x, std::vector<Raw>& acc) {
        if (!view.on_variety(x)) return;
        std::vector<Raw> m(full * w);
        view.jacobian(x, m.data());
        std::copy(lam.begin(), lam.end(), m.begin() + (V.n - V.r) * w);
        if (matrix_rank(E, m.data(), full, w) < full) acc.insert(acc.end(), x, x + w);
      },
      [](std::vector<Raw> a, std::vector<Raw> b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      });
}

PointCache::PointCache(const VarietySpec& V, unsigned max_level, const ExecOptions& opts) {
  if (max_level < 1) throw ValidationError("extension level K must be >= 1");
  for (unsigned k = 1; k <= max_level; ++k) {
    LevelView view(V, k);
    auto pts = variety_points(view, opts);
    levels_.push_back({std::move(view), std::move(pts)});
  }
}

std::vector<std::vector<Raw>> fiber_forms(const gf::Field& F, const LinearProjection& proj,
                                          const std::vector<Raw>& y) {
  unsigned i0 = 0;
  while (i0 < y.size() && y[i0] == 0) ++i0;
  std::vector<std::vector<Raw>> out;
  for (unsigned j = 0; j < proj.rows; ++j) {
    if (j == i0) continue;
    std::vector<Raw> row(proj.cols);
    for (unsigned c = 0; c < proj.cols; ++c) row[c] = F.sub(F.mul(y[j], proj.at(i0, c)), proj.at(j, c));
    out.push_back(std::move(row));
  }
  return out;
}

AuditResult singular_fiber_audit(const VarietySpec& V, const LinearProjection& proj, const PointCache& cache) {
  require_s(V, "the singular-fiber audit");
  require_nonlinear(V, "the singular-fiber audit");
  if (matrix_rank(*V.field, proj.entries, proj.rows, proj.cols) != proj.rows)
    throw ValidationError("invariant violated: projection matrix must have rank s + 2 (rank deficiency)");
  const gf::Field& F = *V.field;
  points::ProjectiveSpace target(F.cardinality(), proj.rows - 1);
  const std::size_t w = V.n + 1;
  const unsigned gens = V.n - V.r;
  const unsigned want = gens + proj.rows - 1;

  // Cutting forms for every y, over F_q.
  std::vector<std::vector<Raw>> forms(target.size());
  {
    std::vector<Raw> y(proj.rows);
    for (std::uint64_t i = 0; i < target.size(); ++i) {
      target.point(i, y.data());
      for (const auto& row : fiber_forms(F, proj, y)) forms[i].insert(forms[i].end(), row.begin(), row.end());
    }
  }

  std::vector<char> flagged(target.size(), 0);
  AuditResult res;
  res.max_level = cache.max_level();
  for (unsigned k = 1; k <= cache.max_level(); ++k) {
    const LevelView& view = cache.view(k);
    const gf::Field& E = *view.field();
    const auto lam = embed_entries(view.embedding(), proj.entries);
    std::vector<std::vector<Raw>> forms_e(forms.size());
    for (std::size_t i = 0; i < forms.size(); ++i) forms_e[i] = embed_entries(view.embedding(), forms[i]);

    const auto& pts = cache.points(k);
    std::vector<Raw> jac(gens * w), m(want * w), y(proj.rows);
    auto singular_on = [&](const Raw* x, std::uint64_t yi) {
      std::copy(jac.begin(), jac.end(), m.begin());
      std::copy(forms_e[yi].begin(), forms_e[yi].end(), m.begin() + gens * w);
      return matrix_rank(E, m.data(), want, w) < want;
    };
    for (std::size_t off = 0; off < pts.size(); off += w) {
      const Raw* x = pts.data() + off;
      project(E, lam, proj.rows, proj.cols, x, y.data());
      view.jacobian(x, jac.data());
      if (std::all_of(y.begin(), y.end(), [](Raw c) { return c == 0; })) {
        for (std::uint64_t yi = 0; yi < target.size(); ++yi)
          if (!flagged[yi] && singular_on(x, yi)) flagged[yi] = 1;
        continue;
      }
      auto yr = rational_image(view, y);
      if (!yr) continue;
      const auto yi = target.index_of(*yr);
      if (!flagged[yi] && singular_on(x, yi)) flagged[yi] = 1;
    }
    res.flagged_by_level.push_back(static_cast<std::uint64_t>(std::count(flagged.begin(), flagged.end(), 1)));
  }
  for (std::uint64_t i = 0; i < flagged.size(); ++i)
    if (flagged[i]) res.flagged.push_back(i);
  return res;
}

AuditResult singular_fiber_audit(const VarietySpec& V, const LinearProjection& proj, unsigned K,
                                 const ExecOptions& opts) {
  PointCache cache(V, K, opts);
  return singular_fiber_audit(V, proj, cache);
}

SectionSearchResult nonsingular_section_search(const VarietySpec& V, const std::vector<std::uint64_t>& seeds,
                                               unsigned K, const SampleOptions& sopts,
                                               const ExecOptions& opts) {
  require_s(V, "the nonsingular section search");
  require_nonlinear(V, "the nonsingular section search");
  PointCache cache(V, K, opts);
  SectionSearchResult res;
  res.level = K;
  const gf::Field& F = *V.field;
  points::ProjectiveSpace target(F.cardinality(), static_cast<unsigned>(V.s) + 1);
  for (auto seed : seeds) {
    ++res.seeds_tried;
    LinearProjection proj;
    try {
      proj = sample_projection(V, seed, sopts, opts);
    } catch (const ValidationError&) {
      continue;
    }
    const auto audit = singular_fiber_audit(V, proj, cache);
    const std::set<std::uint64_t> bad(audit.flagged.begin(), audit.flagged.end());
    const auto fibers = fiber_decomposition(V, proj, opts);
    for (std::uint64_t yi = 0; yi < target.size(); ++yi) {
      if (bad.count(yi) || fibers.fiber_counts[yi] == 0) continue;
      res.found = true;
      res.seed = seed;
      res.y_index = yi;
      res.y.resize(proj.rows);
      target.point(yi, res.y.data());
      res.fiber_points = fibers.fiber_counts[yi];
      // An F_q-point of V_y: either in L or projecting onto y.
      const auto& pts = cache.points(1);
      const std::size_t w = V.n + 1;
      std::vector<Raw> y(proj.rows);
      for (std::size_t off = 0; off < pts.size() && res.smooth_witness.empty(); off += w) {
        project(F, proj.entries, proj.rows, proj.cols, pts.data() + off, y.data());
        if (!points::canonicalize(F, y) || y == res.y)
          res.smooth_witness.assign(pts.begin() + off, pts.begin() + off + w);
      }
      res.projection = std::move(proj);
      res.note = "nonsingularity of V_y certified only up to level K=" + std::to_string(K);
      return res;
    }
  }
  res.note = "no seed produced a fiber passing the level-" + std::to_string(K) + " audit";
  return res;
}

}  // namespace fqp::counting
