#include "bounds/bounds.hpp"

#include <algorithm>
#include <functional>

#include "common/error.hpp"
#include "points/points.hpp"

namespace fqp::bounds {

namespace {

BigInt pw(const BigInt& b, long e) {
  if (e < 0) throw Error("negative exponent in bound formula");
  return big_pow(b, static_cast<unsigned>(e));
}

BigInt product(const std::vector<int>& d) {
  BigInt p = 1;
  for (int x : d) p *= x;
  return p;
}

BigInt sum(const std::vector<int>& d) {
  BigInt s = 0;
  for (int x : d) s += x;
  return s;
}

std::string sstr(int s) { return "[s=" + std::to_string(s) + "]"; }

void check_vectors(const std::vector<int>& d, const std::vector<int>& n, const char* what) {
  if (d.size() != n.size())
    throw ValidationError(std::string(what) + ": degree and dimension vectors differ in length (" +
                          std::to_string(d.size()) + " vs " + std::to_string(n.size()) + ")");
  if (d.empty()) throw ValidationError(std::string(what) + ": needs m >= 1");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) throw ValidationError(std::string(what) + ": degrees must be >= 0");
    if (n[i] < 1) throw ValidationError(std::string(what) + ": dimensions must be >= 1");
  }
}

// Sum over eps in {0,1}^m \ {0} of (-1)^{|eps|+1} d^eps prod term(i, eps_i).
BigInt signed_subset_sum(const std::vector<int>& d,
                         const std::function<BigInt(std::size_t, int)>& term) {
  const std::size_t m = d.size();
  BigInt total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    BigInt t = 1;
    int weight = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const int e = static_cast<int>((mask >> i) & 1);
      if (e) {
        t *= d[i];
        ++weight;
      }
      t *= term(i, e);
    }
    if (weight % 2 == 1) total += t;
    else total -= t;
  }
  return total;
}

}  // namespace

BigInt BoundContext::delta() const { return product(d); }

int BoundContext::D() const {
  int s = 0;
  for (int x : d) s += x - 1;
  return s;
}

int BoundContext::dmax() const { return d.empty() ? 0 : *std::max_element(d.begin(), d.end()); }

bool BoundContext::nonlinear() const {
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 2; });
}

BoundContext make_context(unsigned n, unsigned r, int s, std::vector<int> d, std::uint64_t q) {
  if (r >= n) throw ValidationError("invariant violated: need n > r, got n=" + std::to_string(n) +
                                    " r=" + std::to_string(r));
  if (d.size() != n - r)
    throw ValidationError("invariant violated: multidegree must have n - r = " +
                          std::to_string(n - r) + " entries, got " + std::to_string(d.size()));
  for (int x : d)
    if (x < 1) throw ValidationError("invariant violated: degrees must be >= 1");
  if (s < -1 || s >= static_cast<int>(r))
    throw ValidationError("invariant violated: need -1 <= s < r, got s=" + std::to_string(s));
  if (q < 2) throw ValidationError("invariant violated: q must be >= 2");
  std::sort(d.begin(), d.end(), std::greater<>());
  return BoundContext{n, r, s, std::move(d), q};
}

BigInt betti_b1(unsigned n, const std::vector<int>& d) {
  if (n < 2 || d.size() != n - 1)
    throw ValidationError("betti_b1: expected n-1 = " + std::to_string(n >= 1 ? n - 1 : 0) +
                          " degrees, got " + std::to_string(d.size()));
  return product(d) * (sum(d) - n - 1) + 2;
}

BigInt betti_b2(unsigned n, const std::vector<int>& d) {
  if (n < 3 || d.size() != n - 2)
    throw ValidationError("betti_b2: expected n-2 = " + std::to_string(n >= 2 ? n - 2 : 0) +
                          " degrees, got " + std::to_string(d.size()));
  BigInt pairs = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i; j < d.size(); ++j) pairs += BigInt(d[i]) * d[j];
  const BigInt binom = BigInt(n + 1) * n / 2;
  return product(d) * (binom - BigInt(n + 1) * sum(d) + pairs) - 3;
}

BigInt betti_b2_upper(unsigned n, const std::vector<int>& d) {
  if (n < 3 || d.size() != n - 2)
    throw ValidationError("betti_b2_upper: expected n-2 degrees, got " + std::to_string(d.size()));
  int D = 0;
  for (int x : d) D += x - 1;
  return BigInt(n - 1) * BigInt(D) * D * product(d);
}

std::optional<BigInt> primitive_betti(unsigned k, unsigned n, const std::vector<int>& d) {
  if (k == 1) return betti_b1(n, d);
  if (k == 2) return betti_b2(n, d);
  return std::nullopt;
}

Surd deligne_bound(std::uint64_t q, unsigned r, const BigInt& b) {
  if (b < 0) throw ValidationError("deligne_bound: b must be >= 0");
  return Surd::half_power(q, r) * Rational(b);
}

BigInt projective_upper(const BigInt& delta, unsigned r, std::uint64_t q) {
  return delta * points::p_r(q, static_cast<int>(r));
}

BigInt serre(const BigInt& delta, unsigned n, std::uint64_t q) {
  if (n < 1) throw ValidationError("serre: n must be >= 1");
  return delta * pw(q, n - 1) + points::p_r(q, static_cast<int>(n) - 2);
}

BigInt serre_multih(int d, unsigned n, unsigned m, std::uint64_t q) {
  if (d < 1) throw ValidationError("serre_multih: d must be >= 1");
  if (n < 1 || m < 1) throw ValidationError("serre_multih: n and m must be >= 1");
  const BigInt inner = pw(q, n) - BigInt(d - 1) * pw(q, n - 1);
  return pw(points::p_r(q, static_cast<int>(n)), m) - pw(inner, m);
}

BigInt eta(const std::vector<int>& d, const std::vector<int>& n, std::uint64_t q) {
  check_vectors(d, n, "eta");
  return signed_subset_sum(d, [&](std::size_t i, int e) { return points::p_r(q, n[i] - e); });
}

BigInt eta_affine(const std::vector<int>& d, const std::vector<int>& n, std::uint64_t q) {
  check_vectors(d, n, "eta_affine");
  return signed_subset_sum(d, [&](std::size_t i, int e) { return pw(q, n[i] + 1 - e); });
}

BigInt nonzero_lower(const std::vector<int>& d, const std::vector<int>& n, std::uint64_t q) {
  check_vectors(d, n, "nonzero_lower");
  BigInt v = 1;
  for (std::size_t i = 0; i < d.size(); ++i) v *= pw(q, n[i]) * (BigInt(q) - d[i]);
  return v;
}

BigInt B_ds(const BoundContext& ctx) {
  const int r = static_cast<int>(ctx.r), s = ctx.s;
  if (s < 0 || s > r - 2)
    throw ValidationError("B_ds: need 0 <= s <= r-2, got s=" + std::to_string(s) +
                          " r=" + std::to_string(r));
  const BigInt D = ctx.D(), delta = ctx.delta();
  const BigInt n = ctx.n;
  return pw(D, r - s - 2) * delta * (((n - s) * (r - s) + 2) * D + (r - s - 1)) + delta + 1;
}

MainEstimate main_estimate(const BoundContext& ctx, bool smooth) {
  MainEstimate out;
  const int r = static_cast<int>(ctx.r), s = ctx.s;
  if (r < 2) {
    out.reason = "needs r >= 2";
    return out;
  }
  if (s != r - 2 && s != r - 3) {
    out.reason = "needs s in {r-2, r-3}, got s=" + std::to_string(s);
    return out;
  }
  if (s < 0) {
    out.reason = "needs s >= 0";
    return out;
  }
  if (!ctx.nonlinear()) {
    out.reason = "needs every d_i >= 2";
    return out;
  }
  out.applicable = true;
  const BigInt D = ctx.D(), delta = ctx.delta(), q = ctx.q;
  out.bprime = *primitive_betti(static_cast<unsigned>(r - s - 1), ctx.n - s - 1, ctx.d);
  if (smooth) {
    out.constant = 2 * out.bprime + 2 * (2 * pw(D, r - s) * delta + 1) * (delta - 1) +
                   2 * BigInt(s + 2) * (delta - 1) * B_ds(ctx);
  } else {
    out.constant = 2 * out.bprime + 2 * (7 * pw(D, r - s) * delta + 1) * (delta - 1);
  }
  const Surd tail(pw(q, r - 1) * out.constant);
  out.theorem = Surd::half_power(q, r + s + 1) * Rational(out.bprime) + tail;
  const BigInt D2d2 = D * D * delta * delta;
  if (s == r - 2) {
    const Surd head = Surd::half_power(q, 2 * r - 1) * Rational(delta * (D - 2) + 2);
    const BigInt c = smooth ? 11 * BigInt(r + 1) * D2d2 : 14 * D2d2;
    out.corollary = head + Surd(c * pw(q, r - 1));
    if (smooth) out.alternate = head + Surd(8 * BigInt(r + 1) * D2d2 * pw(q, r - 1));
  } else {
    const BigInt c = smooth ? BigInt(34 * r - 20) : BigInt(14);
    out.corollary = Surd(c * D * D2d2 * pw(q, r - 1));
  }
  return out;
}

ComparisonBounds comparison_bounds(const BoundContext& ctx) {
  ComparisonBounds out;
  const int n = static_cast<int>(ctx.n), r = static_cast<int>(ctx.r), s = ctx.s;
  const BigInt d = ctx.dmax(), delta = ctx.delta(), q = ctx.q;
  out.C = 9 * pw(2, n - r) * pw(BigInt(n - r) * d + 3, n + 1);
  if (s < 0 || (s != r - 2 && s != r - 3)) {
    out.gl_reason = "b' known only for s in {r-2, r-3} with s >= 0";
  } else {
    const BigInt b = *primitive_betti(static_cast<unsigned>(r - s - 1), ctx.n - s - 1, ctx.d);
    out.gl = Surd::half_power(q, r + s + 1) * Rational(b) +
             Surd::half_power(q, r + s) * Rational(out.C);
  }
  out.cm_q_threshold = 2 * BigInt(n - r) * d * delta + 1;
  out.cm_q_valid = q > out.cm_q_threshold;
  if (s != r - 2 || s < 0) {
    out.cm_reason = "stated for s = r-2";
  } else {
    const BigInt nrdd = BigInt(n - r) * d * delta;
    out.cm = Surd::half_power(q, 2 * r - 1) * Rational(delta * (BigInt(ctx.D()) - 2) + 2) +
             Surd(2 * nrdd * nrdd * pw(q, r - 1));
    if (!out.cm_q_valid) out.cm_reason = "needs q > " + out.cm_q_threshold.str();
  }
  return out;
}

std::vector<Threshold> existence_thresholds(const BoundContext& ctx) {
  std::vector<Threshold> out;
  const int n = static_cast<int>(ctx.n), r = static_cast<int>(ctx.r);
  const int s0 = std::max(ctx.s, 0);
  const BigInt D = ctx.D(), delta = ctx.delta(), q = ctx.q;
  std::string common_reason;
  if (r < 2) common_reason = "needs r >= 2";
  else if (!ctx.nonlinear()) common_reason = "needs every d_i >= 2";

  auto make = [&](std::string name, ThresholdKind kind, int s, std::string formula) {
    Threshold t;
    t.name = std::move(name);
    t.kind = kind;
    t.s = s;
    t.formula = std::move(formula);
    t.reason = common_reason;
    if (t.reason.empty() && (s < s0 || s > r - 2))
      t.reason = "needs max(s,0) <= " + std::to_string(s) + " <= r-2";
    t.applicable = t.reason.empty();
    return t;
  };
  auto finish = [&](Threshold t, const BigInt& value) {
    t.value = value;
    t.guaranteed = q > value;
    out.push_back(std::move(t));
  };

  for (int s : {r - 2, r - 3}) {
    Threshold t = make("existence" + sstr(s), ThresholdKind::SmoothPoint, s,
                       "max{B_{d,s}, D^(r-s)*delta, b'^(2/(r-s-1))}");
    if (!t.applicable) {
      if (s >= 0) out.push_back(std::move(t));
      continue;
    }
    const int k = r - s - 1;
    const BigInt b = *primitive_betti(static_cast<unsigned>(k), ctx.n - s - 1, ctx.d);
    // q > b'^{2/k} iff q^k > b'^2; with k in {1, 2} the root is an integer.
    const BigInt root = k == 1 ? b * b : b;
    finish(std::move(t), std::max({B_ds(ctx.with_s(s)), pw(D, r - s) * delta, root}));
  }
  {
    Threshold t = make("existence-codim2", ThresholdKind::SmoothPoint, r - 2,
                       "(delta(D-2)+2)^2 if D>=5 or (D=4 and n-r>1), else (2(n-r+3)D+2)delta+1");
    if (!t.applicable) out.push_back(std::move(t));
    else if (D >= 5 || (D == 4 && n - r > 1)) {
      const BigInt b = delta * (D - 2) + 2;
      finish(std::move(t), b * b);
    } else {
      finish(std::move(t), (2 * BigInt(n - r + 3) * D + 2) * delta + 1);
    }
  }
  {
    Threshold t = make("existence-codim3", ThresholdKind::SmoothPoint, r - 3, "3D(D+2)^2*delta");
    if (r - 3 >= 0) {
      if (!t.applicable) out.push_back(std::move(t));
      else finish(std::move(t), 3 * D * (D + 2) * (D + 2) * delta);
    }
  }
  {
    Threshold t = make("existence-intro", ThresholdKind::SmoothPoint, r - 2, "2(D+2)^2*delta^2");
    if (!t.applicable) out.push_back(std::move(t));
    else finish(std::move(t), 2 * (D + 2) * (D + 2) * delta * delta);
  }
  {
    Threshold t = make("section-bertini-intro", ThresholdKind::Section, s0,
                       "(n+1)^2 D^(r-s-1) delta");
    if (!t.applicable) out.push_back(std::move(t));
    else finish(std::move(t), BigInt(n + 1) * (n + 1) * pw(D, r - s0 - 1) * delta);
  }
  {
    Threshold t = make("section-fiber", ThresholdKind::Section, s0, "max{B_{d,s}, D^(r-s)*delta}");
    if (!t.applicable) out.push_back(std::move(t));
    else finish(std::move(t), std::max(B_ds(ctx.with_s(s0)), pw(D, r - s0) * delta));
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(BoundClass c) { return c == BoundClass::Hard ? "HARD" : "SOFT"; }

BoundRow upper_row(std::string bound, std::string formula, const Rational& lhs, const Surd& rhs,
                   BoundClass cls, std::string note) {
  BoundRow row;
  row.bound = std::move(bound);
  row.formula = std::move(formula);
  row.lhs = lhs.str();
  row.rhs = rhs.to_string();
  row.verdict = rhs.at_least(lhs) ? Verdict::Holds : Verdict::Violated;
  row.cls = cls;
  row.note = std::move(note);
  return row;
}

BoundRow not_applicable_row(std::string bound, std::string reason, BoundClass cls) {
  BoundRow row;
  row.bound = std::move(bound);
  row.verdict = Verdict::NotApplicable;
  row.cls = cls;
  row.note = std::move(reason);
  return row;
}

bool BoundReport::hard_violation() const {
  return std::any_of(rows.begin(), rows.end(), [](const BoundRow& r) {
    return r.cls == BoundClass::Hard && r.verdict == Verdict::Violated;
  });
}

BoundReport check(const BoundContext& ctx, const Measured& m, const CheckOptions& opts) {
  if (!m.total && !m.smooth) throw ValidationError("bounds check: no measured counts supplied");
  BoundReport rep{ctx, m, {}};
  auto& rows = rep.rows;
  const int n = static_cast<int>(ctx.n), r = static_cast<int>(ctx.r);
  const BigInt delta = ctx.delta();
  const BigInt pr = points::p_r(ctx.q, r);
  const std::string pr_note = "p_r=" + pr.str();

  if (m.total) {
    const BigInt& N = *m.total;
    const BigInt deg = opts.inject_fault ? delta * points::p_r(ctx.q, r - 1)
                                         : projective_upper(delta, ctx.r, ctx.q);
    rows.push_back(upper_row("degree-bound", "N <= delta*p_r", Rational(N), Surd(deg),
                             BoundClass::Hard, opts.inject_fault ? "fault injected: p_{r-1}" : ""));
    if (n - r == 1) {
      rows.push_back(upper_row("serre", "N <= delta*q^(n-1) + p_(n-2)", Rational(N),
                               Surd(serre(delta, ctx.n, ctx.q)), BoundClass::Hard));
      rows.push_back(upper_row("eta", "N <= eta_1((delta),(n))", Rational(N),
                               Surd(eta({static_cast<int>(delta)}, {n}, ctx.q)), BoundClass::Hard));
    } else {
      rows.push_back(not_applicable_row("serre", "hypersurfaces only"));
    }
  }

  auto dev = [&](const BigInt& N) { return Rational(abs(BigInt(N - pr))); };

  if (m.total) {
    if (ctx.s >= 0) {
      rows.push_back(not_applicable_row("deligne", "needs a smooth variety"));
    } else if (auto b = primitive_betti(ctx.r, ctx.n, ctx.d)) {
      rows.push_back(upper_row("deligne", "|N - p_r| <= b_r'(n,d) q^(r/2)", dev(*m.total),
                               deligne_bound(ctx.q, ctx.r, *b), BoundClass::Hard,
                               pr_note + ", b'=" + b->str()));
    } else {
      rows.push_back(not_applicable_row("deligne", "b_r' built in only for r in {1, 2}"));
    }
  }

  const int s0 = std::max(ctx.s, 0);
  bool any_main = false;
  for (int s : {r - 2, r - 3}) {
    if (s < s0) continue;
    any_main = true;
    const BoundContext c = ctx.with_s(s);
    for (bool smooth : {false, true}) {
      const std::optional<BigInt>& N = smooth ? m.smooth : m.total;
      const std::string suffix = std::string(smooth ? "-smooth" : "") + sstr(s);
      if (!N) continue;
      const MainEstimate est = main_estimate(c, smooth);
      if (!est.applicable) {
        rows.push_back(not_applicable_row("main-theorem" + suffix, est.reason));
        continue;
      }
      const std::string cst = smooth ? "B" : "A";
      const std::string note = pr_note + ", b'=" + est.bprime.str() + ", " + cst + "=" +
                               est.constant.str();
      rows.push_back(upper_row("main-theorem" + suffix,
                               "|N - p_r| <= b' q^((r+s+1)/2) + " + cst + " q^(r-1)", dev(*N),
                               est.theorem, BoundClass::Hard, note));
      std::string cf;
      if (s == r - 2) cf = smooth ? "(delta(D-2)+2) q^(r-1/2) + 11(r+1) D^2 delta^2 q^(r-1)"
                                  : "(delta(D-2)+2) q^(r-1/2) + 14 D^2 delta^2 q^(r-1)";
      else cf = smooth ? "(34r-20) D^3 delta^2 q^(r-1)" : "14 D^3 delta^2 q^(r-1)";
      rows.push_back(upper_row("main-corollary" + suffix, "|N - p_r| <= " + cf, dev(*N),
                               est.corollary, BoundClass::Hard, pr_note));
      if (est.alternate)
        rows.push_back(upper_row("main-intro-alternate" + suffix,
                                 "|N - p_r| <= (delta(D-2)+2) q^(r-1/2) + 8(r+1) D^2 delta^2 q^(r-1)",
                                 dev(*N), *est.alternate, BoundClass::Soft,
                                 "constant differs from the proved 11(r+1)"));
    }
  }
  if (!any_main) rows.push_back(not_applicable_row("main-theorem", "needs 0 <= s <= r-2"));

  if (m.total) {
    for (int s : {r - 2, r - 3}) {
      if (s < s0) continue;
      const ComparisonBounds cb = comparison_bounds(ctx.with_s(s));
      if (cb.gl)
        rows.push_back(upper_row("gl" + sstr(s), "|N - p_r| <= b' q^((r+s+1)/2) + C q^((r+s)/2)",
                                 dev(*m.total), *cb.gl, BoundClass::Hard,
                                 pr_note + ", C=" + cb.C.str()));
      if (s == r - 2) {
        if (cb.cm && cb.cm_q_valid)
          rows.push_back(upper_row("cm" + sstr(s),
                                   "|N - p_r| <= (delta(D-2)+2) q^(r-1/2) + 2((n-r)d delta)^2 q^(r-1)",
                                   dev(*m.total), *cb.cm, BoundClass::Hard, pr_note));
        else
          rows.push_back(not_applicable_row("cm" + sstr(s), cb.cm_reason));
      }
    }
  }

  for (const Threshold& t : existence_thresholds(ctx)) {
    if (t.kind != ThresholdKind::SmoothPoint) continue;
    if (!t.applicable) {
      rows.push_back(not_applicable_row(t.name, t.reason));
      continue;
    }
    if (!t.guaranteed) {
      rows.push_back(not_applicable_row(t.name, "q <= " + t.value.str()));
      continue;
    }
    if (!m.smooth) {
      rows.push_back(not_applicable_row(t.name, "smooth count not measured"));
      continue;
    }
    BoundRow row;
    row.bound = t.name;
    row.formula = "q > " + t.formula + " implies N_sm >= 1";
    row.lhs = m.smooth->str();
    row.rhs = "1";
    row.verdict = *m.smooth >= 1 ? Verdict::Holds : Verdict::Violated;
    row.note = "threshold " + t.value.str();
    rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace fqp::bounds
