#include "valueset/valueset.hpp"

#include <algorithm>
#include <set>

#include "common/error.hpp"
#include "common/rng.hpp"

namespace fqp::valueset {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(std::uint64_t n, int k) {
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
  BigInt b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

std::uint64_t checked_binomial(std::uint64_t n, int k) {
  const BigInt b = binomial(n, k);
  if (b > BigInt(UINT64_MAX)) throw BudgetError("binomial coefficient overflows");
  return static_cast<std::uint64_t>(b);
}

Rational q_power(std::uint64_t q, int e) {
  const BigInt p = big_pow(q, static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Rational(1) / Rational(p) : Rational(p);
}

Rational sign(int r) { return r % 2 == 1 ? Rational(1) : Rational(-1); }  // (-1)^{r-1}

// Counts increasing r-subsets of [0, q) whose first element lies in
// [lo, hi) and whose Newton coefficients c_k vanish for k >= first_forced.
// diag[k][j] holds the divided difference f[x_{k-j}, ..., x_k].
class SubsetCounter {
 public:
  SubsetCounter(const gf::Field& F, const UniPoly& f, int r, int first_forced)
      : F_(F), r_(r), first_forced_(first_forced), x_(r), diag_(r, std::vector<Raw>(r)) {
    const Raw q = F.cardinality();
    values_.resize(q);
    for (Raw x = 0; x < q; ++x) values_[x] = f.eval(x);
    inv_.resize(q);
    for (Raw x = 1; x < q; ++x) inv_[x] = F.inv(x);
  }

  std::uint64_t count(Raw lo, Raw hi) {
    std::uint64_t total = 0;
    for (Raw x = lo; x < hi; ++x)
      if (push(0, x)) total += descend(1);
    return total;
  }

 private:
  // Places x at depth k; false when the new Newton coefficient is forbidden.
  bool push(int k, Raw x) {
    x_[k] = x;
    auto& row = diag_[k];
    row[0] = values_[x];
    for (int j = 1; j <= k; ++j) {
      const Raw num = F_.sub(row[j - 1], diag_[k - 1][j - 1]);
      row[j] = F_.mul(num, inv_[F_.sub(x, x_[k - j])]);
    }
    return k < first_forced_ || row[k] == 0;
  }

  std::uint64_t descend(int k) {
    if (k == r_) return 1;
    const Raw q = F_.cardinality();
    std::uint64_t total = 0;
    for (Raw x = x_[k - 1] + 1; x + (r_ - k) <= q; ++x)
      if (push(k, x)) total += descend(k + 1);
    return total;
  }

  const gf::Field& F_;
  int r_, first_forced_;
  std::vector<Raw> values_, inv_, x_;
  std::vector<std::vector<Raw>> diag_;
};

}  // namespace

UniPoly::UniPoly(FieldRef field, std::vector<Raw> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw ValidationError("polynomial needs a field");
  if (coeffs_.empty() || coeffs_.back() == 0)
    throw ValidationError("invariant violated: leading coefficient must be nonzero");
  for (Raw c : coeffs_)
    if (c >= field_->cardinality()) throw ValidationError("coefficient outside the field");
}

Raw UniPoly::eval(Raw x) const noexcept {
  const gf::Field& F = *field_;
  Raw acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = F.fma(acc, x, *it);
  return acc;
}

std::string UniPoly::to_string() const {
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Raw c = coeffs_[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    const bool show = c != 1 || i == 0;
    if (show) out += field_->format(c);
    if (i > 0) out += (show ? "*T" : "T") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

std::uint64_t value_set_size(const UniPoly& f) {
  const Raw q = f.field()->cardinality();
  std::vector<char> seen(q, 0);
  std::uint64_t n = 0;
  for (Raw x = 0; x < q; ++x) {
    const Raw v = f.eval(x);
    if (!seen[v]) {
      seen[v] = 1;
      ++n;
    }
  }
  return n;
}

Rational mu(int d) {
  if (d < 1) throw ValidationError("mu: d must be >= 1");
  Rational m = 0;
  for (int r = 1; r <= d; ++r) m += sign(r) / Rational(factorial(r));
  return m;
}

ValueSetFamily make_family(FieldRef field, int d, int s, std::vector<Raw> fixed) {
  if (!field) throw ValidationError("family needs a field");
  if (d < 2) throw ValidationError("invariant violated: family degree must be >= 2");
  if (s < 0 || s > d - 2)
    throw ValidationError("invariant violated: need 0 <= s <= d-2, got s=" + std::to_string(s));
  if (fixed.size() != static_cast<std::size_t>(s))
    throw ValidationError("invariant violated: expected " + std::to_string(s) +
                          " fixed coefficients, got " + std::to_string(fixed.size()));
  for (Raw c : fixed)
    if (c >= field->cardinality()) throw ValidationError("fixed coefficient outside the field");
  return ValueSetFamily{std::move(field), d, s, std::move(fixed)};
}

std::uint64_t ValueSetFamily::size() const {
  std::uint64_t n = 1;
  for (int i = 0; i < d - s - 1; ++i) {
    if (n > UINT64_MAX / field->cardinality()) throw BudgetError("family size overflows");
    n *= field->cardinality();
  }
  return n;
}

UniPoly ValueSetFamily::fixed_part() const { return member(0); }

UniPoly ValueSetFamily::member(std::uint64_t idx) const {
  const Raw q = field->cardinality();
  std::vector<Raw> c(d + 1, 0);
  c[d] = 1;
  for (int i = 0; i < s; ++i) c[d - 1 - i] = fixed[i];
  for (int i = 1; i <= d - s - 1; ++i) {
    c[i] = static_cast<Raw>(idx % q);
    idx /= q;
  }
  return UniPoly(field, std::move(c));
}

std::string ValueSetFamily::tuple_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (i) out += ",";
    out += field->format(fixed[i]);
  }
  return out + ")";
}

Rational average_direct(const ValueSetFamily& fam, const ExecOptions& opts) {
  const std::uint64_t size = fam.size();
  const std::uint64_t q = fam.field->cardinality();
  require_budget(size > UINT64_MAX / q ? UINT64_MAX : size * q, opts, "average_direct");
  const std::uint64_t total = parallel_reduce(
      size, opts.workers, std::uint64_t{0},
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t acc = 0;
        for (std::uint64_t i = lo; i < hi; ++i) acc += value_set_size(fam.member(i));
        return acc;
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; });
  return Rational(BigInt(total), BigInt(size));
}

bool is_allowable(const UniPoly& f, std::span<const Raw> X, int s) {
  const gf::Field& F = *f.field();
  std::set<Raw> distinct(X.begin(), X.end());
  if (distinct.size() != X.size()) throw ValidationError("is_allowable: duplicate elements in X");
  for (Raw x : X)
    if (x >= F.cardinality()) throw ValidationError("is_allowable: element outside the field");
  const int r = static_cast<int>(X.size());
  const int forced = f.degree() - s;  // Newton coefficients c_k, k >= forced, must vanish
  // In-place divided differences; after pass j, dd[j] is c_j.
  std::vector<Raw> dd(r);
  for (int i = 0; i < r; ++i) dd[i] = f.eval(X[i]);
  for (int j = 1; j < r; ++j)
    for (int i = r - 1; i >= j; --i)
      dd[i] = F.mul(F.sub(dd[i], dd[i - 1]), F.inv(F.sub(X[i], X[i - j])));
  for (int k = std::max(forced, 0); k < r; ++k)
    if (dd[k] != 0) return false;
  return true;
}

std::uint64_t chi(const ValueSetFamily& fam, int r, const ExecOptions& opts) {
  if (r < fam.d - fam.s + 1 || r > fam.d)
    throw ValidationError("chi: need d-s+1 <= r <= d, got r=" + std::to_string(r) +
                          " for d=" + std::to_string(fam.d) + " s=" + std::to_string(fam.s));
  const Raw q = fam.field->cardinality();
  require_budget(checked_binomial(q, r), opts, "chi");
  if (static_cast<std::uint64_t>(r) > q) return 0;
  const UniPoly h = fam.fixed_part();
  const std::uint64_t firsts = q - r + 1;
  return parallel_reduce(
      firsts, opts.workers, std::uint64_t{0},
      [&](std::uint64_t lo, std::uint64_t hi) {
        SubsetCounter counter(*fam.field, h, r, fam.d - fam.s);
        return counter.count(static_cast<Raw>(lo), static_cast<Raw>(hi));
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; });
}

Rational cohen_average(int d, std::uint64_t q) {
  Rational sum = 0;
  for (int r = 1; r <= d; ++r) sum += sign(r) * Rational(binomial(q, r)) * q_power(q, 1 - r);
  return sum;
}

Rational average_via_chi(const ValueSetFamily& fam, const ExecOptions& opts) {
  const std::uint64_t q = fam.field->cardinality();
  const int free = fam.d - fam.s;
  Rational sum = cohen_average(free, q);
  Rational tail = 0;
  for (int r = free + 1; r <= fam.d; ++r) tail += sign(r) * Rational(chi(fam, r, opts));
  return sum + tail * q_power(q, -(free - 1));
}

int chi_D(int s, int d, int r) {
  int D = 0;
  for (int j = d - r + 1; j <= s; ++j) D += j - 1;
  return D;
}

BigInt chi_delta(int s, int d, int r) {
  BigInt p = 1;
  for (int j = d - r + 1; j <= s; ++j) p *= j;
  return p;
}

Rational inv_e_lower() { return Rational(BigInt(36787944117144232ULL), big_pow(10, 17)); }
Rational inv_e_upper() { return Rational(BigInt(36787944117144233ULL), big_pow(10, 17)); }

namespace {

bool in_theorem_range(const ValueSetFamily& fam) { return fam.s >= 1 && 2 * fam.s <= fam.d; }

}  // namespace

ChiCheck chi_bound_check(const ValueSetFamily& fam, int r, const ExecOptions& opts) {
  ChiCheck out;
  out.chi = chi(fam, r, opts);
  const std::string name = "chi-bound[r=" + std::to_string(r) + "]";
  if (!in_theorem_range(fam)) {
    out.row = bounds::not_applicable_row(name, "needs 1 <= s <= d/2", bounds::BoundClass::Soft);
    return out;
  }
  const std::uint64_t q = fam.field->cardinality();
  const Rational rf(factorial(r));
  const Rational lead = q_power(q, fam.d - fam.s) / rf;
  const BigInt D = chi_D(fam.s, fam.d, r);
  const BigInt delta = chi_delta(fam.s, fam.d, r);
  const Rational bound = Rational(15) / rf * Rational(D * D * D * delta * delta) *
                         q_power(q, fam.d - fam.s - 1);
  Rational dev = Rational(out.chi) - lead;
  if (dev < 0) dev = -dev;
  out.row = bounds::upper_row(name, "|chi - q^(d-s)/r!| <= (15/r!) D^3 delta^2 q^(d-s-1)", dev,
                              bounds::Surd(bound, Rational(0), 1), bounds::BoundClass::Soft,
                              "chi=" + std::to_string(out.chi) + ", q^(d-s)/r!=" + lead.str() +
                                  ", D=" + D.str() + ", delta=" + delta.str());
  return out;
}

ECheck e_bound_check(const ValueSetFamily& fam, const ExecOptions& opts) {
  ECheck out;
  const std::uint64_t q = fam.field->cardinality();
  out.average = average_direct(fam, opts);
  out.deviation = out.average - mu(fam.d) * Rational(q);
  if (out.deviation < 0) out.deviation = -out.deviation;
  bounds::BoundRow& row = out.row;
  row.bound = "e-bound";
  row.formula = "|N(d,s) - mu_d q| <= e^-1/2 + 16 sum D^3 delta^2 / r! + 2d/q";
  row.cls = bounds::BoundClass::Soft;
  row.lhs = out.deviation.str();
  if (!in_theorem_range(fam)) {
    row.verdict = bounds::Verdict::NotApplicable;
    row.note = "needs 1 <= s <= d/2";
    return out;
  }
  Rational mid = Rational(2 * fam.d) / Rational(q);
  for (int r = fam.d - fam.s + 1; r <= fam.d; ++r) {
    const BigInt D = chi_D(fam.s, fam.d, r);
    mid += Rational(16 * D * D * D * chi_delta(fam.s, fam.d, r) * chi_delta(fam.s, fam.d, r)) /
           Rational(factorial(r));
  }
  out.e_lower = inv_e_lower() / 2 + mid;
  out.e_upper = inv_e_upper() / 2 + mid;
  row.rhs = "[" + out.e_lower.str() + ", " + out.e_upper.str() + "]";
  if (out.deviation <= out.e_lower) row.verdict = bounds::Verdict::Holds;
  else if (out.deviation > out.e_upper) row.verdict = bounds::Verdict::Violated;
  else row.verdict = bounds::Verdict::Inconclusive;
  row.note = "N=" + out.average.str();
  return out;
}

std::vector<std::vector<Raw>> fixed_tuples(const gf::Field& F, int s, std::uint64_t seed,
                                           std::size_t limit) {
  const std::uint64_t q = F.cardinality();
  std::uint64_t total = 1;
  bool small = true;
  for (int i = 0; i < s; ++i) {
    total *= q;
    if (total > limit) {
      small = false;
      break;
    }
  }
  auto decode = [&](std::uint64_t idx) {
    std::vector<Raw> t(s);
    for (int i = 0; i < s; ++i) {
      t[i] = static_cast<Raw>(idx % q);
      idx /= q;
    }
    return t;
  };
  std::vector<std::vector<Raw>> out;
  if (small) {
    for (std::uint64_t i = 0; i < total; ++i) out.push_back(decode(i));
    return out;
  }
  std::uint64_t space = 1;
  for (int i = 0; i < s; ++i) space *= q;
  Rng rng(seed);
  std::set<std::uint64_t> picked;
  while (picked.size() < limit) picked.insert(rng.below(space));
  for (std::uint64_t i : picked) out.push_back(decode(i));
  return out;
}

}  // namespace fqp::valueset
