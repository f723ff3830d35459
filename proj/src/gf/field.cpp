#include "gf/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>

namespace fqp::gf {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients c_0.., no trailing zeros

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo the monic-or-not nonzero polynomial m over Z_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm && !a.empty()) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  }
  return poly_mod(std::move(prod), m, p);
}

// Trial division by every monic polynomial of degree 1..k/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    Poly g(deg + 1, 0);
    g[deg] = 1;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t x = t;
      for (std::size_t i = 0; i < deg; ++i) {
        g[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, unsigned k) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  Poly f(k + 1, 0);
  f[k] = 1;
  // t enumerates (c_0, ..., c_{k-1}) lexicographically, c_0 most significant.
  for (std::uint64_t t = 0; t < count; ++t) {
    std::uint64_t x = t;
    for (unsigned i = k; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    if (f[0] == 0) continue;
    if (is_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < k; ++i) q_ *= p;
  if (q_ <= 256)
    mode_ = Mode::Table;
  else if (k == 1)
    mode_ = Mode::Prime;
  else
    mode_ = Mode::Zech;
  build_tables();
}

void Field::build_tables() {
  auto poly_of = [&](Raw a) {
    Poly out = coordinates(a);
    trim(out);
    return out;
  };
  auto raw_of = [&](const Poly& c) {
    Raw v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
    return v;
  };
  const Poly mod = k_ == 1 ? Poly{0, 1} : modulus_;

  if (mode_ == Mode::Table) {
    add_tab_.resize(std::size_t{q_} * q_);
    mul_tab_.resize(std::size_t{q_} * q_);
    neg_tab_.resize(q_);
    inv_tab_.resize(q_);
    std::vector<Poly> polys(q_);
    for (Raw a = 0; a < q_; ++a) polys[a] = poly_of(a);
    for (Raw a = 0; a < q_; ++a) {
      const auto ca = coordinates(a);
      for (Raw b = 0; b < q_; ++b) {
        const auto cb = coordinates(b);
        Raw s = 0, scale = 1;
        for (unsigned i = 0; i < k_; ++i) {
          s += ((ca[i] + cb[i]) % p_) * scale;
          scale *= p_;
        }
        add_tab_[a * q_ + b] = static_cast<std::uint8_t>(s);
        mul_tab_[a * q_ + b] =
            static_cast<std::uint8_t>(raw_of(poly_mulmod(polys[a], polys[b], mod, p_)));
      }
    }
    for (Raw a = 0; a < q_; ++a) {
      for (Raw b = 0; b < q_; ++b) {
        if (add_tab_[a * q_ + b] == 0) neg_tab_[a] = static_cast<std::uint8_t>(b);
        if (mul_tab_[a * q_ + b] == 1) inv_tab_[a] = static_cast<std::uint8_t>(b);
      }
    }
    return;
  }
  if (mode_ == Mode::Prime) return;

  // Zech logarithms over a primitive element g, chosen as the first element
  // in index order whose multiplicative order is q - 1.
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto poly_pow = [&](Poly base, std::uint64_t e) {
    Poly acc{1};
    while (e > 0) {
      if (e & 1) acc = poly_mulmod(acc, base, mod, p_);
      base = poly_mulmod(base, base, mod, p_);
      e >>= 1;
    }
    return acc;
  };
  Poly g;
  for (Raw cand = 2; cand < q_; ++cand) {
    const Poly c = poly_of(cand);
    bool primitive = true;
    for (auto l : factors) {
      if (poly_pow(c, order / l) == Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = c;
      break;
    }
  }
  exp_.assign(2 * order, 0);
  log_.assign(q_, kNoLog);
  Poly cur{1};
  for (std::uint64_t i = 0; i < order; ++i) {
    const Raw v = raw_of(cur);
    exp_[i] = v;
    exp_[i + order] = v;
    log_[v] = static_cast<Raw>(i);
    cur = poly_mulmod(cur, g, mod, p_);
  }
  zech_.assign(order, kNoLog);
  for (std::uint64_t i = 0; i < order; ++i) {
    const Raw v = exp_[i];
    const Raw c0 = v % p_;
    const Raw w = v - c0 + (c0 + 1) % p_;
    zech_[i] = w == 0 ? kNoLog : log_[w];
  }
}

Raw Field::zech_add(Raw a, Raw b) const noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const Raw la = log_[a];
  const Raw lb = log_[b];
  const Raw d = lb >= la ? lb - la : lb + (q_ - 1) - la;
  const Raw z = zech_[d];
  if (z == kNoLog) return 0;
  return exp_[la + z];
}

std::string Field::name() const {
  return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

Raw Field::from_int(std::int64_t c) const noexcept {
  std::int64_t r = c % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Raw>(r);
}

std::vector<std::uint32_t> Field::coordinates(Raw a) const {
  std::vector<std::uint32_t> out(k_);
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Raw Field::from_coordinates(std::span<const std::uint32_t> coords) const {
  if (coords.size() != k_)
    throw ValidationError("coordinate vector of length " +
                          std::to_string(coords.size()) + " for field " + name());
  Raw v = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= p_) throw ValidationError("coordinate out of range [0, p)");
    v = v * p_ + coords[i];
  }
  return v;
}

Raw Field::inv(Raw a) const {
  if (a == 0) throw ValidationError("inverse of zero in F_" + name());
  switch (mode_) {
    case Mode::Table:
      return inv_tab_[a];
    case Mode::Prime:
      return inv_mod(a, p_);
    case Mode::Zech:
      break;
  }
  const Raw l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Raw Field::pow(Raw a, std::uint64_t e) const noexcept {
  Raw acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

Element Field::element(Raw a) const {
  if (a >= q_) throw ValidationError("element index out of range for F_" + name());
  return {*this, a};
}

std::vector<Element> Field::elements() const {
  std::vector<Element> out;
  out.reserve(q_);
  for (Raw a = 0; a < q_; ++a) out.emplace_back(*this, a);
  return out;
}

std::string Field::format(Raw a) const {
  if (k_ == 1) return std::to_string(a);
  const auto c = coordinates(a);
  std::string out;
  for (unsigned i = k_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += (c[i] != 1 ? "*x" : "x");
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FieldRef make_field(std::uint64_t p, unsigned k, std::uint64_t max_cardinality) {
  if (!is_prime(p)) throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw ValidationError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > max_cardinality || q > kMaxFieldSize)
      throw BudgetError("field " + std::to_string(p) + "^" + std::to_string(k) +
                        " exceeds the cardinality budget " +
                        std::to_string(std::min(max_cardinality, kMaxFieldSize)));
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, FieldRef> interned;
  std::lock_guard lock(mu);
  auto& slot = interned[{p, k}];
  if (!slot) {
    auto pp = static_cast<std::uint32_t>(p);
    std::vector<std::uint32_t> modulus;
    if (k > 1) modulus = smallest_irreducible(pp, k);
    slot = std::make_shared<const Field>(pp, k, std::move(modulus));
  }
  return slot;
}

FieldRef parse_field(std::string_view text, std::uint64_t max_cardinality) {
  auto parse_uint = [](std::string_view tok, const char* role) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ValidationError(std::string("invalid ") + role + " '" + std::string(tok) +
                            "' in field spec");
    return v;
  };
  const auto caret = text.find('^');
  const auto p = parse_uint(text.substr(0, caret), "characteristic");
  unsigned k = 1;
  if (caret != std::string_view::npos) {
    const auto tok = text.substr(caret + 1);
    const auto kk = parse_uint(tok, "exponent");
    if (kk == 0 || kk > 64)
      throw ValidationError("invalid exponent '" + std::string(tok) + "' in field spec");
    k = static_cast<unsigned>(kk);
  } else if (p > 1 && !is_prime(p)) {
    // bare prime power, e.g. "9"
    for (std::uint64_t b = 2; b * b <= p; ++b) {
      if (p % b != 0) continue;
      std::uint64_t m = p;
      unsigned e = 0;
      while (m % b == 0) m /= b, ++e;
      if (m == 1 && is_prime(b)) return make_field(b, e, max_cardinality);
      break;
    }
  }
  if (!is_prime(p))
    throw ValidationError("'" + std::string(text.substr(0, caret)) +
                          "' in field spec is not a prime");
  return make_field(p, k, max_cardinality);
}

Embedding::Embedding(FieldRef from, FieldRef to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_->characteristic() != to_->characteristic())
    throw ValidationError("cannot embed F_" + from_->name() + " into F_" + to_->name() +
                          ": characteristics differ");
  if (to_->degree() % from_->degree() != 0)
    throw ValidationError("cannot embed F_" + from_->name() + " into F_" + to_->name() +
                          ": " + std::to_string(from_->degree()) + " does not divide " +
                          std::to_string(to_->degree()));
  const Field& E = *to_;
  const auto& mod = from_->modulus();
  Raw theta = 0;
  if (from_->degree() > 1) {
    bool found = false;
    for (Raw t = 0; t < E.cardinality() && !found; ++t) {
      Raw acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;) acc = E.add(E.mul(acc, t), mod[i]);
      if (acc == 0) {
        theta = t;
        found = true;
      }
    }
    if (!found) throw Error("modulus has no root in the extension field");
  }
  const std::uint32_t qf = from_->cardinality();
  image_.resize(qf);
  back_.reserve(qf);
  for (Raw a = 0; a < qf; ++a) {
    const auto c = from_->coordinates(a);
    Raw acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = E.add(E.mul(acc, theta), c[i]);
    image_[a] = acc;
    back_.emplace(acc, a);
  }
}

Element Embedding::apply(const Element& a) const {
  if (&a.field() != from_.get())
    throw ValidationError("element of F_" + a.field().name() + " passed to embedding from F_" +
                          from_->name());
  return {*to_, image_[a.raw()]};
}

std::optional<Raw> Embedding::preimage(Raw b) const {
  auto it = back_.find(b);
  if (it == back_.end()) return std::nullopt;
  return it->second;
}

}  // namespace fqp::gf
