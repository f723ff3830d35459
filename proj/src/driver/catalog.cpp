#include "driver/catalog.hpp"

#include "points/points.hpp"

namespace fqp::driver {

using gf::Field;
using gf::FieldRef;
using mpoly::MultiPoly;

namespace {

std::function<std::vector<MultiPoly>(const FieldRef&)> from_text(std::vector<std::string> polys, unsigned n) {
  return [polys = std::move(polys), n](const FieldRef& F) {
    std::vector<MultiPoly> out;
    for (const auto& p : polys) out.push_back(mpoly::parse_poly(p, F, {n + 1}));
    return out;
  };
}

auto no_truth() {
  return [](const Field&) -> std::optional<BigInt> { return std::nullopt; };
}

auto always() {
  return [](const Field&) -> std::optional<std::string> { return std::nullopt; };
}

auto char_not(unsigned p) {
  return [p](const Field& F) -> std::optional<std::string> {
    if (F.characteristic() == p) return "needs characteristic != " + std::to_string(p);
    return std::nullopt;
  };
}

// Sum of X_i^2 and sum of a_i X_i^2 with distinct a_i (the field elements of
// index 0..n): a smooth intersection for odd q > n.
std::function<std::vector<MultiPoly>(const FieldRef&)> diagonal_pair(unsigned n) {
  return [n](const FieldRef& F) {
    MultiPoly f(F, {n + 1}), g(F, {n + 1});
    for (unsigned i = 0; i <= n; ++i) {
      mpoly::Exponents e(n + 1, 0);
      e[i] = 2;
      f.add_term(e, 1);
      g.add_term(e, static_cast<gf::Raw>(i));
    }
    return std::vector<MultiPoly>{f, g};
  };
}

auto odd_q_above(unsigned n) {
  return [n](const Field& F) -> std::optional<std::string> {
    if (F.characteristic() == 2) return "needs odd characteristic";
    if (F.cardinality() <= n) return "needs q > " + std::to_string(n) + " for distinct diagonal weights";
    return std::nullopt;
  };
}

// When q = 2 mod 3, cubing permutes F_q, so sum X_i^3 has as many zeros as
// sum X_i.
std::optional<BigInt> fermat_cubic_count(const Field& F, unsigned n) {
  if (F.cardinality() % 3 != 2) return std::nullopt;
  return points::p_r(F.cardinality(), static_cast<int>(n) - 1);
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  auto zero = [](const Field&) -> std::optional<BigInt> { return BigInt(0); };

  c.push_back({"conic", "smooth conic X0*X2 - X1^2 in P^2", 2, 1, std::nullopt, {2}, always(),
               from_text({"1*X0^1*X2^1 - 1*X1^2"}, 2),
               [](const Field& F) -> std::optional<BigInt> { return BigInt(F.cardinality()) + 1; }, zero, true});
  c.push_back({"hyperplane", "line X0 = 0 in P^2", 2, 1, std::nullopt, {1}, always(), from_text({"1*X0^1"}, 2),
               [](const Field& F) -> std::optional<BigInt> { return points::p_r(F.cardinality(), 1); }, zero, true});
  c.push_back({"fermat-cubic-curve", "plane cubic X0^3 + X1^3 + X2^3", 2, 1, std::nullopt, {3}, char_not(3),
               from_text({"1*X0^3 + 1*X1^3 + 1*X2^3"}, 2),
               [](const Field& F) { return fermat_cubic_count(F, 2); }, zero, true});
  c.push_back({"quadric-cone-p3", "quadric cone X1^2 - X0*X2 in P^3, vertex (0:0:0:1)", 3, 2, 0, {2}, always(),
               from_text({"1*X1^2 - 1*X0^1*X2^1"}, 3),
               [](const Field& F) -> std::optional<BigInt> {
                 const BigInt q = F.cardinality();
                 return q * q + q + 1;
               },
               [](const Field&) -> std::optional<BigInt> { return BigInt(1); }, false});
  c.push_back({"quadric-surface", "smooth quadric surface X0*X3 - X1*X2 in P^3", 3, 2, 0, {2}, always(),
               from_text({"1*X0^1*X3^1 - 1*X1^1*X2^1"}, 3),
               [](const Field& F) -> std::optional<BigInt> {
                 const BigInt q1 = BigInt(F.cardinality()) + 1;
                 return q1 * q1;
               },
               zero, true});
  c.push_back({"cubic-cone-p3", "cone X0^3 + X1^3 + X2^3 in P^3 over the Fermat cubic, vertex (0:0:0:1)", 3, 2, 0,
               {3}, char_not(3), from_text({"1*X0^3 + 1*X1^3 + 1*X2^3"}, 3),
               [](const Field& F) -> std::optional<BigInt> {
                 auto curve = fermat_cubic_count(F, 2);
                 if (!curve) return std::nullopt;
                 return BigInt(F.cardinality()) * *curve + 1;
               },
               [](const Field&) -> std::optional<BigInt> { return BigInt(1); }, false});
  c.push_back({"fermat-cubic-surface", "smooth cubic surface X0^3 + X1^3 + X2^3 + X3^3 in P^3", 3, 2, 0, {3},
               char_not(3), from_text({"1*X0^3 + 1*X1^3 + 1*X2^3 + 1*X3^3"}, 3),
               [](const Field& F) { return fermat_cubic_count(F, 3); }, zero, true});
  c.push_back({"quadric-cone-p4-rank3", "rank-3 quadric X1^2 - X0*X2 in P^4, vertex the line X0 = X1 = X2 = 0", 4,
               3, 1, {2}, always(), from_text({"1*X1^2 - 1*X0^1*X2^1"}, 4),
               [](const Field& F) -> std::optional<BigInt> {
                 const BigInt q = F.cardinality();
                 return (q + 1) * (q * q + 1);
               },
               [](const Field& F) -> std::optional<BigInt> { return BigInt(F.cardinality()) + 1; }, false});
  c.push_back({"quadric-cone-p4-rank4", "rank-4 quadric X0*X1 - X2*X3 in P^4, vertex (0:0:0:0:1)", 4, 3, 0, {2},
               always(), from_text({"1*X0^1*X1^1 - 1*X2^1*X3^1"}, 4),
               [](const Field& F) -> std::optional<BigInt> {
                 const BigInt q = F.cardinality();
                 return (q + 1) * (q + 1) * q + 1;
               },
               [](const Field&) -> std::optional<BigInt> { return BigInt(1); }, false});
  c.push_back({"two-quadrics-p4", "smooth intersection of sum X_i^2 and sum a_i X_i^2 in P^4 (a_i distinct)", 4, 2,
               0, {2, 2}, odd_q_above(4), diagonal_pair(4), no_truth(), zero, true});
  c.push_back({"two-quadrics-p5", "smooth intersection of sum X_i^2 and sum a_i X_i^2 in P^5 (a_i distinct)", 5, 3,
               0, {2, 2}, odd_q_above(5), diagonal_pair(5), no_truth(), zero, true});
  return c;
}

}  // namespace

counting::VarietySpec CatalogEntry::build(const FieldRef& field) const {
  if (auto why = unsupported(*field)) throw ValidationError("catalog entry '" + name + "' over F_" + field->name() + ": " + *why);
  return counting::make_variety(field, n, r, generators(field), s, name);
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw ValidationError("unknown catalog entry '" + name + "'");
}

}  // namespace fqp::driver
