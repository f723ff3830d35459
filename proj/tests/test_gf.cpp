#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "common/rng.hpp"
#include "gf/field.hpp"

using namespace fqp;
using namespace fqp::gf;

namespace {

// Reference multiplication: schoolbook product of coordinate vectors reduced
// by the field modulus, independent of the field's tables.
Raw naive_mul(const Field& F, Raw a, Raw b) {
  const auto p = F.characteristic();
  const auto k = F.degree();
  if (k == 1) return static_cast<Raw>(std::uint64_t{a} * b % p);
  auto ca = F.coordinates(a), cb = F.coordinates(b);
  std::vector<std::uint64_t> prod(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p;
  const auto& m = F.modulus();
  for (int d = static_cast<int>(2 * k - 2); d >= static_cast<int>(k); --d) {
    const auto c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
  }
  std::vector<std::uint32_t> out(prod.begin(), prod.begin() + k);
  return F.from_coordinates(out);
}

}  // namespace

TEST_CASE("make_field basics") {
  auto F5 = make_field(5, 1);
  CHECK(F5->cardinality() == 5);
  CHECK(F5->modulus().empty());
  CHECK(F5->name() == "5");

  auto F4 = make_field(2, 2);
  CHECK(F4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(F4->name() == "2^2");

  CHECK_THROWS_AS(make_field(4, 1), ValidationError);
  CHECK_THROWS_AS(make_field(2, 0), ValidationError);
  CHECK_THROWS_AS(make_field(2, 30), BudgetError);
  CHECK(make_field(5, 1) == F5);
}

TEST_CASE("only monic irreducible quadratic over F_2 is x^2+x+1") {
  int irreducible = 0;
  for (std::uint32_t c0 = 0; c0 < 2; ++c0)
    for (std::uint32_t c1 = 0; c1 < 2; ++c1) {
      bool has_root = false;
      for (std::uint32_t x = 0; x < 2; ++x) has_root |= (x * x + c1 * x + c0) % 2 == 0;
      if (!has_root) {
        ++irreducible;
        CHECK(c0 == 1);
        CHECK(c1 == 1);
      }
    }
  CHECK(irreducible == 1);
}

TEST_CASE("moduli have no roots and the chosen one is smallest for small cases") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 2}, {3, 3}, {5, 2}, {7, 3}}) {
    auto F = make_field(p, k);
    const auto& m = F->modulus();
    REQUIRE(m.size() == k + 1);
    for (std::uint64_t x = 0; x < p; ++x) {
      std::uint64_t v = 0;
      for (int i = static_cast<int>(k); i >= 0; --i) v = (v * x + m[i]) % p;
      CHECK(v != 0);
    }
  }
  CHECK(make_field(2, 3)->modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
  CHECK(make_field(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("parse_field") {
  CHECK(parse_field("3")->cardinality() == 3);
  CHECK(parse_field("2^4")->cardinality() == 16);
  CHECK_THROWS_WITH_AS(parse_field("x^2"), doctest::Contains("'x'"), ValidationError);
  CHECK(parse_field("4")->degree() == 2);
  CHECK(parse_field("9")->characteristic() == 3);
  CHECK_THROWS_WITH_AS(parse_field("6"), doctest::Contains("'6'"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_field("4^2"), doctest::Contains("'4'"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_field("2^b"), doctest::Contains("'b'"), ValidationError);
}

TEST_CASE("arithmetic examples") {
  auto F5 = make_field(5, 1);
  CHECK(F5->add(3, 4) == 2);
  CHECK(F5->inv(2) == 3);
  CHECK(F5->pow(2, 3) == 3);
  CHECK(F5->pow(0, 0) == 1);
  CHECK_THROWS_AS(F5->inv(0), ValidationError);

  auto F4 = make_field(2, 2);
  const Raw x = F4->generator();
  const Raw x1 = F4->add(x, 1);
  CHECK(F4->mul(x, x1) == 1);
  CHECK(F4->inv(x) == x1);

  auto a = F5->element(3), b = F5->element(4);
  CHECK((a + b).raw() == 2);
  CHECK((a + -a).is_zero());
  CHECK_THROWS_AS(a + F4->element(1), ValidationError);
}

TEST_CASE("enumeration order") {
  auto F3 = make_field(3, 1);
  auto e = F3->elements();
  REQUIRE(e.size() == 3);
  for (Raw i = 0; i < 3; ++i) CHECK(e[i].raw() == i);
  CHECK(make_field(2, 2)->elements().size() == 4);
  std::set<std::vector<std::uint32_t>> coords;
  auto F16 = make_field(2, 4);
  std::vector<std::uint32_t> prev;
  for (const auto& el : F16->elements()) {
    auto c = F16->coordinates(el.raw());
    std::vector<std::uint32_t> rev(c.rbegin(), c.rend());
    if (!prev.empty()) CHECK(prev < rev);
    prev = rev;
    coords.insert(c);
  }
  CHECK(coords.size() == 16);
}

TEST_CASE("field axioms against a schoolbook reference") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{
           {2, 1}, {3, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {7, 2}, {2, 6}, {3, 3}, {5, 2}}) {
    auto F = make_field(p, k);
    const Raw q = F->cardinality();
    for (Raw a = 0; a < q; ++a) {
      CHECK(F->add(a, F->neg(a)) == 0);
      if (a) CHECK(F->mul(a, F->inv(a)) == 1);
      if (a) CHECK(F->pow(a, q - 1) == 1);
      CHECK(F->pow(a, q) == a);
      for (Raw b = 0; b < q; ++b) {
        CHECK(F->mul(a, b) == naive_mul(*F, a, b));
        CHECK(F->add(a, b) == F->add(b, a));
      }
    }
    Rng rng(p * 100 + k);
    for (int t = 0; t < 2000; ++t) {
      Raw a = rng.below(q), b = rng.below(q), c = rng.below(q);
      CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
    }
    Raw prod = 1;
    for (Raw a = 1; a < q; ++a) prod = F->mul(prod, a);
    CHECK(prod == F->neg(1));
  }
}

TEST_CASE("large fields use log tables and agree with the reference") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 9}, {3, 6}, {17, 2}, {257, 1}, {65521, 1}}) {
    auto F = make_field(p, k);
    const Raw q = F->cardinality();
    CHECK(F->mode() != Field::Mode::Table);
    Rng rng(q);
    for (int t = 0; t < 5000; ++t) {
      Raw a = rng.below(q), b = rng.below(q);
      CHECK(F->mul(a, b) == naive_mul(*F, a, b));
      // Addition is coordinatewise mod p.
      auto ca = F->coordinates(a), cb = F->coordinates(b);
      for (unsigned i = 0; i < k; ++i) ca[i] = (ca[i] + cb[i]) % p;
      CHECK(F->add(a, b) == F->from_coordinates(ca));
      if (a) CHECK(F->mul(a, F->inv(a)) == 1);
      CHECK(F->add(a, F->neg(a)) == 0);
    }
  }
}

TEST_CASE("embeddings") {
  auto F5 = make_field(5, 1), F25 = make_field(5, 2);
  Embedding e(F5, F25);
  CHECK(e(2) == 2);

  auto F4 = make_field(2, 2), F16 = make_field(2, 4);
  Embedding e4(F4, F16);
  const Raw t = e4(F4->generator());
  CHECK(F16->add(F16->add(F16->mul(t, t), t), 1) == 0);

  CHECK_THROWS_AS(Embedding(F4, make_field(2, 3)), ValidationError);
  CHECK_THROWS_AS(Embedding(F5, make_field(3, 2)), ValidationError);

  for (auto [from, to] : std::vector<std::pair<FieldRef, FieldRef>>{
           {F4, F16}, {make_field(2, 1), F16}, {make_field(3, 1), make_field(3, 2)}, {F16, make_field(2, 8)}}) {
    Embedding m(from, to);
    std::set<Raw> image;
    for (Raw a = 0; a < from->cardinality(); ++a) {
      image.insert(m(a));
      CHECK(m.preimage(m(a)) == a);
      for (Raw b = 0; b < from->cardinality(); ++b) {
        CHECK(m(from->add(a, b)) == to->add(m(a), m(b)));
        CHECK(m(from->mul(a, b)) == to->mul(m(a), m(b)));
      }
    }
    CHECK(image.size() == from->cardinality());
  }
}
