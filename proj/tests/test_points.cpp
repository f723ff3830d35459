#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "points/points.hpp"

using namespace fqp;
using namespace fqp::points;

namespace {

std::vector<std::vector<Raw>> collect(const ProjectiveSpace& P, std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::vector<Raw>> out;
  P.for_range(lo, hi, [&](const Raw* x) { out.emplace_back(x, x + P.dim() + 1); });
  return out;
}

}  // namespace

TEST_CASE("p_r") {
  CHECK(p_r(3, 2) == 13);
  CHECK(p_r(7, 0) == 1);
  CHECK(p_r(7, -1) == 0);
  CHECK(p_r(2, 10) == 2047);
  CHECK_THROWS_AS(p_r(3, -2), ValidationError);
}

TEST_CASE("projective enumeration order and counts") {
  ProjectiveSpace P1(2, 1);
  auto pts = collect(P1, 0, P1.size());
  CHECK(pts == std::vector<std::vector<Raw>>{{1, 0}, {1, 1}, {0, 1}});
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    for (unsigned n = 0; n <= 3; ++n) {
      ProjectiveSpace P(q, n);
      CHECK(BigInt(P.size()) == p_r(q, n));
      auto all = collect(P, 0, P.size());
      CHECK(all.size() == P.size());
      for (std::uint64_t i = 0; i < all.size(); ++i) {
        std::vector<Raw> x(n + 1);
        P.point(i, x.data());
        CHECK(x == all[i]);
        CHECK(P.index_of(x) == i);
      }
    }
  }
}

TEST_CASE("no two projective points are proportional") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = gf::make_field(p, 1);
    for (unsigned n = 1; n <= 3; ++n) {
      ProjectiveSpace P(p, n);
      auto all = collect(P, 0, P.size());
      std::set<std::vector<Raw>> seen;
      for (const auto& x : all) {
        for (Raw t = 1; t < p; ++t) {
          std::vector<Raw> y(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) y[i] = F->mul(t, x[i]);
          // Every multiple canonicalizes back to x, and x is seen once.
          canonicalize(*F, y);
          CHECK(y == x);
        }
        CHECK(seen.insert(x).second);
      }
    }
  }
}

TEST_CASE("canonicalize") {
  auto F3 = gf::make_field(3, 1);
  std::vector<Raw> x{0, 2, 1};
  CHECK(canonicalize(*F3, x));
  CHECK(x == std::vector<Raw>{0, 1, 2});
  std::vector<Raw> z{0, 0};
  CHECK_FALSE(canonicalize(*F3, z));
}

TEST_CASE("chunked enumeration covers every point once") {
  ProjectiveSpace P(4, 3);
  auto whole = collect(P, 0, P.size());
  std::vector<std::vector<Raw>> joined;
  for (unsigned i = 0; i < 4; ++i) {
    auto [lo, hi] = chunk_bounds(P.size(), 4, i);
    auto part = collect(P, lo, hi);
    joined.insert(joined.end(), part.begin(), part.end());
  }
  CHECK(joined == whole);

  AffineSpace A(3, 4);
  std::set<std::vector<Raw>> a_whole, a_joined;
  A.for_range(0, A.size(), [&](const Raw* x) { a_whole.emplace(x, x + 4); });
  for (unsigned i = 0; i < 4; ++i) {
    auto [lo, hi] = chunk_bounds(A.size(), 4, i);
    A.for_range(lo, hi, [&](const Raw* x) { a_joined.emplace(x, x + 4); });
  }
  CHECK(a_whole.size() == 81);
  CHECK(a_joined == a_whole);
}

TEST_CASE("affine enumeration") {
  AffineSpace A(3, 2);
  CHECK(A.size() == 9);
  AffineSpace A0(3, 0);
  CHECK(A0.size() == 1);
  int calls = 0;
  A0.for_range(0, 1, [&](const Raw*) { ++calls; });
  CHECK(calls == 1);
}

TEST_CASE("multiprojective enumeration") {
  CHECK(MultiProjectiveSpace(2, {1, 1}).size() == 9);
  CHECK(MultiProjectiveSpace(3, {2, 1}).size() == 52);
  MultiProjectiveSpace M(5, {2});
  ProjectiveSpace P(5, 2);
  std::vector<Raw> a(3), b(3);
  for (std::uint64_t i = 0; i < P.size(); ++i) {
    M.point(i, a.data());
    P.point(i, b.data());
    CHECK(a == b);
  }
  MultiProjectiveSpace M2(3, {1, 2});
  std::set<std::vector<Raw>> seen;
  M2.for_range(0, M2.size(), [&](const Raw* x) { seen.emplace(x, x + 5); });
  CHECK(seen.size() == 4 * 13);
  std::vector<Raw> first(5);
  M2.point(1, first.data());
  CHECK(first == std::vector<Raw>{1, 0, 1, 0, 1});
}
