#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "common/bigint.hpp"
#include "common/exec.hpp"
#include "gf/field.hpp"

namespace fqp::points {

using gf::Raw;

// q^r + ... + q + 1, with p_{-1} = 0.
BigInt p_r(std::uint64_t q, int r);

// q^e as a machine integer; throws BudgetError past 2^63.
std::uint64_t checked_pow(std::uint64_t q, unsigned e);

// Scales x so that its leftmost nonzero coordinate is 1. Returns false for
// the zero vector.
bool canonicalize(const gf::Field& F, std::span<Raw> x);

// P^n(F_q) in a fixed order: points are grouped by the position j of their
// leading 1 (j = 0 first) and, within a group, the free coordinates
// x_{j+1}, ..., x_n run as a base-q counter with x_n fastest. Over F_2 with
// n = 1 this gives (1:0), (1:1), (0:1).
class ProjectiveSpace {
 public:
  ProjectiveSpace(std::uint32_t q, unsigned n);

  unsigned dim() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint64_t size() const noexcept { return size_; }

  void point(std::uint64_t index, Raw* out) const;
  std::uint64_t index_of(std::span<const Raw> canonical) const;

  // Calls fn(const Raw* coords) for indices [lo, hi) in order.
  template <class Fn>
  void for_range(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
    if (lo >= hi) return;
    std::vector<Raw> x(n_ + 1);
    point(lo, x.data());
    unsigned lead = 0;
    while (x[lead] == 0) ++lead;
    for (std::uint64_t i = lo; i < hi; ++i) {
      fn(static_cast<const Raw*>(x.data()));
      if (i + 1 == hi) break;
      // Odometer on the free coordinates; on overflow move the leading 1.
      unsigned j = n_;
      while (j > lead && x[j] + 1 == q_) x[j--] = 0;
      if (j > lead) {
        ++x[j];
      } else {
        x[lead] = 0;
        ++lead;
        x[lead] = 1;
      }
    }
  }

 private:
  std::uint32_t q_;
  unsigned n_;
  std::uint64_t size_;
  std::vector<std::uint64_t> block_start_;  // first index with leading 1 at j
};

// F_q^n with x_{n-1} fastest. n = 0 has exactly one (empty) point.
class AffineSpace {
 public:
  AffineSpace(std::uint32_t q, unsigned n);

  unsigned dim() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }
  void point(std::uint64_t index, Raw* out) const;

  template <class Fn>
  void for_range(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
    if (lo >= hi) return;
    std::vector<Raw> x(n_);
    point(lo, x.data());
    for (std::uint64_t i = lo; i < hi; ++i) {
      fn(static_cast<const Raw*>(x.data()));
      for (unsigned j = n_; j-- > 0;) {
        if (++x[j] < q_) break;
        x[j] = 0;
      }
    }
  }

 private:
  std::uint32_t q_;
  unsigned n_;
  std::uint64_t size_;
};

// P^{n_1} x ... x P^{n_m}: Cartesian product with the first factor most
// significant. Coordinates are written concatenated.
class MultiProjectiveSpace {
 public:
  MultiProjectiveSpace(std::uint32_t q, std::vector<unsigned> dims);

  const std::vector<unsigned>& dims() const noexcept { return dims_; }
  std::uint64_t size() const noexcept { return size_; }
  std::size_t num_coords() const noexcept { return num_coords_; }
  void point(std::uint64_t index, Raw* out) const;

  template <class Fn>
  void for_range(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
    std::vector<Raw> x(num_coords_);
    for (std::uint64_t i = lo; i < hi; ++i) {
      point(i, x.data());
      fn(static_cast<const Raw*>(x.data()));
    }
  }

 private:
  std::vector<unsigned> dims_;
  std::vector<ProjectiveSpace> factors_;
  std::uint64_t size_;
  std::size_t num_coords_;
};

}  // namespace fqp::points
