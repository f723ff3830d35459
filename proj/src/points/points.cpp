#include "points/points.hpp"

namespace fqp::points {

BigInt p_r(std::uint64_t q, int r) {
  if (r < -1) throw ValidationError("p_r needs r >= -1, got " + std::to_string(r));
  if (q < 2) throw ValidationError("p_r needs q >= 2");
  BigInt sum = 0, term = 1;
  for (int i = 0; i <= r; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

std::uint64_t checked_pow(std::uint64_t q, unsigned e) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (v > (std::uint64_t{1} << 63) / q) throw BudgetError("enumeration size exceeds 2^63");
    v *= q;
  }
  return v;
}

bool canonicalize(const gf::Field& F, std::span<Raw> x) {
  std::size_t j = 0;
  while (j < x.size() && x[j] == 0) ++j;
  if (j == x.size()) return false;
  const Raw s = F.inv(x[j]);
  for (std::size_t i = j; i < x.size(); ++i) x[i] = F.mul(x[i], s);
  return true;
}

ProjectiveSpace::ProjectiveSpace(std::uint32_t q, unsigned n) : q_(q), n_(n), size_(0) {
  if (q < 2) throw ValidationError("projective space needs q >= 2");
  for (unsigned j = 0; j <= n; ++j) {
    block_start_.push_back(size_);
    const auto block = checked_pow(q, n - j);
    if (size_ > (std::uint64_t{1} << 63) - block) throw BudgetError("enumeration size exceeds 2^63");
    size_ += block;
  }
}

void ProjectiveSpace::point(std::uint64_t index, Raw* out) const {
  if (index >= size_) throw ValidationError("projective point index out of range");
  unsigned lead = n_;
  while (block_start_[lead] > index) --lead;
  std::uint64_t rest = index - block_start_[lead];
  for (unsigned i = 0; i < lead; ++i) out[i] = 0;
  out[lead] = 1;
  for (unsigned i = n_; i > lead; --i) {
    out[i] = static_cast<Raw>(rest % q_);
    rest /= q_;
  }
}

std::uint64_t ProjectiveSpace::index_of(std::span<const Raw> x) const {
  if (x.size() != n_ + 1) throw ValidationError("point has wrong number of coordinates");
  unsigned lead = 0;
  while (lead <= n_ && x[lead] == 0) ++lead;
  if (lead > n_ || x[lead] != 1) throw ValidationError("point is not in canonical form");
  std::uint64_t rest = 0;
  for (unsigned i = lead + 1; i <= n_; ++i) rest = rest * q_ + x[i];
  return block_start_[lead] + rest;
}

AffineSpace::AffineSpace(std::uint32_t q, unsigned n) : q_(q), n_(n), size_(checked_pow(q, n)) {}

void AffineSpace::point(std::uint64_t index, Raw* out) const {
  for (unsigned i = n_; i-- > 0;) {
    out[i] = static_cast<Raw>(index % q_);
    index /= q_;
  }
}

MultiProjectiveSpace::MultiProjectiveSpace(std::uint32_t q, std::vector<unsigned> dims)
    : dims_(std::move(dims)), size_(1), num_coords_(0) {
  if (dims_.empty()) throw ValidationError("multiprojective space needs at least one factor");
  for (unsigned n : dims_) {
    factors_.emplace_back(q, n);
    const auto s = factors_.back().size();
    if (size_ > (std::uint64_t{1} << 63) / s) throw BudgetError("enumeration size exceeds 2^63");
    size_ *= s;
    num_coords_ += n + 1;
  }
}

void MultiProjectiveSpace::point(std::uint64_t index, Raw* out) const {
  std::size_t offset = num_coords_;
  for (std::size_t g = factors_.size(); g-- > 0;) {
    const auto s = factors_[g].size();
    offset -= dims_[g] + 1;
    factors_[g].point(index % s, out + offset);
    index /= s;
  }
}

}  // namespace fqp::points
