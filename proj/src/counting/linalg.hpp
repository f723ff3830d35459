#pragma once

#include <cstddef>
#include <vector>

#include "gf/field.hpp"

namespace fqp::counting {

using gf::Raw;

// Row-reduces the rows x cols matrix in place and returns its rank.
inline unsigned matrix_rank(const gf::Field& F, Raw* m, std::size_t rows, std::size_t cols) {
  unsigned rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
    const Raw inv = F.inv(m[rank * cols + c]);
    for (std::size_t j = c; j < cols; ++j) m[rank * cols + j] = F.mul(m[rank * cols + j], inv);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Raw f = m[i * cols + c];
      if (f == 0) continue;
      const Raw nf = F.neg(f);
      for (std::size_t j = c; j < cols; ++j)
        m[i * cols + j] = F.fma(nf, m[rank * cols + j], m[i * cols + j]);
    }
    ++rank;
  }
  return rank;
}

inline unsigned matrix_rank(const gf::Field& F, std::vector<Raw> m, std::size_t rows,
                            std::size_t cols) {
  return matrix_rank(F, m.data(), rows, cols);
}

// Basis of {x : m x = 0} for a rows x cols matrix, one vector per free column.
inline std::vector<std::vector<Raw>> kernel_basis(const gf::Field& F, std::vector<Raw> m,
                                                  std::size_t rows, std::size_t cols) {
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
    const Raw inv = F.inv(m[rank * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) m[rank * cols + j] = F.mul(m[rank * cols + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      const Raw f = m[i * cols + c];
      if (f == 0) continue;
      const Raw nf = F.neg(f);
      for (std::size_t j = 0; j < cols; ++j)
        m[i * cols + j] = F.fma(nf, m[rank * cols + j], m[i * cols + j]);
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<std::vector<Raw>> basis;
  std::size_t next_pivot = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == c) {
      ++next_pivot;
      continue;
    }
    std::vector<Raw> v(cols, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = F.neg(m[i * cols + c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace fqp::counting
