#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sraniso/finite_field.hpp"

namespace sraniso {

using FieldVector = std::vector<FiniteField::Elem>;
using FieldMatrix = std::vector<FieldVector>;

inline FiniteField::Elem field_det(const FiniteField& f, FieldMatrix a) {
  const std::size_t n = a.size();
  FiniteField::Elem det = f.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return f.zero();
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = f.neg(det);
    }
    det = f.mul(det, a[k][k]);
    const auto inv = f.inv(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const auto factor = f.mul(a[i][k], inv);
      for (std::size_t j = k; j < n; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[k][j]));
    }
  }
  return det;
}

/**
 * \brief Incrementally built row-echelon basis of a subspace of F^n.
 *
 * Rows are kept fully reduced against each other, so `reduce` returns the
 * canonical normal form of a vector modulo the span.
 */
class EchelonBasis {
 public:
  EchelonBasis(const FiniteField& f, std::size_t dim) : f_(&f), dim_(dim), pivot_row_(dim, -1) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  FieldVector reduce(FieldVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (v[c] == 0) continue;
      const auto factor = v[c];
      const auto& row = rows_[r];
      for (std::size_t j = 0; j < dim_; ++j)
        if (row[j]) v[j] = f_->sub(v[j], f_->mul(factor, row[j]));
    }
    return v;
  }

  /// Adds v to the span; returns true when the rank grew.
  bool insert(FieldVector v) {
    v = reduce(std::move(v));
    std::size_t c = 0;
    while (c < dim_ && v[c] == 0) ++c;
    if (c == dim_) return false;
    const auto inv = f_->inv(v[c]);
    for (auto& x : v) x = f_->mul(x, inv);
    for (auto& row : rows_) {
      if (row[c] == 0) continue;
      const auto factor = row[c];
      for (std::size_t j = 0; j < dim_; ++j)
        if (v[j]) row[j] = f_->sub(row[j], f_->mul(factor, v[j]));
    }
    pivot_row_[c] = static_cast<int>(rows_.size());
    pivots_.push_back(c);
    rows_.push_back(std::move(v));
    return true;
  }

  bool contains(const FieldVector& v) const {
    auto r = reduce(v);
    for (auto x : r)
      if (x) return false;
    return true;
  }

 private:
  const FiniteField* f_;
  std::size_t dim_;
  std::vector<int> pivot_row_;
  std::vector<std::size_t> pivots_;
  std::vector<FieldVector> rows_;
};

inline std::size_t field_rank(const FiniteField& f, const FieldMatrix& rows, std::size_t dim) {
  EchelonBasis e(f, dim);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

}  // namespace sraniso
