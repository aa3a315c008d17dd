#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldlab/errors.hpp"
#include "ldlab/field.hpp"

namespace ldlab {

// Dense row-major matrix over an exact field. Matrices act on column
// vectors: apply(v) computes M * v.
template <ExactField F>
class Matrix {
 public:
  using Element = typename F::Element;

  explicit Matrix(F field, std::size_t rows = 0, std::size_t cols = 0)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<Element> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw InvalidInput("matrix entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
    }
  }

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Element> row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }
  std::vector<Element> column_vector(std::size_t c) const {
    std::vector<Element> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }
  const std::vector<Element>& data() const { return data_; }

  void append_row(std::span<const Element> v) {
    if (v.size() != cols_) throw InvalidInput("appended row has the wrong length");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
  }
  void truncate_rows(std::size_t n) {
    rows_ = std::min(rows_, n);
    data_.resize(rows_ * cols_);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const Element& e) { return field_.is_zero(e); });
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<Element> apply(std::span<const Element> v) const {
    if (v.size() != cols_) throw InvalidInput("vector length does not match matrix columns");
    std::vector<Element> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) {
      Element acc = field_.zero();
      auto rr = row(r);
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!field_.is_zero(rr[c]) && !field_.is_zero(v[c])) acc = field_.add(acc, field_.mul(rr[c], v[c]));
      }
      out[r] = acc;
    }
    return out;
  }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw InvalidInput("matrix product dimension mismatch");
    Matrix out(field_, rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(r, k);
        if (field_.is_zero(a)) continue;
        field_.add_mul(out.row(r), a, other.row(k));
      }
    }
    return out;
  }

  // Rows [r0, r0 + nr) and columns [c0, c0 + nc).
  Matrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
    Matrix out(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

template <ExactField F>
struct Echelon {
  Matrix<F> reduced;                // rref, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row, increasing

  std::size_t rank() const { return pivots.size(); }
};

// Reduced row-echelon form. The pivot in each column is the first row at or
// below the current rank position with a nonzero entry, so the result is
// deterministic (and unique, as every rref is). Zero rows are removed.
template <ExactField F>
Echelon<F> rref(Matrix<F> m) {
  const F& field = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && field.is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    m.swap_rows(rank, p);
    auto prow = m.row(rank).subspan(c);
    if (!field.is_one(prow[0])) field.scale(prow, field.inv(prow[0]));
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const auto f = m(r, c);
      if (field.is_zero(f)) continue;
      field.sub_mul(m.row(r).subspan(c), f, prow);
    }
    pivots.push_back(c);
    ++rank;
  }
  m.truncate_rows(rank);
  return {std::move(m), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

// A basis of the null space {v : M v = 0} read off the rref: one vector per
// free column f, with a 1 at f, zeros at the other free columns, and the
// negated rref entries at the pivot columns. Any null vector v equals the
// combination of these with coefficients v[f], so the free columns serve as
// coordinates on the kernel.
template <ExactField F>
struct NullSpace {
  Matrix<F> basis;                       // one row per free column
  std::vector<std::size_t> free_columns;  // increasing
};

template <ExactField F>
NullSpace<F> null_space_from_rref(const Echelon<F>& e, std::size_t cols) {
  const F& field = e.reduced.field();
  std::vector<std::size_t> free;
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> basis(field, free.size(), cols);
  for (std::size_t k = 0; k < free.size(); ++k) {
    const std::size_t f = free[k];
    basis(k, f) = field.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      const auto& v = e.reduced(i, f);
      if (!field.is_zero(v)) basis(k, e.pivots[i]) = field.neg(v);
    }
  }
  return {std::move(basis), std::move(free)};
}

template <ExactField F>
NullSpace<F> null_space(const Matrix<F>& m) {
  return null_space_from_rref(rref(m), m.cols());
}

}  // namespace ldlab
