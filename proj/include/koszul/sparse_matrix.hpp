#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

/// Sparse vector with strictly increasing indices and no stored zeros.
struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<fe_t> value;

  std::size_t size() const { return index.size(); }
  bool empty() const { return index.empty(); }
  void push(std::uint32_t i, fe_t v) {
    index.push_back(i);
    value.push_back(v);
  }
  fe_t at(std::uint32_t i) const;
  bool operator==(const SparseVector&) const = default;
};

/// Accumulates `(index, value)` pairs in any order and emits a canonical
/// SparseVector (sorted, duplicates summed, zeros dropped).
SparseVector make_sparse(std::vector<std::pair<std::uint32_t, fe_t>> terms, const PrimeField& f);

/// `y += c * x` over the field.
void axpy(SparseVector& y, fe_t c, const SparseVector& x, const PrimeField& f);

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  fe_t value;
};

/// Immutable column-compressed matrix over a prime field.
class SparseMatrix {
 public:
  SparseMatrix() : SparseMatrix(PrimeField{}, 0, 0) {}
  SparseMatrix(PrimeField field, std::size_t n_rows, std::size_t n_cols);

  /// Duplicated (row, col) pairs are summed; zero results are dropped.
  /// Out-of-range indices or unreduced values raise input_error.
  static SparseMatrix from_triplets(PrimeField field, std::size_t n_rows, std::size_t n_cols,
                                    std::vector<Triplet> triplets);
  /// Columns must already be canonical sparse vectors with indices < n_rows.
  static SparseMatrix from_columns(PrimeField field, std::size_t n_rows,
                                   std::vector<SparseVector> columns);
  static SparseMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nnz() const { return row_idx_.size(); }

  std::span<const std::uint32_t> col_rows(std::size_t j) const {
    return {row_idx_.data() + col_start_[j], row_idx_.data() + col_start_[j + 1]};
  }
  std::span<const fe_t> col_values(std::size_t j) const {
    return {values_.data() + col_start_[j], values_.data() + col_start_[j + 1]};
  }
  SparseVector column(std::size_t j) const;

  std::vector<Triplet> triplets() const;
  SparseMatrix transpose() const;
  SparseVector apply(const SparseVector& x) const;
  bool is_zero() const { return row_idx_.empty(); }

  bool operator==(const SparseMatrix& o) const {
    return field_ == o.field_ && n_rows_ == o.n_rows_ && n_cols_ == o.n_cols_ &&
           col_start_ == o.col_start_ && row_idx_ == o.row_idx_ && values_ == o.values_;
  }

 private:
  PrimeField field_;
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<std::size_t> col_start_;
  std::vector<std::uint32_t> row_idx_;
  std::vector<fe_t> values_;
};

/// Exact product `a * b`; shapes must chain.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace koszul
