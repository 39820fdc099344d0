#include "koszul/sparse_matrix.hpp"

#include <algorithm>
#include <string>

namespace koszul {

fe_t SparseVector::at(std::uint32_t i) const {
  auto it = std::lower_bound(index.begin(), index.end(), i);
  if (it == index.end() || *it != i) return 0;
  return value[static_cast<std::size_t>(it - index.begin())];
}

SparseVector make_sparse(std::vector<std::pair<std::uint32_t, fe_t>> terms, const PrimeField& f) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  out.index.reserve(terms.size());
  out.value.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    std::uint32_t idx = terms[i].first;
    fe_t acc = 0;
    for (; i < terms.size() && terms[i].first == idx; ++i) acc = f.add(acc, terms[i].second);
    if (acc != 0) out.push(idx, acc);
  }
  return out;
}

void axpy(SparseVector& y, fe_t c, const SparseVector& x, const PrimeField& f) {
  if (c == 0 || x.empty()) return;
  SparseVector out;
  out.index.reserve(y.size() + x.size());
  out.value.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y.index[i] < x.index[j])) {
      out.push(y.index[i], y.value[i]);
      ++i;
    } else if (i == y.size() || x.index[j] < y.index[i]) {
      out.push(x.index[j], f.mul(c, x.value[j]));
      ++j;
    } else {
      fe_t v = f.add(y.value[i], f.mul(c, x.value[j]));
      if (v) out.push(y.index[i], v);
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseMatrix::SparseMatrix(PrimeField field, std::size_t n_rows, std::size_t n_cols)
    : field_(field), n_rows_(n_rows), n_cols_(n_cols), col_start_(n_cols + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(PrimeField field, std::size_t n_rows, std::size_t n_cols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= n_rows || t.col >= n_cols)
      throw input_error("triplet index (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                        ") outside " + std::to_string(n_rows) + "x" + std::to_string(n_cols));
    if (t.value >= field.modulus()) throw input_error("triplet value not reduced mod p");
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseMatrix m(field, n_rows, n_cols);
  m.row_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t k = 0;
  for (std::size_t j = 0; j < n_cols; ++j) {
    m.col_start_[j] = m.row_idx_.size();
    while (k < triplets.size() && triplets[k].col == j) {
      std::uint32_t r = triplets[k].row;
      fe_t acc = 0;
      for (; k < triplets.size() && triplets[k].col == j && triplets[k].row == r; ++k)
        acc = field.add(acc, triplets[k].value);
      if (acc) {
        m.row_idx_.push_back(r);
        m.values_.push_back(acc);
      }
    }
  }
  m.col_start_[n_cols] = m.row_idx_.size();
  return m;
}

SparseMatrix SparseMatrix::from_columns(PrimeField field, std::size_t n_rows,
                                        std::vector<SparseVector> columns) {
  SparseMatrix m(field, n_rows, columns.size());
  std::size_t total = 0;
  for (const auto& c : columns) total += c.size();
  m.row_idx_.reserve(total);
  m.values_.reserve(total);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    m.col_start_[j] = m.row_idx_.size();
    const auto& c = columns[j];
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c.index[k] >= n_rows || (k > 0 && c.index[k] <= c.index[k - 1]) || c.value[k] == 0 ||
          c.value[k] >= field.modulus())
        throw input_error("column " + std::to_string(j) + " is not a canonical sparse vector");
      m.row_idx_.push_back(c.index[k]);
      m.values_.push_back(c.value[k]);
    }
  }
  m.col_start_[columns.size()] = m.row_idx_.size();
  return m;
}

SparseMatrix SparseMatrix::identity(PrimeField field, std::size_t n) {
  std::vector<SparseVector> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i].push(static_cast<std::uint32_t>(i), 1);
  return from_columns(field, n, std::move(cols));
}

SparseVector SparseMatrix::column(std::size_t j) const {
  SparseVector v;
  auto r = col_rows(j);
  auto x = col_values(j);
  v.index.assign(r.begin(), r.end());
  v.value.assign(x.begin(), x.end());
  return v;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t j = 0; j < n_cols_; ++j)
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
      out.push_back({row_idx_[k], static_cast<std::uint32_t>(j), values_[k]});
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, n_cols_, n_rows_);
  std::vector<std::size_t> count(n_rows_ + 1, 0);
  for (auto r : row_idx_) ++count[r + 1];
  for (std::size_t i = 0; i < n_rows_; ++i) count[i + 1] += count[i];
  t.col_start_ = count;
  t.row_idx_.resize(nnz());
  t.values_.resize(nnz());
  for (std::size_t j = 0; j < n_cols_; ++j)
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      std::size_t pos = count[row_idx_[k]]++;
      t.row_idx_[pos] = static_cast<std::uint32_t>(j);
      t.values_[pos] = values_[k];
    }
  return t;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  std::vector<std::pair<std::uint32_t, fe_t>> acc;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x.index[k] >= n_cols_) throw input_error("vector index outside matrix width");
    auto r = col_rows(x.index[k]);
    auto v = col_values(x.index[k]);
    for (std::size_t t = 0; t < r.size(); ++t) acc.emplace_back(r[t], field_.mul(v[t], x.value[k]));
  }
  return make_sparse(std::move(acc), field_);
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows())
    throw input_error("shape mismatch in multiply: " + std::to_string(a.cols()) + " vs " +
                      std::to_string(b.rows()));
  if (!(a.field() == b.field())) throw input_error("field mismatch in multiply");
  std::vector<SparseVector> cols(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) cols[j] = a.apply(b.column(j));
  return SparseMatrix::from_columns(a.field(), a.rows(), std::move(cols));
}

}  // namespace koszul
