#include <algorithm>
#include <cstdint>

#include "koszul/rank.hpp"

namespace koszul {

namespace {

// row[j] += g * piv[j] for j in [from, n). Values stay below p^2 < 2^32 before
// reduction because p < 2^16. A compile-time modulus lets the compiler turn the
// remainder into multiply-shift and vectorise the loop.
template <std::uint32_t P>
void axpy_row(fe_t* __restrict row, const fe_t* __restrict piv, fe_t g, std::size_t from,
              std::size_t n) {
  for (std::size_t j = from; j < n; ++j) row[j] = (row[j] + g * piv[j]) % P;
}

void axpy_row_dyn(fe_t* __restrict row, const fe_t* __restrict piv, fe_t g, std::size_t from,
                  std::size_t n, std::uint32_t p) {
  for (std::size_t j = from; j < n; ++j) row[j] = (row[j] + g * piv[j]) % p;
}

template <class RowOp>
std::size_t eliminate(std::vector<fe_t>& a, std::size_t n_rows, std::size_t n_cols,
                      const PrimeField& f, RowOp op) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_cols && r < n_rows; ++c) {
    std::size_t piv = n_rows;
    for (std::size_t i = r; i < n_rows; ++i)
      if (a[i * n_cols + c]) {
        piv = i;
        break;
      }
    if (piv == n_rows) continue;
    if (piv != r)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * n_cols + c),
                       a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * n_cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * n_cols + c));
    const fe_t* prow = a.data() + r * n_cols;
    const fe_t inv = f.inv(prow[c]);
    const auto lo = static_cast<std::int64_t>(r + 1);
    const auto hi = static_cast<std::int64_t>(n_rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = lo; i < hi; ++i) {
      fe_t* row = a.data() + static_cast<std::size_t>(i) * n_cols;
      fe_t x = row[c];
      if (!x) continue;
      fe_t g = f.neg(f.mul(x, inv));
      op(row, prow, g, c + 1, n_cols);
      row[c] = 0;
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t dense_rank(std::vector<fe_t>& a, std::size_t n_rows, std::size_t n_cols,
                       const PrimeField& f) {
  if (n_rows == 0 || n_cols == 0) return 0;
  switch (f.modulus()) {
    case PrimeField::kDefaultPrime:
      return eliminate(a, n_rows, n_cols, f, axpy_row<PrimeField::kDefaultPrime>);
    case PrimeField::kAlternatePrime:
      return eliminate(a, n_rows, n_cols, f, axpy_row<PrimeField::kAlternatePrime>);
    default: {
      const std::uint32_t p = f.modulus();
      return eliminate(a, n_rows, n_cols, f,
                       [p](fe_t* row, const fe_t* piv, fe_t g, std::size_t from, std::size_t n) {
                         axpy_row_dyn(row, piv, g, from, n, p);
                       });
    }
  }
}

std::size_t rank_reference(const SparseMatrix& m) {
  const std::size_t n_rows = m.rows(), n_cols = m.cols();
  if (n_rows == 0 || n_cols == 0) return 0;
  const PrimeField& f = m.field();
  std::vector<fe_t> a(n_rows * n_cols, 0);
  for (std::size_t j = 0; j < n_cols; ++j) {
    auto rows = m.col_rows(j);
    auto vals = m.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) a[rows[k] * n_cols + j] = vals[k];
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_cols && r < n_rows; ++c) {
    std::size_t piv = r;
    while (piv < n_rows && a[piv * n_cols + c] == 0) ++piv;
    if (piv == n_rows) continue;
    for (std::size_t j = 0; j < n_cols; ++j) std::swap(a[piv * n_cols + j], a[r * n_cols + j]);
    fe_t inv = f.inv(a[r * n_cols + c]);
    for (std::size_t i = r + 1; i < n_rows; ++i) {
      fe_t x = a[i * n_cols + c];
      if (!x) continue;
      fe_t g = f.mul(x, inv);
      for (std::size_t j = c; j < n_cols; ++j)
        a[i * n_cols + j] = f.sub(a[i * n_cols + j], f.mul(g, a[r * n_cols + j]));
    }
    ++r;
  }
  return r;
}

}  // namespace koszul
