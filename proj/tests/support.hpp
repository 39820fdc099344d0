// Generators and independent oracles shared by the test binaries. Nothing here
// calls into the library's elimination code.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "koszul/field.hpp"
#include "koszul/graded_ring.hpp"
#include "koszul/sparse_matrix.hpp"

namespace testing {

using koszul::fe_t;
using koszul::PrimeField;
using koszul::SparseMatrix;
using koszul::Triplet;

/// Rank by textbook row reduction on a dense copy.
inline std::size_t oracle_rank(const SparseMatrix& m) {
  const std::uint64_t p = m.field().modulus();
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
  for (const auto& t : m.triplets()) a[t.row][t.col] = t.value;
  auto inverse = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t s = inverse(a[r][c]);
    for (auto& x : a[r]) x = x * s % p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
    }
    ++r;
  }
  return r;
}

inline std::uint64_t choose(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Random sparse matrix with roughly `density` of its entries nonzero.
inline SparseMatrix random_matrix(std::mt19937_64& rng, const PrimeField& f, std::size_t rows,
                                  std::size_t cols, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (u(rng) < density)
        t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                     static_cast<fe_t>(1 + rng() % (f.modulus() - 1))});
  return SparseMatrix::from_triplets(f, rows, cols, std::move(t));
}

/// Product of a random rows x k and k x cols matrix: rank at most k.
inline SparseMatrix random_low_rank(std::mt19937_64& rng, const PrimeField& f, std::size_t rows,
                                    std::size_t cols, std::size_t k) {
  SparseMatrix a = random_matrix(rng, f, rows, k, 0.6);
  SparseMatrix b = random_matrix(rng, f, k, cols, 0.6);
  return koszul::multiply(a, b);
}

/// Random homogeneous polynomial with small integer coefficients on a random
/// subset of monomials (never zero).
inline koszul::Polynomial random_polynomial(std::mt19937_64& rng, int n_vars, int degree) {
  auto basis = koszul::monomial_basis(n_vars, degree);
  std::vector<std::pair<koszul::Monomial, std::int64_t>> terms;
  for (const auto& m : basis->monomials())
    if (rng() % 3 == 0) terms.emplace_back(m, static_cast<std::int64_t>(rng() % 19) - 9);
  terms.emplace_back((*basis)[rng() % basis->size()], 1 + static_cast<std::int64_t>(rng() % 7));
  koszul::Polynomial p(n_vars, terms);
  if (p.is_zero()) return koszul::Polynomial(n_vars, {{(*basis)[0], 1}});
  return p;
}

}  // namespace testing
