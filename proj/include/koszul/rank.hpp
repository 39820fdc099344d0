#pragma once

#include <cstddef>
#include <vector>

#include "koszul/sparse_matrix.hpp"

namespace koszul {

struct RankResult {
  std::size_t rank = 0;
  /// Canonical null-space basis: one vector per non-pivot column `j`, equal to
  /// `e_j` minus the RREF entries of column `j` placed at the pivot columns.
  std::vector<SparseVector> kernel_basis;
};

/// Reduced row echelon form of a row space. Pivot columns ascend; each row is
/// normalised to 1 at its pivot and is zero at every other pivot column.
struct ReducedEchelon {
  std::size_t width = 0;
  std::vector<SparseVector> rows;
  std::vector<std::uint32_t> pivots;
};

ReducedEchelon reduced_row_echelon(const std::vector<SparseVector>& rows, std::size_t width,
                                   const PrimeField& f);

/// Exact rank and canonical kernel basis. Deterministic: the RREF of a matrix is
/// unique, so repeated runs return identical bases in identical order.
RankResult rank_kernel(const SparseMatrix& m);

struct EliminationOptions {
  /// Switch to the dense kernel once the active block is this full.
  double dense_threshold = 0.20;
  /// Largest active block (entries) the dense kernel may allocate.
  std::size_t dense_limit = std::size_t{1} << 28;
  /// Candidate pivot columns examined per Markowitz step.
  std::size_t candidates = 4;
};

/// Rank by Markowitz-ordered sparse elimination with a dense OpenMP tail.
std::size_t rank(const SparseMatrix& m, const EliminationOptions& opt = {});

/// Serial dense Gaussian elimination; the reference the fast path is tested against.
std::size_t rank_reference(const SparseMatrix& m);

/// Dense rank of a row-major `n_rows x n_cols` block; destroys `a`. OpenMP-parallel
/// over the rows being updated.
std::size_t dense_rank(std::vector<fe_t>& a, std::size_t n_rows, std::size_t n_cols,
                       const PrimeField& f);

struct CrossPrimeRank {
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  bool agree = false;
};

/// Ranks of one integral construction reduced modulo two primes. Disagreement
/// is reported, not resolved.
CrossPrimeRank cross_prime_rank(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace koszul
