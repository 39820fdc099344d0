#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace koszul {

/// Binomial coefficients C(i, j) for 0 <= i <= n, 0 <= j <= k; zero outside.
class BinomialTable {
 public:
  BinomialTable(int n, int k);
  std::uint64_t operator()(int i, int j) const {
    if (i < 0 || j < 0 || j > i) return 0;
    return table_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(j)];
  }
  int max_n() const { return n_; }

 private:
  int n_;
  std::size_t stride_;
  std::vector<std::uint64_t> table_;
};

std::uint64_t binomial(int n, int k);

/// Basis of the p-th exterior power of an n-dimensional space: p-subsets of
/// [0, n) ranked in colexicographic order, rank(s) = sum_i C(s_i, i + 1).
class ExteriorBasis {
 public:
  ExteriorBasis(int n, int p);

  int n() const { return n_; }
  int p() const { return p_; }
  std::uint64_t size() const { return size_; }

  /// `subset` must be strictly increasing with entries in [0, n).
  std::uint64_t rank(std::span<const int> subset) const;
  /// Writes the subset of the given rank into `out` (resized to p).
  void unrank(std::uint64_t r, std::vector<int>& out) const;
  std::vector<int> unrank(std::uint64_t r) const {
    std::vector<int> s;
    unrank(r, s);
    return s;
  }

 private:
  int n_;
  int p_;
  std::uint64_t size_;
  BinomialTable binom_;
};

}  // namespace koszul
