#include "koszul/exterior.hpp"

#include <algorithm>

#include "koszul/errors.hpp"

namespace koszul {

BinomialTable::BinomialTable(int n, int k)
    : n_(n), stride_(static_cast<std::size_t>(std::max(k, 0)) + 1),
      table_(static_cast<std::size_t>(std::max(n, 0) + 1) * stride_, 0) {
  for (int i = 0; i <= n; ++i) {
    auto row = static_cast<std::size_t>(i) * stride_;
    table_[row] = 1;
    for (int j = 1; j <= std::min(i, k); ++j)
      table_[row + static_cast<std::size_t>(j)] =
          table_[row - stride_ + static_cast<std::size_t>(j) - 1] +
          (j <= i - 1 ? table_[row - stride_ + static_cast<std::size_t>(j)] : 0);
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

ExteriorBasis::ExteriorBasis(int n, int p)
    : n_(n), p_(p), size_(binomial(n, p)), binom_(std::max(n, 0), std::max(p, 0) + 1) {
  if (n < 0) throw input_error("exterior power of a space of negative dimension");
}

std::uint64_t ExteriorBasis::rank(std::span<const int> subset) const {
  if (static_cast<int>(subset.size()) != p_) throw input_error("subset has the wrong size");
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= n_ || (i > 0 && subset[i] <= subset[i - 1]))
      throw input_error("subset is not strictly increasing inside [0, n)");
    r += binom_(subset[i], static_cast<int>(i) + 1);
  }
  return r;
}

void ExteriorBasis::unrank(std::uint64_t r, std::vector<int>& out) const {
  if (r >= size_) throw input_error("exterior rank out of range");
  out.resize(static_cast<std::size_t>(p_));
  int hi = n_ - 1;
  for (int i = p_ - 1; i >= 0; --i) {
    while (binom_(hi, i + 1) > r) --hi;
    out[static_cast<std::size_t>(i)] = hi;
    r -= binom_(hi, i + 1);
    --hi;
  }
}

}  // namespace koszul
