#include <algorithm>
#include <string>

#include "koszul/rank.hpp"

namespace koszul {

namespace {

// Dense scratch row with a touched-index list, so clearing costs O(nnz).
class Accumulator {
 public:
  explicit Accumulator(std::size_t width) : dense_(width, 0), mark_(width, 0) {}

  void load(const SparseVector& v) {
    for (std::size_t k = 0; k < v.size(); ++k) touch(v.index[k], v.value[k]);
  }
  void add_scaled(fe_t c, const SparseVector& v, const PrimeField& f) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::uint32_t i = v.index[k];
      if (!mark_[i]) {
        touch(i, f.mul(c, v.value[k]));
      } else {
        dense_[i] = f.add(dense_[i], f.mul(c, v.value[k]));
      }
    }
  }
  fe_t get(std::uint32_t i) const { return dense_[i]; }
  void set(std::uint32_t i, fe_t v) { dense_[i] = v; }
  // Touched indices in increasing order; may contain zeros.
  std::vector<std::uint32_t>& touched() { return touched_; }
  SparseVector extract() {
    std::sort(touched_.begin(), touched_.end());
    SparseVector out;
    for (auto i : touched_) {
      if (dense_[i]) out.push(i, dense_[i]);
      dense_[i] = 0;
      mark_[i] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  void touch(std::uint32_t i, fe_t v) {
    mark_[i] = 1;
    dense_[i] = v;
    touched_.push_back(i);
  }
  std::vector<fe_t> dense_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> touched_;
};

constexpr std::uint32_t kNoPivot = ~std::uint32_t{0};

}  // namespace

ReducedEchelon reduced_row_echelon(const std::vector<SparseVector>& rows, std::size_t width,
                                   const PrimeField& f) {
  ReducedEchelon out;
  out.width = width;
  std::vector<std::uint32_t> pivot_row(width, kNoPivot);
  std::vector<SparseVector> echelon;
  Accumulator acc(width);

  // Forward pass: every stored row has all entries at or after its pivot.
  for (const auto& r : rows) {
    if (!r.empty() && r.index.back() >= width)
      throw input_error("row index outside echelon width " + std::to_string(width));
    acc.load(r);
    // Scanning in increasing order; subtracting a pivot row only adds later columns.
    std::uint32_t lead = kNoPivot;
    for (std::uint32_t c = r.empty() ? static_cast<std::uint32_t>(width) : r.index.front();
         c < width; ++c) {
      fe_t v = acc.get(c);
      if (!v) continue;
      if (pivot_row[c] == kNoPivot) {
        lead = c;
        break;
      }
      acc.add_scaled(f.neg(v), echelon[pivot_row[c]], f);
      acc.set(c, 0);
    }
    SparseVector reduced = acc.extract();
    if (lead == kNoPivot) continue;
    fe_t s = f.inv(reduced.value.front());
    for (auto& v : reduced.value) v = f.mul(v, s);
    pivot_row[lead] = static_cast<std::uint32_t>(echelon.size());
    echelon.push_back(std::move(reduced));
  }

  // Back substitution in decreasing pivot order.
  std::vector<std::uint32_t> pivots;
  for (std::uint32_t c = 0; c < width; ++c)
    if (pivot_row[c] != kNoPivot) pivots.push_back(c);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    SparseVector& row = echelon[pivot_row[*it]];
    bool needs = false;
    for (std::size_t k = 1; k < row.size(); ++k)
      if (pivot_row[row.index[k]] != kNoPivot) needs = true;
    if (!needs) continue;
    acc.load(row);
    for (std::size_t k = 1; k < row.size(); ++k) {
      std::uint32_t c = row.index[k];
      if (pivot_row[c] == kNoPivot) continue;
      fe_t v = acc.get(c);
      if (!v) continue;
      acc.add_scaled(f.neg(v), echelon[pivot_row[c]], f);
      acc.set(c, 0);
    }
    row = acc.extract();
  }

  out.pivots = pivots;
  out.rows.reserve(pivots.size());
  for (auto c : pivots) out.rows.push_back(std::move(echelon[pivot_row[c]]));
  return out;
}

RankResult rank_kernel(const SparseMatrix& m) {
  SparseMatrix t = m.transpose();
  std::vector<SparseVector> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = t.column(i);
  ReducedEchelon e = reduced_row_echelon(rows, m.cols(), m.field());

  const PrimeField& f = m.field();
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : e.pivots) is_pivot[c] = 1;
  std::vector<std::uint32_t> slot(m.cols(), kNoPivot);
  RankResult out;
  out.rank = e.pivots.size();
  std::vector<std::vector<std::pair<std::uint32_t, fe_t>>> terms;
  for (std::uint32_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    slot[j] = static_cast<std::uint32_t>(terms.size());
    terms.push_back({{j, 1}});
  }
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    const auto& row = e.rows[k];
    for (std::size_t t2 = 1; t2 < row.size(); ++t2)
      terms[slot[row.index[t2]]].emplace_back(e.pivots[k], f.neg(row.value[t2]));
  }
  out.kernel_basis.reserve(terms.size());
  for (auto& t2 : terms) out.kernel_basis.push_back(make_sparse(std::move(t2), f));
  return out;
}

CrossPrimeRank cross_prime_rank(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw input_error("cross-prime rank: shape mismatch " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  CrossPrimeRank r;
  r.rank_a = rank(a);
  r.rank_b = rank(b);
  r.agree = r.rank_a == r.rank_b;
  return r;
}

}  // namespace koszul
