#include <algorithm>
#include <cstdint>
#include <limits>

#include "koszul/rank.hpp"

namespace koszul {

namespace {

// Sparse elimination over the columns of a matrix. "Positions" are row indices
// of the input; every column is a vector to be reduced. Pivots are chosen by
// the Markowitz cost (vector length - 1) * (position count - 1), with lazily
// maintained occurrence lists and count buckets.
class MarkowitzRank {
 public:
  MarkowitzRank(const SparseMatrix& m, const EliminationOptions& opt)
      : f_(m.field()), opt_(opt), count_(m.rows(), 0), occ_(m.rows()) {
    vecs_.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.col_rows(j).empty()) continue;
      auto id = static_cast<std::uint32_t>(vecs_.size());
      vecs_.push_back(m.column(j));
      alive_.push_back(1);
      for (auto r : vecs_.back().index) {
        if (count_[r]++ == 0) ++live_positions_;
        occ_[r].push_back(id);
      }
      active_nnz_ += vecs_.back().size();
    }
    alive_count_ = vecs_.size();
    for (std::uint32_t r = 0; r < count_.size(); ++r)
      if (count_[r]) push_bucket(r);
  }

  std::size_t run() {
    while (alive_count_ > 0) {
      if (should_go_dense()) return rank_ + dense_tail();
      std::uint32_t pos = 0, vec = 0;
      if (!select_pivot(pos, vec)) break;
      eliminate(vec, pos);
    }
    return rank_;
  }

 private:
  bool contains(std::uint32_t v, std::uint32_t pos) const {
    const auto& idx = vecs_[v].index;
    return std::binary_search(idx.begin(), idx.end(), pos);
  }

  void push_bucket(std::uint32_t pos) {
    std::uint32_t c = count_[pos];
    if (c == 0) return;
    if (buckets_.size() <= c) buckets_.resize(c + 1);
    buckets_[c].push_back(pos);
    min_bucket_ = std::min<std::size_t>(min_bucket_, c);
  }

  // Drops stale and duplicate entries from occ_[pos].
  std::vector<std::uint32_t>& clean_occ(std::uint32_t pos) {
    auto& list = occ_[pos];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](std::uint32_t v) { return !alive_[v] || !contains(v, pos); }),
               list.end());
    return list;
  }

  bool pop_position(std::uint32_t& pos) {
    while (min_bucket_ < buckets_.size()) {
      auto& b = buckets_[min_bucket_];
      while (!b.empty()) {
        std::uint32_t p = b.back();
        b.pop_back();
        if (count_[p] == min_bucket_) {
          pos = p;
          return true;
        }
      }
      ++min_bucket_;
    }
    return false;
  }

  bool select_pivot(std::uint32_t& best_pos, std::uint32_t& best_vec) {
    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint32_t> seen;
    bool found = false;
    for (std::size_t k = 0; k < std::max<std::size_t>(1, opt_.candidates); ++k) {
      std::uint32_t pos;
      if (!pop_position(pos)) break;
      seen.push_back(pos);
      auto& list = clean_occ(pos);
      std::uint64_t cc = count_[pos] - 1;
      for (auto v : list) {
        std::uint64_t cost = (vecs_[v].size() - 1) * cc;
        if (cost < best_cost) {
          best_cost = cost;
          best_pos = pos;
          best_vec = v;
          found = true;
        }
      }
      if (best_cost == 0) break;
    }
    // Push back the positions that were inspected but not used.
    for (auto p : seen)
      if (!(found && p == best_pos)) push_bucket(p);
    return found;
  }

  void dec(std::uint32_t pos) {
    if (--count_[pos] == 0) {
      --live_positions_;
      occ_[pos].clear();
    } else {
      push_bucket(pos);
    }
  }
  void inc(std::uint32_t pos, std::uint32_t v) {
    if (count_[pos]++ == 0) ++live_positions_;
    occ_[pos].push_back(v);
    push_bucket(pos);
  }

  void eliminate(std::uint32_t pv, std::uint32_t pos) {
    const SparseVector& piv = vecs_[pv];
    const fe_t inv = f_.inv(piv.at(pos));
    std::vector<std::uint32_t> targets = occ_[pos];  // already cleaned in select_pivot
    SparseVector merged;
    for (auto w : targets) {
      if (w == pv) continue;
      SparseVector& y = vecs_[w];
      const fe_t g = f_.neg(f_.mul(y.at(pos), inv));
      merged.index.clear();
      merged.value.clear();
      merged.index.reserve(y.size() + piv.size());
      merged.value.reserve(y.size() + piv.size());
      std::size_t i = 0, j = 0;
      while (i < y.size() || j < piv.size()) {
        if (j == piv.size() || (i < y.size() && y.index[i] < piv.index[j])) {
          merged.push(y.index[i], y.value[i]);
          ++i;
        } else if (i == y.size() || piv.index[j] < y.index[i]) {
          merged.push(piv.index[j], f_.mul(g, piv.value[j]));
          inc(piv.index[j], w);
          ++active_nnz_;
          ++j;
        } else {
          fe_t v = f_.add(y.value[i], f_.mul(g, piv.value[j]));
          if (v) {
            merged.push(y.index[i], v);
          } else {
            dec(y.index[i]);
            --active_nnz_;
          }
          ++i;
          ++j;
        }
      }
      std::swap(y, merged);
      if (y.empty()) {
        alive_[w] = 0;
        --alive_count_;
      }
    }
    for (auto r : piv.index) dec(r);
    active_nnz_ -= piv.size();
    alive_[pv] = 0;
    --alive_count_;
    vecs_[pv] = SparseVector{};
    ++rank_;
  }

  bool should_go_dense() const {
    const double block = static_cast<double>(alive_count_) * static_cast<double>(live_positions_);
    if (block > static_cast<double>(opt_.dense_limit)) return false;
    return static_cast<double>(active_nnz_) > opt_.dense_threshold * block;
  }

  std::size_t dense_tail() {
    std::vector<std::uint32_t> col_of(count_.size(), 0);
    std::size_t n_cols = 0;
    for (std::size_t r = 0; r < count_.size(); ++r)
      if (count_[r]) col_of[r] = static_cast<std::uint32_t>(n_cols++);
    std::vector<fe_t> a(alive_count_ * n_cols, 0);
    std::size_t row = 0;
    for (std::size_t v = 0; v < vecs_.size(); ++v) {
      if (!alive_[v]) continue;
      const auto& x = vecs_[v];
      for (std::size_t k = 0; k < x.size(); ++k) a[row * n_cols + col_of[x.index[k]]] = x.value[k];
      ++row;
    }
    return dense_rank(a, alive_count_, n_cols, f_);
  }

  PrimeField f_;
  EliminationOptions opt_;
  std::vector<SparseVector> vecs_;
  std::vector<char> alive_;
  std::vector<std::uint32_t> count_;
  std::vector<std::vector<std::uint32_t>> occ_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::size_t min_bucket_ = 0;
  std::size_t alive_count_ = 0;
  std::size_t live_positions_ = 0;
  std::size_t active_nnz_ = 0;
  std::size_t rank_ = 0;
};

}  // namespace

std::size_t rank(const SparseMatrix& m, const EliminationOptions& opt) {
  if (m.is_zero()) return 0;
  return MarkowitzRank(m, opt).run();
}

}  // namespace koszul
