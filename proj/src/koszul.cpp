#include "koszul/koszul.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>

namespace koszul {

namespace {

std::string cell_name(int p, int q) {
  return "K_{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

}  // namespace

std::uint64_t koszul_differential_entries(const SectionSystem& sys, int p, int q) {
  if (p < 0 || !sys.has_multiplication(q)) return 0;
  const int n = static_cast<int>(sys.v_dim());
  // Every v_i occurs in C(n-1, p) of the (p+1)-subsets.
  return binomial(n - 1, p) * sys.multiplication_nnz(q);
}

SparseMatrix koszul_differential(const SectionSystem& sys, int p, int q) {
  const int n = static_cast<int>(sys.v_dim());
  const PrimeField& f = sys.field();
  const std::uint64_t dim_q = sys.dim(q);
  const std::uint64_t dim_q1 = sys.dim(q + 1);
  const std::uint64_t n_cols = binomial(n, p + 1) * dim_q;
  const std::uint64_t n_rows = (p < 0 ? 0 : binomial(n, p)) * dim_q1;
  if (n_cols > std::numeric_limits<std::uint32_t>::max() ||
      n_rows > std::numeric_limits<std::uint32_t>::max())
    throw resource_error("differential for " + cell_name(p, q) + " exceeds 32-bit indexing");
  if (n_cols == 0 || n_rows == 0) return SparseMatrix(f, n_rows, n_cols);
  if (!sys.has_multiplication(q))
    throw range_error("multiplication out of M_" + std::to_string(q) + " is not available");

  ExteriorBasis src(n, p + 1), dst(n, p);
  std::vector<int> subset, face(static_cast<std::size_t>(p));
  std::vector<std::pair<std::uint64_t, int>> blocks;
  std::vector<SparseVector> cols;
  cols.reserve(n_cols);
  for (std::uint64_t r = 0; r < src.size(); ++r) {
    src.unrank(r, subset);
    blocks.clear();
    for (int k = 0; k <= p; ++k) {
      for (int i = 0, t = 0; i <= p; ++i)
        if (i != k) face[static_cast<std::size_t>(t++)] = subset[static_cast<std::size_t>(i)];
      blocks.emplace_back(dst.rank(face), k);
    }
    std::sort(blocks.begin(), blocks.end());
    for (std::uint64_t j = 0; j < dim_q; ++j) {
      SparseVector col;
      for (const auto& [face_rank, k] : blocks) {
        const SparseMatrix& a = sys.multiplication(q, static_cast<std::size_t>(subset[static_cast<std::size_t>(k)]));
        auto rows = a.col_rows(j);
        auto vals = a.col_values(j);
        const auto base = static_cast<std::uint32_t>(face_rank * dim_q1);
        for (std::size_t t = 0; t < rows.size(); ++t)
          col.push(base + rows[t], (k & 1) ? f.neg(vals[t]) : vals[t]);
      }
      cols.push_back(std::move(col));
    }
  }
  return SparseMatrix::from_columns(f, n_rows, std::move(cols));
}

std::optional<std::uint64_t> BettiTable::at(int p, int q) const {
  auto it = cells.find({p, q});
  if (it == cells.end()) return std::nullopt;
  return it->second.dim_k;
}

KoszulEngine::KoszulEngine(EngineOptions opt, std::shared_ptr<CellStore> store)
    : opt_(opt), store_(std::move(store)) {}

EngineStats KoszulEngine::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

std::map<CellKey, double> KoszulEngine::timings() const {
  std::lock_guard<std::mutex> lock(mu_);
  return timings_;
}

std::uint64_t KoszulEngine::differential_rank(const SectionSystem& sys, int p, int q) {
  CellKey key{sys.hash(), p, q, sys.field().modulus()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ranks_.find(key);
    if (it != ranks_.end()) return it->second;
  }
  std::uint64_t r = rank(koszul_differential(sys, p, q), opt_.elimination);
  std::lock_guard<std::mutex> lock(mu_);
  ranks_.emplace(key, r);
  return r;
}

KoszulCell KoszulEngine::cell(const SectionSystem& sys, int p, int q) {
  if (p < 0) throw range_error("negative wedge degree in " + cell_name(p, q));
  CellKey key{sys.hash(), p, q, sys.field().modulus()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cells_.find(key);
    if (it != cells_.end()) {
      ++stats_.cells_from_memory;
      return it->second;
    }
  }
  const int n = static_cast<int>(sys.v_dim());
  KoszulCell c;
  c.p = p;
  c.q = q;
  // dim() raises range_error when an adjacent piece is missing.
  c.dim_left = binomial(n, p + 1) * sys.dim(q - 1);
  c.dim_middle = binomial(n, p) * sys.dim(q);
  c.dim_right = binomial(n, p - 1) * sys.dim(q + 1);

  if (store_) {
    if (auto stored = store_->load(key); stored && stored->p == p && stored->q == q &&
                                         stored->dim_middle == c.dim_middle) {
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.cells_from_store;
      cells_.emplace(key, *stored);
      return *stored;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  const bool need_in = c.dim_left && c.dim_middle;
  const bool need_out = c.dim_middle && c.dim_right;
  const std::uint64_t estimate = (need_in ? koszul_differential_entries(sys, p, q - 1) : 0) +
                                 (need_out ? koszul_differential_entries(sys, p - 1, q) : 0);
  if (estimate > opt_.cap)
    throw resource_error(cell_name(p, q) + ": estimated " + std::to_string(estimate) +
                         " differential entries exceed the cap " + std::to_string(opt_.cap));
  c.rank_in = need_in ? differential_rank(sys, p, q - 1) : 0;
  c.rank_out = need_out ? differential_rank(sys, p - 1, q) : 0;
  if (c.rank_in + c.rank_out > c.dim_middle)
    throw internal_error(cell_name(p, q) + ": ranks exceed the middle dimension");
  c.dim_k = c.dim_middle - c.rank_in - c.rank_out;

  if (store_) store_->save(key, c);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::lock_guard<std::mutex> lock(mu_);
  timings_[key] = elapsed.count();
  ++stats_.cells_computed;
  cells_.emplace(key, c);
  return c;
}

BettiTable KoszulEngine::betti_table(const SectionSystem& sys, int p_lo, int p_hi, int q_lo,
                                     int q_hi) {
  BettiTable t;
  t.description = sys.description();
  t.prime = sys.field().modulus();
  t.system_hash = sys.hash();
  t.v_dim = sys.v_dim();
  t.p_lo = p_lo;
  t.p_hi = p_hi;
  t.q_lo = q_lo;
  t.q_hi = q_hi;
  std::vector<std::pair<int, int>> grid;
  for (int q = q_lo; q <= q_hi; ++q)
    for (int p = p_lo; p <= p_hi; ++p) grid.emplace_back(p, q);
  std::vector<std::optional<KoszulCell>> out(grid.size());
  std::vector<std::string> gap(grid.size());
  std::exception_ptr failure;
  std::mutex fail_mu;
  const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = cell(sys, grid[idx].first, grid[idx].second);
    } catch (const resource_error& e) {
      gap[idx] = e.what();
    } catch (...) {
      std::lock_guard<std::mutex> lock(fail_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (out[i])
      t.cells.emplace(grid[i], *out[i]);
    else
      t.gaps.emplace(grid[i], gap[i]);
  }
  return t;
}

KoszulCell compute_cell(const SectionSystem& sys, int p, int q, const EngineOptions& opt) {
  KoszulEngine engine(opt);
  return engine.cell(sys, p, q);
}

BettiTable betti_table(const SectionSystem& sys, int p_lo, int p_hi, int q_lo, int q_hi,
                       const EngineOptions& opt) {
  KoszulEngine engine(opt);
  return engine.betti_table(sys, p_lo, p_hi, q_lo, q_hi);
}

KoszulCell koszul_of_module(KoszulEngine& engine, const SectionSystem& module_sys, int l, int q) {
  return engine.cell(module_sys, l - q, q);
}

bool differential_squares_to_zero(const SectionSystem& sys, int p, int q) {
  SparseMatrix first = koszul_differential(sys, p, q);
  SparseMatrix second = koszul_differential(sys, p - 1, q + 1);
  return multiply(second, first).is_zero();
}

}  // namespace koszul
