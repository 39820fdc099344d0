#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "koszul/exterior.hpp"
#include "koszul/geometry.hpp"
#include "koszul/rank.hpp"

namespace koszul {

/// The Koszul differential
///   d(v_{s_0} ^ ... ^ v_{s_p} (x) m) = sum_k (-1)^k v_{s_0} ^ .. ^ v_{s_k}-hat ^ .. ^ v_{s_p} (x) v_{s_k} m
/// from wedge^{p+1} V (x) M_q to wedge^p V (x) M_{q+1}. Columns are indexed by
/// (colex rank of the (p+1)-subset) * dim M_q + basis index, rows likewise.
/// Subsets are written with increasing indices.
SparseMatrix koszul_differential(const SectionSystem& sys, int p, int q);

/// Exact number of stored entries koszul_differential(sys, p, q) would have
/// before cancellation (an upper bound on its nnz).
std::uint64_t koszul_differential_entries(const SectionSystem& sys, int p, int q);

/// One Koszul cohomology group: the middle of
///   wedge^{p+1} V (x) M_{q-1} -> wedge^p V (x) M_q -> wedge^{p-1} V (x) M_{q+1}.
struct KoszulCell {
  int p = 0;
  int q = 0;
  std::uint64_t dim_left = 0;
  std::uint64_t dim_middle = 0;
  std::uint64_t dim_right = 0;
  std::uint64_t rank_in = 0;
  std::uint64_t rank_out = 0;
  std::uint64_t dim_k = 0;

  bool operator==(const KoszulCell&) const = default;
};

struct CellKey {
  std::uint64_t system_hash = 0;
  int p = 0;
  int q = 0;
  std::uint32_t prime = 0;
  auto operator<=>(const CellKey&) const = default;
};

/// Persistent backing store for computed cells (see the cli cache).
class CellStore {
 public:
  virtual ~CellStore() = default;
  virtual std::optional<KoszulCell> load(const CellKey& key) = 0;
  virtual void save(const CellKey& key, const KoszulCell& cell) = 0;
};

struct EngineOptions {
  /// Largest estimated differential size (stored entries of the in and out
  /// maps together) a cell may build.
  std::uint64_t cap = 50'000'000;
  EliminationOptions elimination;
};

struct EngineStats {
  std::uint64_t cells_computed = 0;
  std::uint64_t cells_from_memory = 0;
  std::uint64_t cells_from_store = 0;
};

struct BettiTable {
  std::string description;
  std::uint32_t prime = 0;
  std::uint64_t system_hash = 0;
  std::size_t v_dim = 0;
  int p_lo = 0, p_hi = 0, q_lo = 0, q_hi = 0;
  std::map<std::pair<int, int>, KoszulCell> cells;
  /// Cells that could not be evaluated, with the reason (resource cap).
  std::map<std::pair<int, int>, std::string> gaps;

  /// dim K_{p,q}, or nullopt for gaps and cells outside the table.
  std::optional<std::uint64_t> at(int p, int q) const;
};

/// Memoising evaluator of Koszul cells. Cells are pure functions of an
/// immutable SectionSystem; the memo is the only shared state and is guarded
/// by a mutex, so concurrent evaluation is safe and scheduling-independent.
class KoszulEngine {
 public:
  explicit KoszulEngine(EngineOptions opt = {}, std::shared_ptr<CellStore> store = nullptr);

  const EngineOptions& options() const { return opt_; }

  KoszulCell cell(const SectionSystem& sys, int p, int q);
  /// Rank of koszul_differential(sys, p, q), memoised.
  std::uint64_t differential_rank(const SectionSystem& sys, int p, int q);

  /// Cells evaluated with OpenMP over the grid; cap violations become gaps.
  BettiTable betti_table(const SectionSystem& sys, int p_lo, int p_hi, int q_lo, int q_hi);

  EngineStats stats() const;
  /// Wall-clock seconds of every cell computed (not loaded) by this engine.
  std::map<CellKey, double> timings() const;

 private:
  EngineOptions opt_;
  std::shared_ptr<CellStore> store_;
  mutable std::mutex mu_;
  std::map<CellKey, KoszulCell> cells_;
  std::map<CellKey, std::uint64_t> ranks_;
  std::map<CellKey, double> timings_;
  EngineStats stats_;
};

KoszulCell compute_cell(const SectionSystem& sys, int p, int q, const EngineOptions& opt = {});
BettiTable betti_table(const SectionSystem& sys, int p_lo, int p_hi, int q_lo, int q_hi,
                       const EngineOptions& opt = {});

/// K_{l-q, q}(B^p, V) on a module system from build_module_system.
KoszulCell koszul_of_module(KoszulEngine& engine, const SectionSystem& module_sys, int l, int q);

/// d o d = 0 for the pair wedge^{p+1}(x)M_q -> wedge^p(x)M_{q+1} -> wedge^{p-1}(x)M_{q+2}.
bool differential_squares_to_zero(const SectionSystem& sys, int p, int q);

}  // namespace koszul
