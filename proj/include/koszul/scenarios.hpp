#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/geometry.hpp"
#include "koszul/koszul.hpp"

namespace koszul {

/// PASS and VIOLATION settle a binding claim; INFO records an observation
/// that is not a claim; GAP marks a claim whose cell was not evaluated.
enum class VerdictStatus { pass, violation, info, gap };
std::string to_string(VerdictStatus s);

/// One per-cell verdict. A PASS means the prediction is consistent at this
/// instance, never a proof.
struct Verdict {
  std::string claim;
  std::string table;     // name of the attached table holding the cell
  int p = 0;
  int q = 0;
  std::string predicted;
  std::optional<std::uint64_t> computed;
  VerdictStatus status = VerdictStatus::info;
};

struct NamedTable {
  std::string name;
  BettiTable table;
};

struct ScenarioResult {
  std::string id;
  std::uint32_t prime = 0;
  std::map<std::string, std::int64_t> parameters;
  std::map<std::string, std::int64_t> thresholds;
  std::vector<NamedTable> tables;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;

  const BettiTable* table(const std::string& name) const;
  bool has_violation() const;
  bool has_gap() const;
};

/// The n+2 coordinate hyperplanes of P^{n+1}.
UnionSpec cy_degenerate_fiber(int n);
/// P^n itself, one component without equations.
UnionSpec projective_space(int n);
/// One hypersurface of degree e in P^{n+1} with a seeded random equation.
UnionSpec smooth_hypersurface(int n, int e, std::uint64_t seed);
/// a seeded random quartics in P^3; component i uses seed + i.
UnionSpec k3_union(int a, std::uint64_t seed);

/// M_q = (S/(f))_{qd} for the seeded hypersurface of smooth_hypersurface(n, e, seed).
SectionSystem smooth_fiber(int n, int e, int d, std::uint64_t seed, const PrimeField& field,
                           int q_lo, int q_hi);

/// Vanishing claims of the Calabi-Yau theorem on the coordinate-hyperplane
/// fiber, in both the direct and the dual form, plus the semicontinuity
/// comparison against the seeded smooth fiber and the P^n tables for the two
/// candidate twists b = -3 and b = -n-1 (reported, not judged).
ScenarioResult theorem1_verdict(KoszulEngine& engine, int n, int d, std::uint64_t seed,
                                const PrimeField& field);

/// Every cell where the general table exceeds the special one is a VIOLATION.
/// Differing h0 or ranges make the tables incomparable (one INFO verdict).
std::vector<Verdict> semicontinuity_compare(const NamedTable& special, const NamedTable& general);

/// K_{p,1} around the threshold h - 4d + 4 on the union of a quartics, and the
/// per-component boundary h0(O_S(d)) - 4d + 4.
ScenarioResult theorem2_verdict(KoszulEngine& engine, int a, int d, std::uint64_t seed,
                                const PrimeField& field);

/// (p, q) -> (r - n - p, n + 1 - q); input_error outside 0 <= p <= r-n, 0 <= q <= n+1.
std::pair<int, int> duality_reindex(int r, int n, int p, int q);

/// dim K_{p,q} against dim K_{r-n-p, n+1-q} on a seeded Calabi-Yau hypersurface
/// (degree n+2 in P^{n+1}); input_error for other degrees.
ScenarioResult duality_report(KoszulEngine& engine, int n, int d, std::uint64_t seed,
                              const PrimeField& field);

/// d o d = 0 on every consecutive pair feeding the cells of the table.
std::vector<Verdict> differential_verdicts(const SectionSystem& sys, const NamedTable& table);

/// Cell-by-cell agreement of same-named tables from two runs over different primes.
std::vector<Verdict> cross_prime_verdicts(const ScenarioResult& a, const ScenarioResult& b);

}  // namespace koszul
