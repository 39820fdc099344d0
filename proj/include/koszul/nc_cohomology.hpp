#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "koszul/geometry.hpp"
#include "koszul/koszul.hpp"

namespace koszul {

/// Global sections of the Mayer-Vietoris complex twisted by B (x) qL_d:
///   B^0_q -> B^1_q -> ... ,  B^p_q = (+)_{|sigma| = p+1} H^0(O_sigma(qd + b)).
/// Only nonempty loci contribute.
struct BComplex {
  int q = 0;
  int twist = 0;
  std::vector<std::size_t> dims;             // dim B^p_q
  std::vector<SparseMatrix> differentials;   // delta^p : B^p_q -> B^{p+1}_q
};

/// Builds the complex and asserts delta o delta = 0 (internal_error otherwise).
BComplex build_B_complex(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q);

/// dim H^p(B_q) for p = 0 .. length-1.
std::vector<std::size_t> B_cohomology(const BComplex& complex);
std::vector<std::size_t> B_cohomology(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q);

/// The dual complex Delta(D): vertices are components, faces are index sets
/// with nonempty intersection. Coboundaries use the same sign rule as the
/// Cech differential.
struct SimplicialComplex {
  int n_vertices = 0;
  std::vector<std::vector<Face>> faces;       // faces[p]: p-simplices
  std::vector<SparseMatrix> coboundaries;     // C^p -> C^{p+1}
};

/// internal_error if a nonempty face has an empty subface.
SimplicialComplex dual_complex(const LocusAtlas& atlas);
/// Full simplex or sphere boundary from an explicit face list.
SimplicialComplex simplicial_complex_from_faces(int n_vertices, std::vector<Face> maximal_faces,
                                                const PrimeField& f);
std::vector<std::size_t> simplicial_cohomology(const SimplicialComplex& delta);

enum class Status { holds, fails, assumed, not_applicable };
std::string to_string(Status s);

struct LocusCheck {
  Face face;
  std::size_t target_dim = 0;
  std::size_t kernel_dim = 0;
  bool surjective = false;
};

/// Computational stand-ins for the vanishing facts at a finite d:
///   higher_cohomology: H^i(B(x)qL_d) vanishes on loci; proxy = B_acyclic holds
///       and every component is a complete intersection;
///   negative_twists: sections vanish in negative degree;
///   restrictions_surjective: V -> H^0(L_d|locus) is onto for every locus;
///   first_step_exact: H^0(B_q) = H^0(O_D(qd+b));
///   B_acyclic: H^i(B_q) = 0 for i > 0, q > 0.
struct HypothesisReport {
  int q_lo = 0, q_hi = 0;
  Status higher_cohomology = Status::fails;
  Status negative_twists = Status::fails;
  Status restrictions_surjective = Status::fails;
  Status first_step_exact = Status::fails;
  Status B_acyclic = Status::fails;
  std::vector<LocusCheck> restrictions;
  std::vector<std::vector<std::size_t>> b_cohomology;  // per q in [q_lo, q_hi]
  std::vector<std::size_t> union_sections;             // dim H^0(O_D(qd+b)) per q
  bool all_hold() const;
};

HypothesisReport hypothesis_report(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q_lo,
                                   int q_hi);

/// Whether every locus has H^i(O_locus) = 0 for i > 0. Verified structurally
/// for linear loci (coordinate subspaces); otherwise reported as assumed.
Status structure_sheaf_acyclic(const LocusAtlas& atlas);

/// Vanishing span of one locus in a given row q:
/// the largest s such that K_{h0 - s', q}(locus) = 0 for all 0 <= s' <= s, or
/// unbounded when every cell with p >= 0 vanishes (then the scan cap is h0).
struct VanishingSpan {
  Face face;
  std::size_t h0 = 0;
  std::optional<int> s;   // nullopt == unbounded
};

struct LemmaPrediction {
  int l = 0;
  int q = 0;
  bool admissible = false;
  std::uint64_t predicted = 0;
  std::optional<std::uint64_t> computed;
  /// VERIFIED, MISMATCH, NOT-ADMISSIBLE, NOT-APPLICABLE, GAP
  std::string status;
};

struct E1Term {
  int l = 0;
  int p = 0;   // module B^p
  int q = 0;
  std::optional<std::uint64_t> dim;   // K_{l-q,q}(B^p, V)
};

struct Lemma1Report {
  std::size_t h0 = 0;                     // dim V
  int dimension = 0;                      // n = dim D
  HypothesisReport hypotheses;
  std::vector<std::size_t> b0_cohomology; // dim H^i(B_0)
  /// s_q per row q = 0 .. q_rows-1 (minimum over loci; nullopt = unbounded).
  std::vector<std::optional<int>> s;
  std::vector<std::vector<VanishingSpan>> spans;
  std::vector<LemmaPrediction> predictions;
  std::vector<E1Term> e1_terms;
  std::vector<std::string> gaps;
  bool applicable = false;
};

/// Compares the conclusion
///   K_{l-q,q}(D) = 0 (q = 0, 1),  K_{l-q,q}(D) = wedge^l V (x) H^{q-1}(B_0) (2 <= q <= n+1)
/// with direct computation, for each requested l. The bound l - q' >= h0 - s_{q'}
/// is required for every row q' of the double complex wedge^{l-q'}V (x) B^p_{q'},
/// which is what forces the E_1 terms K_{l-q',q'}(B^p, V) to vanish; those terms
/// are computed and reported too.
Lemma1Report lemma1_verify(KoszulEngine& engine, const LocusAtlas& atlas,
                           const LineBundleSpec& bundle, const std::vector<int>& qs,
                           const std::vector<int>& l_values);

}  // namespace koszul
