#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "koszul/graded_ring.hpp"

namespace koszul {

/// A complete-intersection component of P^N. Codimension is taken to be the
/// number of generators; smoothness and transversality are assumed.
struct ComponentSpec {
  std::string label;
  std::vector<Polynomial> generators;
};

/// Sorted component indices i_0 < ... < i_p.
using Face = std::vector<int>;

struct UnionSpec {
  int ambient_dim = 0;  // N
  std::vector<ComponentSpec> components;

  int n_vars() const { return ambient_dim + 1; }
  /// dim D, the largest component dimension N - codim.
  int dimension() const;
  /// Union of the generator sets of the listed components (first occurrence order).
  std::vector<Polynomial> generators_of(const Face& face) const;
};

/// B = O(b), L_d = O(d).
struct LineBundleSpec {
  int b = 0;
  int d = 1;
  int twist(int q) const { return q * d + b; }
};

/// Intersection loci of a union over one prime: nonemptiness probes and
/// memoised section spaces H^0(O_locus(k)). Thread-safe.
class LocusAtlas {
 public:
  LocusAtlas(UnionSpec spec, PrimeField field);

  const UnionSpec& spec() const { return spec_; }
  const PrimeField& field() const { return field_; }
  int n_components() const { return static_cast<int>(spec_.components.size()); }

  /// Hilbert probe: the quotient vanishes in degrees sum(deg g) and sum(deg g)+1.
  /// Exact for coordinate-subspace configurations, heuristic otherwise.
  bool is_empty(const Face& face) const;
  /// Nonempty faces with p+1 vertices, in lexicographic order.
  const std::vector<Face>& faces(int p) const;
  /// Faces whose locus was probed empty (any size), lexicographic within size.
  const std::vector<Face>& empty_faces() const { return empty_; }
  int max_face_dim() const { return static_cast<int>(faces_.size()) - 1; }

  /// H^0(O_locus(k)) as a graded quotient piece.
  const QuotientPiece& sections(const Face& face, int k) const;

 private:
  UnionSpec spec_;
  PrimeField field_;
  std::vector<std::vector<Face>> faces_;
  std::vector<Face> empty_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Face, int>, std::unique_ptr<QuotientPiece>> cache_;
};

/// sections_on_locus as a free function.
inline const QuotientPiece& sections_on_locus(const LocusAtlas& atlas, const Face& face, int k) {
  return atlas.sections(face, k);
}

/// H^0(O_D(k)) as the kernel of the first Mayer-Vietoris differential
/// B^0 -> B^1. Basis vectors are stored as tuples in B^0 coordinates (the
/// component quotient coordinates concatenated in component order).
struct UnionSections {
  int degree = 0;
  std::vector<std::size_t> offsets;          // per component, plus total at the end
  std::vector<SparseVector> basis;
  std::vector<std::uint32_t> free_columns;   // coordinates of a kernel tuple

  std::size_t dim() const { return basis.size(); }
  std::size_t tuple_size() const { return offsets.back(); }
  /// Coordinates of a tuple known to lie in the kernel.
  SparseVector coordinates(const SparseVector& tuple) const;
  /// Entry of `tuple` on component `i`, in that component's quotient coordinates.
  SparseVector component(const SparseVector& tuple, int i) const;
};

/// Cech coboundary between the twisted section spaces of the loci,
///   (delta s)_tau = sum_m (-1)^m s_{tau - tau_m}|_tau,
/// from (+)_{|sigma| = p+1} H^0(O_sigma(k)) to (+)_{|tau| = p+2} H^0(O_tau(k)).
/// internal_error if some codimension-one subface of a nonempty face is empty.
SparseMatrix cech_differential(const LocusAtlas& atlas, int p, int k);

/// First differential of the Mayer-Vietoris complex at twist k: B^0_k -> B^1_k, i.e.
/// (delta s)_{ij} = s_j|_{ij} - s_i|_{ij}.
inline SparseMatrix mayer_vietoris_differential(const LocusAtlas& atlas, int k) {
  return cech_differential(atlas, 0, k);
}

UnionSections sections_on_union(const LocusAtlas& atlas, int k);

struct Restriction {
  SparseMatrix matrix;       // dim H^0(L_d|locus) x dim V
  bool surjective = false;
  std::size_t kernel_dim = 0;
};

/// phi: V = H^0(O_D(d)) -> H^0(O_locus(d)).
Restriction restriction_matrix(const LocusAtlas& atlas, const Face& face,
                               const UnionSections& v);

/// Graded section spaces M_q with the action of V, the input of the Koszul engine.
class SectionSystem {
 public:
  SectionSystem(PrimeField field, std::string description, std::size_t v_dim, int q_min,
                bool zero_below, std::vector<std::size_t> dims,
                std::vector<std::vector<SparseMatrix>> mult);

  const PrimeField& field() const { return field_; }
  const std::string& description() const { return description_; }
  std::size_t v_dim() const { return v_dim_; }
  int q_min() const { return q_min_; }
  int q_max() const { return q_min_ + static_cast<int>(dims_.size()) - 1; }
  bool zero_below() const { return zero_below_; }

  /// dim M_q; range_error outside the stored range unless M_q is structurally zero.
  std::size_t dim(int q) const;
  bool has(int q) const { return (q >= q_min_ && q <= q_max()) || (zero_below_ && q < q_min_); }
  /// Matrix of m -> v_i * m from M_q to M_{q+1}.
  const SparseMatrix& multiplication(int q, std::size_t i) const;
  bool has_multiplication(int q) const { return q >= q_min_ && q < q_max(); }
  /// Total stored entries of all multiplication matrices from M_q.
  std::size_t multiplication_nnz(int q) const;

  /// Content hash (field, dimensions, every multiplication entry); the
  /// description does not participate.
  std::uint64_t hash() const { return hash_; }

 private:
  PrimeField field_;
  std::string description_;
  std::size_t v_dim_;
  int q_min_;
  bool zero_below_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<SparseMatrix>> mult_;
  std::uint64_t hash_ = 0;
};

/// Section ring pieces M_q = H^0(O_D(qd + b)), q in [q_lo, q_hi], acting by V = H^0(O_D(d)).
SectionSystem build_section_system(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q_lo,
                                   int q_hi);

/// Same for a single complete-intersection component, through graded quotient pieces directly.
SectionSystem build_section_system(const ComponentSpec& component, int ambient_dim,
                                   const LineBundleSpec& bundle, int q_lo, int q_hi,
                                   const PrimeField& field);

/// The module B^p = (+)_{|sigma| = p+1} H^0(O_sigma(qd + b)) with V = H^0(O_D(d))
/// acting through the restriction maps.
SectionSystem build_module_system(const LocusAtlas& atlas, const LineBundleSpec& bundle, int p,
                                  int q_lo, int q_hi);

std::string face_label(const Face& face);

}  // namespace koszul
