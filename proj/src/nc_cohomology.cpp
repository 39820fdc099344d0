#include "koszul/nc_cohomology.hpp"

#include <algorithm>
#include <set>

namespace koszul {

BComplex build_B_complex(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q) {
  BComplex c;
  c.q = q;
  c.twist = bundle.twist(q);
  const int top = atlas.max_face_dim();
  for (int p = 0; p <= top; ++p) {
    std::size_t dim = 0;
    for (const auto& face : atlas.faces(p)) dim += atlas.sections(face, c.twist).dim();
    c.dims.push_back(dim);
  }
  for (int p = 0; p < top; ++p) c.differentials.push_back(cech_differential(atlas, p, c.twist));
  for (std::size_t p = 0; p + 1 < c.differentials.size(); ++p)
    if (!multiply(c.differentials[p + 1], c.differentials[p]).is_zero())
      throw internal_error("Mayer-Vietoris differentials do not square to zero at p=" +
                           std::to_string(p));
  return c;
}

namespace {

std::vector<std::size_t> cohomology_dims(const std::vector<std::size_t>& dims,
                                         const std::vector<SparseMatrix>& maps) {
  std::vector<std::size_t> ranks(maps.size());
  for (std::size_t p = 0; p < maps.size(); ++p) ranks[p] = rank(maps[p]);
  std::vector<std::size_t> h(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p) {
    std::size_t out = p < ranks.size() ? ranks[p] : 0;
    std::size_t in = p > 0 ? ranks[p - 1] : 0;
    h[p] = dims[p] - out - in;
  }
  return h;
}

}  // namespace

std::vector<std::size_t> B_cohomology(const BComplex& complex) {
  return cohomology_dims(complex.dims, complex.differentials);
}

std::vector<std::size_t> B_cohomology(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q) {
  return B_cohomology(build_B_complex(atlas, bundle, q));
}

namespace {

std::vector<SparseMatrix> simplicial_coboundaries(const std::vector<std::vector<Face>>& faces,
                                                  const PrimeField& f) {
  std::vector<SparseMatrix> out;
  for (std::size_t p = 0; p + 1 < faces.size(); ++p) {
    std::vector<Triplet> trip;
    Face sub;
    for (std::size_t t = 0; t < faces[p + 1].size(); ++t) {
      const Face& tau = faces[p + 1][t];
      for (std::size_t m = 0; m < tau.size(); ++m) {
        sub.assign(tau.begin(), tau.end());
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(m));
        auto it = std::lower_bound(faces[p].begin(), faces[p].end(), sub);
        if (it == faces[p].end() || *it != sub)
          throw internal_error("face " + face_label(tau) + " present but subface " +
                               face_label(sub) + " absent");
        trip.push_back({static_cast<std::uint32_t>(t),
                        static_cast<std::uint32_t>(it - faces[p].begin()),
                        (m & 1) ? f.neg(1) : fe_t{1}});
      }
    }
    out.push_back(SparseMatrix::from_triplets(f, faces[p + 1].size(), faces[p].size(), std::move(trip)));
  }
  return out;
}

}  // namespace

SimplicialComplex dual_complex(const LocusAtlas& atlas) {
  SimplicialComplex d;
  d.n_vertices = atlas.n_components();
  for (int p = 0; p <= atlas.max_face_dim(); ++p) d.faces.push_back(atlas.faces(p));
  d.coboundaries = simplicial_coboundaries(d.faces, atlas.field());
  return d;
}

SimplicialComplex simplicial_complex_from_faces(int n_vertices, std::vector<Face> maximal_faces,
                                                const PrimeField& f) {
  std::vector<std::set<Face>> by_dim;
  for (auto& face : maximal_faces) {
    std::sort(face.begin(), face.end());
    const auto k = face.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      Face sub;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) sub.push_back(face[i]);
      if (by_dim.size() < sub.size()) by_dim.resize(sub.size());
      by_dim[sub.size() - 1].insert(sub);
    }
  }
  SimplicialComplex d;
  d.n_vertices = n_vertices;
  for (auto& s : by_dim) d.faces.emplace_back(s.begin(), s.end());
  d.coboundaries = simplicial_coboundaries(d.faces, f);
  return d;
}

std::vector<std::size_t> simplicial_cohomology(const SimplicialComplex& delta) {
  std::vector<std::size_t> dims;
  for (const auto& f : delta.faces) dims.push_back(f.size());
  return cohomology_dims(dims, delta.coboundaries);
}

std::string to_string(Status s) {
  switch (s) {
    case Status::holds: return "HOLDS";
    case Status::fails: return "FAILS";
    case Status::assumed: return "ASSUMED";
    case Status::not_applicable: return "NOT-APPLICABLE";
  }
  return "?";
}

bool HypothesisReport::all_hold() const {
  auto ok = [](Status s) { return s == Status::holds || s == Status::assumed; };
  return ok(higher_cohomology) && ok(negative_twists) && ok(restrictions_surjective) && ok(first_step_exact) && ok(B_acyclic);
}

HypothesisReport hypothesis_report(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q_lo,
                                   int q_hi) {
  HypothesisReport r;
  r.q_lo = q_lo;
  r.q_hi = q_hi;

  // Negative twists have no sections on any locus.
  r.negative_twists = Status::holds;
  for (int p = 0; p <= atlas.max_face_dim(); ++p)
    for (const auto& face : atlas.faces(p))
      if (atlas.sections(face, -1).dim() != 0) r.negative_twists = Status::fails;

  // Surjective restrictions onto every locus.
  UnionSections v = sections_on_union(atlas, bundle.d);
  r.restrictions_surjective = Status::holds;
  for (int p = 0; p <= atlas.max_face_dim(); ++p)
    for (const auto& face : atlas.faces(p)) {
      Restriction res = restriction_matrix(atlas, face, v);
      r.restrictions.push_back({face, res.matrix.rows(), res.kernel_dim, res.surjective});
      if (!res.surjective) r.restrictions_surjective = Status::fails;
    }

  // Exactness and acyclicity from the twisted complexes.
  r.first_step_exact = Status::holds;
  r.B_acyclic = Status::holds;
  for (int q = q_lo; q <= q_hi; ++q) {
    auto h = B_cohomology(atlas, bundle, q);
    std::size_t h0 = sections_on_union(atlas, bundle.twist(q)).dim();
    r.union_sections.push_back(h0);
    if (h.empty() || h[0] != h0) r.first_step_exact = Status::fails;
    if (q > 0)
      for (std::size_t i = 1; i < h.size(); ++i)
        if (h[i] != 0) r.B_acyclic = Status::fails;
    r.b_cohomology.push_back(std::move(h));
  }
  // Higher cohomology on loci is not decidable from graded pieces alone;
  // acyclicity of B plus
  // complete-intersection components stand in for it.
  r.higher_cohomology = r.B_acyclic == Status::holds ? Status::assumed : Status::fails;
  return r;
}

Status structure_sheaf_acyclic(const LocusAtlas& atlas) {
  const int big_n = atlas.spec().ambient_dim;
  bool all_linear = true;
  for (int p = 0; p <= atlas.max_face_dim(); ++p)
    for (const auto& face : atlas.faces(p)) {
      auto gens = atlas.spec().generators_of(face);
      int sum = 0;
      bool linear = true;
      for (const auto& g : gens) {
        sum += g.degree();
        linear = linear && g.degree() == 1;
      }
      all_linear = all_linear && linear;
      const int dim = big_n - static_cast<int>(gens.size());
      // A complete intersection of dimension >= 1 has H^dim(O) dual to
      // H^0(O(sum deg - N - 1)), and no other higher cohomology.
      if (!linear && dim >= 1 && sum > big_n) return Status::fails;
    }
  return all_linear ? Status::holds : Status::assumed;
}

namespace {

std::string status_of(bool applicable, bool admissible, std::uint64_t predicted,
                      const std::optional<std::uint64_t>& computed) {
  if (!computed) return "GAP";
  if (!applicable) return "NOT-APPLICABLE";
  if (!admissible) return "NOT-ADMISSIBLE";
  return *computed == predicted ? "VERIFIED" : "MISMATCH";
}

}  // namespace

Lemma1Report lemma1_verify(KoszulEngine& engine, const LocusAtlas& atlas,
                           const LineBundleSpec& bundle, const std::vector<int>& qs,
                           const std::vector<int>& l_values) {
  Lemma1Report rep;
  rep.dimension = atlas.spec().dimension();
  const int n = rep.dimension;
  int l_max = 0;
  for (int l : l_values) l_max = std::max(l_max, l);
  for (int q : qs) l_max = std::max(l_max, q);

  rep.hypotheses = hypothesis_report(atlas, bundle, 0, n + 2);
  rep.applicable = rep.hypotheses.all_hold();
  rep.b0_cohomology = B_cohomology(atlas, bundle, 0);

  SectionSystem whole = build_section_system(atlas, bundle, -1, l_max + 1);
  rep.h0 = whole.v_dim();
  const auto h0 = static_cast<int>(rep.h0);

  // Vanishing spans per row and locus.
  std::vector<std::pair<Face, SectionSystem>> loci;
  for (int p = 0; p <= atlas.max_face_dim(); ++p)
    for (const auto& face : atlas.faces(p)) {
      ComponentSpec locus{face_label(face), atlas.spec().generators_of(face)};
      loci.emplace_back(face, build_section_system(locus, atlas.spec().ambient_dim, bundle, -1,
                                                   l_max + 1, atlas.field()));
    }
  for (int row = 0; row <= l_max; ++row) {
    std::vector<VanishingSpan> spans;
    std::optional<int> s_row;
    bool unbounded = true;
    for (const auto& [face, sys] : loci) {
      VanishingSpan span{face, sys.v_dim(), std::nullopt};
      const int hl = static_cast<int>(sys.v_dim());
      for (int s = 0; s <= hl; ++s) {
        try {
          if (engine.cell(sys, hl - s, row).dim_k != 0) {
            span.s = s - 1;
            break;
          }
        } catch (const resource_error& e) {
          rep.gaps.push_back(e.what());
          span.s = s - 1;
          break;
        }
      }
      if (span.s) {
        s_row = unbounded ? *span.s : std::min(*s_row, *span.s);
        unbounded = false;
      }
      spans.push_back(span);
    }
    rep.s.push_back(s_row);
    rep.spans.push_back(std::move(spans));
  }

  auto admissible = [&](int l) {
    for (int row = 0; row <= l; ++row) {
      const auto& s = rep.s[static_cast<std::size_t>(row)];
      if (s && l - row < h0 - *s) return false;
    }
    return true;
  };

  std::vector<SectionSystem> modules;
  for (int p = 0; p <= atlas.max_face_dim(); ++p)
    modules.push_back(build_module_system(atlas, bundle, p, -1, l_max + 1));

  for (int l : l_values) {
    const bool adm = admissible(l);
    for (int q : qs) {
      if (q < 0 || q > n + 1 || l - q < 0) continue;
      LemmaPrediction pr;
      pr.l = l;
      pr.q = q;
      pr.admissible = adm;
      if (q >= 2) {
        const auto idx = static_cast<std::size_t>(q - 1);
        std::uint64_t h = idx < rep.b0_cohomology.size() ? rep.b0_cohomology[idx] : 0;
        pr.predicted = binomial(h0, l) * h;
      }
      try {
        pr.computed = engine.cell(whole, l - q, q).dim_k;
      } catch (const resource_error& e) {
        rep.gaps.push_back(e.what());
      }
      pr.status = status_of(rep.applicable, adm, pr.predicted, pr.computed);
      rep.predictions.push_back(pr);
    }
    if (!adm) continue;
    for (int p = 0; p < static_cast<int>(modules.size()); ++p)
      for (int row = std::max(0, l - h0); row <= l; ++row) {
        E1Term t{l, p, row, std::nullopt};
        try {
          t.dim = koszul_of_module(engine, modules[static_cast<std::size_t>(p)], l, row).dim_k;
        } catch (const resource_error& e) {
          rep.gaps.push_back(e.what());
        }
        rep.e1_terms.push_back(t);
      }
  }
  return rep;
}

}  // namespace koszul
