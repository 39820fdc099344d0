#include "koszul/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "koszul/rank.hpp"

namespace koszul {

int UnionSpec::dimension() const {
  int n = -1;
  for (const auto& c : components)
    n = std::max(n, ambient_dim - static_cast<int>(c.generators.size()));
  return n;
}

std::vector<Polynomial> UnionSpec::generators_of(const Face& face) const {
  std::vector<Polynomial> gens;
  for (int i : face)
    for (const auto& g : components.at(static_cast<std::size_t>(i)).generators)
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  return gens;
}

std::string face_label(const Face& face) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < face.size(); ++i) os << (i ? "," : "") << face[i];
  os << '}';
  return os.str();
}

namespace {

void combinations(int n, int k, int start, Face& cur, std::vector<Face>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

bool probe_empty(const UnionSpec& spec, const Face& face, const PrimeField& f) {
  auto gens = spec.generators_of(face);
  int s = 0;
  for (const auto& g : gens) s += g.degree();
  return QuotientPiece(gens, spec.n_vars(), s, f).dim() == 0 &&
         QuotientPiece(gens, spec.n_vars(), s + 1, f).dim() == 0;
}

}  // namespace

LocusAtlas::LocusAtlas(UnionSpec spec, PrimeField field)
    : spec_(std::move(spec)), field_(field) {
  const int a = n_components();
  if (a == 0) throw input_error("a union needs at least one component");
  for (const auto& c : spec_.components)
    for (const auto& g : c.generators)
      if (g.n_vars() != spec_.n_vars())
        throw input_error("component " + c.label + " has a generator outside P^" +
                          std::to_string(spec_.ambient_dim));
  for (int k = 1; k <= a; ++k) {
    std::vector<Face> all;
    Face cur;
    combinations(a, k, 0, cur, all);
    std::vector<Face> nonempty;
    for (auto& face : all) {
      if (probe_empty(spec_, face, field_))
        empty_.push_back(face);
      else
        nonempty.push_back(face);
    }
    if (nonempty.empty()) break;
    faces_.push_back(std::move(nonempty));
  }
  if (faces_.empty() || faces_[0].size() != static_cast<std::size_t>(a))
    throw input_error("every component must be nonempty");
}

bool LocusAtlas::is_empty(const Face& face) const {
  if (face.empty()) return false;
  if (face.size() > faces_.size()) return true;
  const auto& fs = faces_[face.size() - 1];
  return !std::binary_search(fs.begin(), fs.end(), face);
}

const std::vector<Face>& LocusAtlas::faces(int p) const {
  static const std::vector<Face> none;
  if (p < 0 || p >= static_cast<int>(faces_.size())) return none;
  return faces_[static_cast<std::size_t>(p)];
}

const QuotientPiece& LocusAtlas::sections(const Face& face, int k) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = cache_[{face, k}];
  if (!slot)
    slot = std::make_unique<QuotientPiece>(spec_.generators_of(face), spec_.n_vars(), k, field_);
  return *slot;
}

SparseVector UnionSections::coordinates(const SparseVector& tuple) const {
  SparseVector out;
  for (std::size_t i = 0; i < free_columns.size(); ++i) {
    fe_t v = tuple.at(free_columns[i]);
    if (v) out.push(static_cast<std::uint32_t>(i), v);
  }
  return out;
}

SparseVector UnionSections::component(const SparseVector& tuple, int i) const {
  const auto lo = static_cast<std::uint32_t>(offsets[static_cast<std::size_t>(i)]);
  const auto hi = static_cast<std::uint32_t>(offsets[static_cast<std::size_t>(i) + 1]);
  SparseVector out;
  auto first = std::lower_bound(tuple.index.begin(), tuple.index.end(), lo);
  for (auto it = first; it != tuple.index.end() && *it < hi; ++it)
    out.push(*it - lo, tuple.value[static_cast<std::size_t>(it - tuple.index.begin())]);
  return out;
}

namespace {

// Restriction of a section on `from` (a subface of `to`) into the sections of `to`.
SparseVector restrict_to(const QuotientPiece& from, const SparseVector& x, const QuotientPiece& to) {
  return to.project(from.lift(x));
}

}  // namespace

SparseMatrix cech_differential(const LocusAtlas& atlas, int p, int k) {
  const PrimeField& f = atlas.field();
  const auto& src_faces = atlas.faces(p);
  const auto& dst_faces = atlas.faces(p + 1);
  std::vector<std::size_t> col_off(src_faces.size() + 1, 0);
  for (std::size_t s = 0; s < src_faces.size(); ++s)
    col_off[s + 1] = col_off[s] + atlas.sections(src_faces[s], k).dim();
  std::vector<std::size_t> row_off(dst_faces.size() + 1, 0);
  for (std::size_t t = 0; t < dst_faces.size(); ++t)
    row_off[t + 1] = row_off[t] + atlas.sections(dst_faces[t], k).dim();
  std::vector<Triplet> trip;
  Face sub;
  for (std::size_t t = 0; t < dst_faces.size(); ++t) {
    const Face& tau = dst_faces[t];
    const auto& target = atlas.sections(tau, k);
    for (std::size_t m = 0; m < tau.size(); ++m) {
      sub.assign(tau.begin(), tau.end());
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(m));
      auto it = std::lower_bound(src_faces.begin(), src_faces.end(), sub);
      if (it == src_faces.end() || *it != sub)
        throw internal_error("locus " + face_label(tau) + " is nonempty but its subface " +
                             face_label(sub) + " is empty");
      const auto s = static_cast<std::size_t>(it - src_faces.begin());
      const auto& src = atlas.sections(sub, k);
      const bool negative = (m & 1) != 0;
      for (std::uint32_t c = 0; c < src.dim(); ++c) {
        SparseVector e;
        e.push(c, 1);
        SparseVector r = restrict_to(src, e, target);
        for (std::size_t u = 0; u < r.size(); ++u)
          trip.push_back({static_cast<std::uint32_t>(row_off[t] + r.index[u]),
                          static_cast<std::uint32_t>(col_off[s] + c),
                          negative ? f.neg(r.value[u]) : r.value[u]});
      }
    }
  }
  return SparseMatrix::from_triplets(f, row_off.back(), col_off.back(), std::move(trip));
}

UnionSections sections_on_union(const LocusAtlas& atlas, int k) {
  UnionSections out;
  out.degree = k;
  const int a = atlas.n_components();
  out.offsets.assign(static_cast<std::size_t>(a) + 1, 0);
  for (int i = 0; i < a; ++i) out.offsets[i + 1] = out.offsets[i] + atlas.sections({i}, k).dim();
  if (out.offsets.back() == 0) return out;
  RankResult rk = rank_kernel(mayer_vietoris_differential(atlas, k));
  out.basis = std::move(rk.kernel_basis);
  for (const auto& v : out.basis) out.free_columns.push_back(v.index.back());
  return out;
}

Restriction restriction_matrix(const LocusAtlas& atlas, const Face& face, const UnionSections& v) {
  const auto& src = atlas.sections({face.front()}, v.degree);
  const auto& target = atlas.sections(face, v.degree);
  std::vector<SparseVector> cols;
  cols.reserve(v.dim());
  for (const auto& b : v.basis) cols.push_back(restrict_to(src, v.component(b, face.front()), target));
  Restriction r;
  r.matrix = SparseMatrix::from_columns(atlas.field(), target.dim(), std::move(cols));
  std::size_t rk = rank(r.matrix);
  r.surjective = rk == target.dim();
  r.kernel_dim = v.dim() - rk;
  return r;
}

namespace {

std::uint64_t fnv(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

SectionSystem::SectionSystem(PrimeField field, std::string description, std::size_t v_dim,
                             int q_min, bool zero_below, std::vector<std::size_t> dims,
                             std::vector<std::vector<SparseMatrix>> mult)
    : field_(field), description_(std::move(description)), v_dim_(v_dim), q_min_(q_min),
      zero_below_(zero_below), dims_(std::move(dims)), mult_(std::move(mult)) {
  if (dims_.empty()) throw input_error("a section system needs at least one graded piece");
  if (mult_.size() + 1 != dims_.size())
    throw input_error("multiplication data must connect consecutive graded pieces");
  for (std::size_t t = 0; t < mult_.size(); ++t) {
    if (mult_[t].size() != v_dim_) throw input_error("one multiplication matrix per basis of V");
    for (const auto& m : mult_[t])
      if (m.rows() != dims_[t + 1] || m.cols() != dims_[t])
        throw input_error("multiplication matrix shape does not match the graded pieces");
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv(h, field_.modulus());
  h = fnv(h, v_dim_);
  h = fnv(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(q_min_)));
  h = fnv(h, zero_below_);
  for (auto d : dims_) h = fnv(h, d);
  for (const auto& row : mult_)
    for (const auto& m : row)
      for (const auto& t : m.triplets()) {
        h = fnv(h, t.row);
        h = fnv(h, t.col);
        h = fnv(h, t.value);
      }
  hash_ = h;
}

std::size_t SectionSystem::dim(int q) const {
  if (zero_below_ && q < q_min_) return 0;
  if (q < q_min_ || q > q_max())
    throw range_error("graded piece M_" + std::to_string(q) + " outside the computed range [" +
                      std::to_string(q_min_) + ", " + std::to_string(q_max()) + "]");
  return dims_[static_cast<std::size_t>(q - q_min_)];
}

const SparseMatrix& SectionSystem::multiplication(int q, std::size_t i) const {
  if (!has_multiplication(q))
    throw range_error("multiplication M_" + std::to_string(q) + " -> M_" + std::to_string(q + 1) +
                      " outside the computed range");
  return mult_[static_cast<std::size_t>(q - q_min_)].at(i);
}

std::size_t SectionSystem::multiplication_nnz(int q) const {
  if (!has_multiplication(q)) return 0;
  std::size_t n = 0;
  for (const auto& m : mult_[static_cast<std::size_t>(q - q_min_)]) n += m.nnz();
  return n;
}

namespace {

void check_range(int q_lo, int q_hi) {
  if (q_hi < q_lo) throw input_error("empty q range");
}

std::string bundle_text(const LineBundleSpec& bundle) {
  return "b=" + std::to_string(bundle.b) + ", d=" + std::to_string(bundle.d);
}

}  // namespace

SectionSystem build_section_system(const LocusAtlas& atlas, const LineBundleSpec& bundle, int q_lo,
                                   int q_hi) {
  check_range(q_lo, q_hi);
  const PrimeField& f = atlas.field();
  const int a = atlas.n_components();
  const int d = bundle.d;
  UnionSections v = sections_on_union(atlas, d);
  std::vector<UnionSections> pieces;
  std::vector<std::size_t> dims;
  for (int q = q_lo; q <= q_hi; ++q) {
    pieces.push_back(sections_on_union(atlas, bundle.twist(q)));
    dims.push_back(pieces.back().dim());
  }
  std::vector<std::vector<SparseMatrix>> mult;
  for (int q = q_lo; q < q_hi; ++q) {
    const auto& src = pieces[static_cast<std::size_t>(q - q_lo)];
    const auto& dst = pieces[static_cast<std::size_t>(q - q_lo + 1)];
    const int k = bundle.twist(q);
    SparseMatrix check = mayer_vietoris_differential(atlas, k + d);
    std::vector<SparseMatrix> per_v;
    per_v.reserve(v.dim());
    for (const auto& vb : v.basis) {
      std::vector<SparseVector> cols;
      cols.reserve(src.dim());
      for (const auto& mb : src.basis) {
        std::vector<std::pair<std::uint32_t, fe_t>> acc;
        for (int c = 0; c < a; ++c) {
          SparseVector prod =
              multiply(atlas.sections({c}, d), v.component(vb, c), atlas.sections({c}, k),
                       src.component(mb, c), atlas.sections({c}, k + d));
          for (std::size_t t = 0; t < prod.size(); ++t)
            acc.emplace_back(static_cast<std::uint32_t>(dst.offsets[static_cast<std::size_t>(c)] +
                                                        prod.index[t]),
                             prod.value[t]);
        }
        SparseVector tuple = make_sparse(std::move(acc), f);
        if (!check.apply(tuple).empty())
          throw internal_error("product of union sections left the Mayer-Vietoris kernel");
        cols.push_back(dst.coordinates(tuple));
      }
      per_v.push_back(SparseMatrix::from_columns(f, dst.dim(), std::move(cols)));
    }
    mult.push_back(std::move(per_v));
  }
  std::string desc = "union of " + std::to_string(a) + " component(s) in P^" +
                     std::to_string(atlas.spec().ambient_dim) + ", " + bundle_text(bundle);
  return SectionSystem(f, desc, v.dim(), q_lo, bundle.twist(q_lo - 1) < 0, std::move(dims),
                       std::move(mult));
}

SectionSystem build_section_system(const ComponentSpec& component, int ambient_dim,
                                   const LineBundleSpec& bundle, int q_lo, int q_hi,
                                   const PrimeField& field) {
  check_range(q_lo, q_hi);
  const int n_vars = ambient_dim + 1;
  QuotientPiece vq(component.generators, n_vars, bundle.d, field);
  std::vector<QuotientPiece> pieces;
  std::vector<std::size_t> dims;
  for (int q = q_lo; q <= q_hi + 1; ++q) pieces.emplace_back(component.generators, n_vars, bundle.twist(q), field);
  for (int q = q_lo; q <= q_hi; ++q) dims.push_back(pieces[static_cast<std::size_t>(q - q_lo)].dim());
  std::vector<std::vector<SparseMatrix>> mult;
  for (int q = q_lo; q < q_hi; ++q)
    mult.push_back(multiplication_tensor(vq, pieces[static_cast<std::size_t>(q - q_lo)],
                                         pieces[static_cast<std::size_t>(q - q_lo + 1)]));
  std::string desc = (component.label.empty() ? std::string("component") : component.label) +
                     " in P^" + std::to_string(ambient_dim) + ", " + bundle_text(bundle);
  return SectionSystem(field, desc, vq.dim(), q_lo, bundle.twist(q_lo - 1) < 0, std::move(dims),
                       std::move(mult));
}

SectionSystem build_module_system(const LocusAtlas& atlas, const LineBundleSpec& bundle, int p,
                                  int q_lo, int q_hi) {
  check_range(q_lo, q_hi);
  const PrimeField& f = atlas.field();
  const int d = bundle.d;
  const auto& faces = atlas.faces(p);
  UnionSections v = sections_on_union(atlas, d);

  // V restricted to every locus, in that locus's degree-d coordinates.
  std::vector<std::vector<SparseVector>> res(faces.size());
  for (std::size_t s = 0; s < faces.size(); ++s) {
    const auto& src = atlas.sections({faces[s].front()}, d);
    const auto& dst = atlas.sections(faces[s], d);
    for (const auto& vb : v.basis)
      res[s].push_back(dst.project(src.lift(v.component(vb, faces[s].front()))));
  }
  auto offsets = [&](int k) {
    std::vector<std::size_t> off(faces.size() + 1, 0);
    for (std::size_t s = 0; s < faces.size(); ++s) off[s + 1] = off[s] + atlas.sections(faces[s], k).dim();
    return off;
  };
  std::vector<std::size_t> dims;
  for (int q = q_lo; q <= q_hi; ++q) dims.push_back(offsets(bundle.twist(q)).back());
  std::vector<std::vector<SparseMatrix>> mult;
  for (int q = q_lo; q < q_hi; ++q) {
    const int k = bundle.twist(q);
    auto off_src = offsets(k);
    auto off_dst = offsets(k + d);
    std::vector<SparseMatrix> per_v;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      std::vector<SparseVector> cols;
      for (std::size_t s = 0; s < faces.size(); ++s) {
        const auto& qd = atlas.sections(faces[s], d);
        const auto& qk = atlas.sections(faces[s], k);
        const auto& qkd = atlas.sections(faces[s], k + d);
        for (std::uint32_t j = 0; j < qk.dim(); ++j) {
          SparseVector e;
          e.push(j, 1);
          SparseVector prod = multiply(qd, res[s][i], qk, e, qkd);
          for (auto& idx : prod.index) idx += static_cast<std::uint32_t>(off_dst[s]);
          cols.push_back(std::move(prod));
        }
      }
      per_v.push_back(SparseMatrix::from_columns(f, off_dst.back(), std::move(cols)));
    }
    mult.push_back(std::move(per_v));
  }
  std::string desc = "module B^" + std::to_string(p) + " over " + std::to_string(faces.size()) +
                     " locus/loci, " + bundle_text(bundle);
  return SectionSystem(f, desc, v.dim(), q_lo, bundle.twist(q_lo - 1) < 0, std::move(dims),
                       std::move(mult));
}

}  // namespace koszul
