#include <doctest.h>

#include "koszul/errors.hpp"
#include "koszul/geometry.hpp"
#include "koszul/rank.hpp"
#include "koszul/scenarios.hpp"
#include "support.hpp"

using namespace koszul;
using testing::choose;

namespace {

// Monomials of degree k in n+1 variables not divisible by x_0 x_1 ... x_n.
std::uint64_t coordinate_union_hilbert(int n, int k) {
  return choose(n + k, n) - choose(k - 1, n);
}

}  // namespace

TEST_CASE("triangle of lines: faces and emptiness") {
  LocusAtlas atlas(cy_degenerate_fiber(1), PrimeField());
  CHECK(atlas.max_face_dim() == 1);
  CHECK(atlas.faces(0).size() == 3);
  CHECK(atlas.faces(1).size() == 3);
  CHECK(atlas.is_empty({0, 1, 2}));
  CHECK_FALSE(atlas.is_empty({0, 2}));
  REQUIRE(atlas.empty_faces().size() == 1);
  CHECK(atlas.sections({0}, 1).dim() == 2);
  CHECK(atlas.sections({0, 1}, 5).dim() == 1);
}

TEST_CASE("Mayer-Vietoris differential on the triangle at twist 1") {
  LocusAtlas atlas(cy_degenerate_fiber(1), PrimeField());
  SparseMatrix d = mayer_vietoris_differential(atlas, 1);
  CHECK(d.rows() == 3);
  CHECK(d.cols() == 6);
  CHECK(testing::oracle_rank(d) == 3);
  CHECK(sections_on_union(atlas, 1).dim() == 3);
  CHECK(sections_on_union(atlas, 2).dim() == 6);
}

TEST_CASE("sections on coordinate unions follow the Stanley-Reisner Hilbert function") {
  for (int n = 1; n <= 3; ++n) {
    LocusAtlas atlas(cy_degenerate_fiber(n), PrimeField(65521));
    for (int k = 0; k <= 4; ++k)
      CHECK(sections_on_union(atlas, k).dim() == coordinate_union_hilbert(n + 1, k));
  }
}

TEST_CASE("union section tuples are compatible on overlaps") {
  LocusAtlas atlas(cy_degenerate_fiber(2), PrimeField());
  auto u = sections_on_union(atlas, 2);
  SparseMatrix d = mayer_vietoris_differential(atlas, 2);
  for (const auto& t : u.basis) {
    CHECK(d.apply(t).empty());
    auto coords = u.coordinates(t);
    CHECK(coords.size() == 1);
  }
}

TEST_CASE("section system of the triangle with b=0, d=2") {
  LocusAtlas atlas(cy_degenerate_fiber(1), PrimeField());
  SectionSystem sys = build_section_system(atlas, {0, 2}, 0, 3);
  CHECK(sys.v_dim() == 6);
  CHECK(sys.dim(0) == 1);
  CHECK(sys.dim(1) == 6);
  CHECK(sys.dim(2) == 12);
  CHECK(sys.dim(3) == 18);
  CHECK(sys.dim(-1) == 0);
  CHECK_THROWS_AS(sys.dim(4), range_error);
  CHECK(sys.multiplication(1, 0).rows() == 12);
}

TEST_CASE("fast path and union path agree on a single component") {
  PrimeField f;
  UnionSpec spec = smooth_hypersurface(1, 3, 11);
  SectionSystem direct = build_section_system(spec.components[0], 2, {0, 3}, -1, 3, f);
  LocusAtlas atlas(spec, f);
  SectionSystem via = build_section_system(atlas, {0, 3}, -1, 3);
  for (int q = -1; q <= 3; ++q) CHECK(direct.dim(q) == via.dim(q));
  CHECK(direct.v_dim() == 9);
}

TEST_CASE("section system hashes ignore the description and see the content") {
  PrimeField f;
  UnionSpec a = smooth_hypersurface(2, 4, 7), b = smooth_hypersurface(2, 4, 8);
  auto sa = build_section_system(a.components[0], 3, {0, 2}, -1, 2, f);
  auto sa2 = build_section_system(a.components[0], 3, {0, 2}, -1, 2, f);
  auto sb = build_section_system(b.components[0], 3, {0, 2}, -1, 2, f);
  CHECK(sa.hash() == sa2.hash());
  CHECK(sa.hash() != sb.hash());
  auto sp = build_section_system(a.components[0], 3, {0, 2}, -1, 2, PrimeField(65521));
  CHECK(sa.hash() != sp.hash());
}

TEST_CASE("restrictions from the union onto loci") {
  LocusAtlas atlas(cy_degenerate_fiber(1), PrimeField());
  auto v = sections_on_union(atlas, 2);
  for (const auto& face : atlas.faces(0)) {
    auto r = restriction_matrix(atlas, face, v);
    CHECK(r.surjective);
    CHECK(r.matrix.rows() == 3);
    CHECK(r.kernel_dim == 3);
  }
  auto r = restriction_matrix(atlas, {0, 1}, v);
  CHECK(r.surjective);
  CHECK(r.kernel_dim == 5);
}

TEST_CASE("module systems of the triangle") {
  LocusAtlas atlas(cy_degenerate_fiber(1), PrimeField());
  auto b0 = build_module_system(atlas, {0, 2}, 0, -1, 3);
  auto b1 = build_module_system(atlas, {0, 2}, 1, -1, 3);
  CHECK(b0.v_dim() == 6);
  CHECK(b0.dim(1) == 9);
  CHECK(b1.dim(1) == 3);
  CHECK(b1.dim(2) == 3);
}

TEST_CASE("atlas input errors") {
  CHECK_THROWS_AS(LocusAtlas(UnionSpec{2, {}}, PrimeField()), input_error);
  UnionSpec bad{2, {{"L", {Polynomial::variable(4, 0)}}}};
  CHECK_THROWS_AS(LocusAtlas(bad, PrimeField()), input_error);
  UnionSpec empty{1, {{"E", {Polynomial::variable(2, 0), Polynomial::variable(2, 1)}}}};
  CHECK_THROWS_AS(LocusAtlas(empty, PrimeField()), input_error);
}
