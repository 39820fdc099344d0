#include <doctest.h>

#include <random>

#include <omp.h>

#include "koszul/errors.hpp"
#include "koszul/exterior.hpp"
#include "koszul/koszul.hpp"
#include "koszul/scenarios.hpp"
#include "support.hpp"

using namespace koszul;
using testing::choose;

namespace {

SectionSystem projective_line(int d, const PrimeField& f, int q_hi = 3) {
  UnionSpec p1 = projective_space(1);
  return build_section_system(p1.components[0], 1, {0, d}, -1, q_hi, f);
}

/// M (+) N with V acting diagonally; both must share V and the stored range.
SectionSystem direct_sum(const SectionSystem& a, const SectionSystem& b) {
  std::vector<std::size_t> dims;
  std::vector<std::vector<SparseMatrix>> mult;
  for (int q = a.q_min(); q <= a.q_max(); ++q) dims.push_back(a.dim(q) + b.dim(q));
  for (int q = a.q_min(); q < a.q_max(); ++q) {
    std::vector<SparseMatrix> per_v;
    for (std::size_t i = 0; i < a.v_dim(); ++i) {
      const SparseMatrix& x = a.multiplication(q, i);
      const SparseMatrix& y = b.multiplication(q, i);
      auto t = x.triplets();
      for (auto e : y.triplets()) {
        e.row += static_cast<std::uint32_t>(x.rows());
        e.col += static_cast<std::uint32_t>(x.cols());
        t.push_back(e);
      }
      per_v.push_back(SparseMatrix::from_triplets(a.field(), x.rows() + y.rows(), x.cols() + y.cols(), t));
    }
    mult.push_back(std::move(per_v));
  }
  return SectionSystem(a.field(), "sum", a.v_dim(), a.q_min(), a.zero_below() && b.zero_below(),
                       dims, std::move(mult));
}

/// The submodule M_{>=q0} (upper) or the quotient M / M_{>=q0} (lower).
SectionSystem truncation(const SectionSystem& m, int q0, bool upper) {
  std::vector<std::size_t> dims;
  std::vector<std::vector<SparseMatrix>> mult;
  const int lo = upper ? q0 : m.q_min();
  for (int q = lo; q <= m.q_max(); ++q) dims.push_back(upper || q < q0 ? m.dim(q) : 0);
  for (int q = lo; q < m.q_max(); ++q) {
    std::vector<SparseMatrix> per_v;
    for (std::size_t i = 0; i < m.v_dim(); ++i)
      per_v.push_back(upper || q + 1 < q0
                          ? m.multiplication(q, i)
                          : SparseMatrix(m.field(), 0, q < q0 ? m.dim(q) : 0));
    mult.push_back(std::move(per_v));
  }
  return SectionSystem(m.field(), "truncation", m.v_dim(), lo, upper || m.zero_below(), dims,
                       std::move(mult));
}

}  // namespace

TEST_CASE("binomials and colex ranks") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(-1, 0) == 0);
  for (int n = 0; n <= 9; ++n)
    for (int p = 0; p <= n; ++p) {
      ExteriorBasis b(n, p);
      REQUIRE(b.size() == choose(n, p));
      std::vector<int> prev;
      for (std::uint64_t r = 0; r < b.size(); ++r) {
        auto s = b.unrank(r);
        CHECK(b.rank(s) == r);
        // Colex: compare from the largest element down.
        if (r > 0) CHECK(std::lexicographical_compare(prev.rbegin(), prev.rend(), s.rbegin(), s.rend()));
        prev = s;
      }
    }
  ExteriorBasis b(5, 2);
  CHECK_THROWS_AS(b.rank(std::vector<int>{2, 1}), input_error);
  CHECK_THROWS_AS(b.rank(std::vector<int>{1, 5}), input_error);
  CHECK_THROWS_AS(b.unrank(10), input_error);
}

TEST_CASE("rational normal curves match Eagon-Northcott counts") {
  for (std::uint32_t p : {32003u, 65521u}) {
    PrimeField f(p);
    for (int d = 2; d <= 6; ++d) {
      auto sys = projective_line(d, f);
      auto t = betti_table(sys, 0, d + 1, 0, 2);
      CHECK(t.at(0, 0) == 1);
      for (int q = 0; q <= 2; ++q)
        for (int pp = 0; pp <= d + 1; ++pp) {
          std::uint64_t want = 0;
          if (q == 0 && pp == 0) want = 1;
          if (q == 1 && pp >= 1) want = static_cast<std::uint64_t>(pp) * choose(d, pp + 1);
          CHECK(t.at(pp, q) == want);
        }
    }
  }
}

TEST_CASE("twisted cubic quadrics and projective normality") {
  PrimeField f;
  auto sys = projective_line(3, f);
  // Quadrics through the curve: dim Sym^2 V - dim M_2.
  const std::uint64_t h = sys.v_dim();
  CHECK(compute_cell(sys, 1, 1).dim_k == h * (h + 1) / 2 - sys.dim(2));
  CHECK(compute_cell(sys, 1, 1).dim_k == 3);
}

TEST_CASE("P^n with d=1 has a trivial Koszul table") {
  PrimeField f;
  for (int n = 1; n <= 4; ++n) {
    UnionSpec pn = projective_space(n);
    auto sys = build_section_system(pn.components[0], n, {0, 1}, -1, 4, f);
    auto t = betti_table(sys, 0, n + 1, 0, 3);
    for (const auto& [pq, c] : t.cells) CHECK(c.dim_k == (pq == std::pair{0, 0} ? 1u : 0u));
  }
}

TEST_CASE("complete intersections with d=1 have Koszul-complex tables") {
  PrimeField f(65521);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    const int e1 = 2 + static_cast<int>(rng() % 2), e2 = 2 + static_cast<int>(rng() % 2);
    ComponentSpec ci{"C", {Polynomial::random_form(4, e1, rng()), Polynomial::random_form(4, e2, rng())}};
    const int top = e1 + e2;
    auto sys = build_section_system(ci, 3, {0, 1}, -1, top, f);
    auto t = betti_table(sys, 0, 3, 0, top - 1);
    std::map<std::pair<int, int>, std::uint64_t> want;
    want[{0, 0}] += 1;
    want[{1, e1 - 1}] += 1;
    want[{1, e2 - 1}] += 1;
    want[{2, e1 + e2 - 2}] += 1;
    for (const auto& [pq, c] : t.cells) {
      auto it = want.find(pq);
      CHECK(c.dim_k == (it == want.end() ? 0 : it->second));
    }
  }
}

TEST_CASE("Koszul differentials square to zero on random geometries") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    PrimeField f(trial % 2 ? 65521 : 32003);
    const int n = 2 + static_cast<int>(rng() % 2);
    const int e = 2 + static_cast<int>(rng() % 2);
    const int d = 1 + static_cast<int>(rng() % 2);
    const int b = static_cast<int>(rng() % 3) - 1;
    ComponentSpec c{"X", {testing::random_polynomial(rng, n + 1, e)}};
    auto sys = build_section_system(c, n, {b, d}, -1, 3, f);
    for (int q = -1; q <= 1; ++q)
      for (int p = 1; p <= 3; ++p) CHECK(differential_squares_to_zero(sys, p, q));
  }
}

TEST_CASE("non-commuting actions break d o d = 0") {
  PrimeField f;
  // V of dimension 2 acting on k -> k^2 -> k^2 by non-commuting matrices.
  std::vector<std::vector<SparseMatrix>> mult(2);
  mult[0] = {SparseMatrix::from_triplets(f, 2, 1, {{0, 0, 1}}),
             SparseMatrix::from_triplets(f, 2, 1, {{1, 0, 1}})};
  mult[1] = {SparseMatrix::from_triplets(f, 2, 2, {{0, 1, 1}}),
             SparseMatrix::from_triplets(f, 2, 2, {{1, 0, 1}})};
  SectionSystem sys(f, "toy", 2, 0, true, {1, 2, 2}, mult);
  CHECK_FALSE(differential_squares_to_zero(sys, 1, 0));
}

TEST_CASE("Euler characteristic of each Koszul strand") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 5; ++trial) {
    PrimeField f;
    ComponentSpec c{"X", {testing::random_polynomial(rng, 3, 2 + static_cast<int>(rng() % 2))}};
    const int d = 1 + static_cast<int>(rng() % 2);
    const int l_max = 4;
    auto sys = build_section_system(c, 2, {0, d}, -1, l_max + 1, f);
    const int h = static_cast<int>(sys.v_dim());
    KoszulEngine eng;
    for (int l = 0; l <= l_max; ++l) {
      std::int64_t chi_k = 0, chi_c = 0;
      for (int q = 0; q <= l; ++q) {
        const std::int64_t sign = q % 2 ? -1 : 1;
        chi_k += sign * static_cast<std::int64_t>(eng.cell(sys, l - q, q).dim_k);
        chi_c += sign * static_cast<std::int64_t>(choose(h, l - q) * sys.dim(q));
      }
      CHECK(chi_k == chi_c);
    }
  }
}

TEST_CASE("engine memoises, persists and enforces the cap") {
  struct MapStore : CellStore {
    std::map<CellKey, KoszulCell> m;
    std::optional<KoszulCell> load(const CellKey& k) override {
      auto it = m.find(k);
      if (it == m.end()) return std::nullopt;
      return it->second;
    }
    void save(const CellKey& k, const KoszulCell& c) override { m[k] = c; }
  };
  PrimeField f;
  auto sys = projective_line(4, f);
  auto store = std::make_shared<MapStore>();
  KoszulEngine a({}, store);
  auto t1 = a.betti_table(sys, 0, 4, 0, 2);
  CHECK(a.stats().cells_computed == 15);
  a.cell(sys, 2, 1);
  CHECK(a.stats().cells_from_memory == 1);
  KoszulEngine b({}, store);
  auto t2 = b.betti_table(sys, 0, 4, 0, 2);
  CHECK(b.stats().cells_computed == 0);
  CHECK(b.stats().cells_from_store == 15);
  CHECK(t1.cells == t2.cells);

  EngineOptions tiny;
  tiny.cap = 10;
  KoszulEngine c(tiny);
  CHECK_THROWS_AS(c.cell(sys, 2, 1), resource_error);
  auto t3 = c.betti_table(sys, 0, 4, 0, 2);
  CHECK_FALSE(t3.gaps.empty());
  CHECK_FALSE(t3.at(2, 1).has_value());
  CHECK_THROWS_AS(c.cell(sys, -1, 1), range_error);
}

TEST_CASE("Betti tables do not depend on the thread count") {
  PrimeField f;
  auto sys = smooth_fiber(1, 3, 3, 11, f, -1, 3);
  omp_set_num_threads(1);
  auto one = betti_table(sys, 0, 8, 0, 2);
  omp_set_num_threads(4);
  auto four = betti_table(sys, 0, 8, 0, 2);
  CHECK(one.cells == four.cells);
}

TEST_CASE("differential shapes and entry estimates") {
  PrimeField f;
  auto sys = projective_line(3, f);
  auto d = koszul_differential(sys, 1, 1);
  CHECK(d.cols() == choose(4, 2) * sys.dim(1));
  CHECK(d.rows() == choose(4, 1) * sys.dim(2));
  CHECK(d.nnz() <= koszul_differential_entries(sys, 1, 1));
}

TEST_CASE("Koszul cohomology is additive on direct sums") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    PrimeField f(trial % 2 ? 65521 : 32003);
    ComponentSpec x{"X", {testing::random_polynomial(rng, 3, 3)}};
    ComponentSpec y{"Y", {testing::random_polynomial(rng, 3, 3)}};
    auto a = build_section_system(x, 2, {0, 2}, -1, 3, f);
    auto b = build_section_system(y, 2, {static_cast<int>(trial % 2), 2}, -1, 3, f);
    auto sum = direct_sum(a, b);
    auto ta = betti_table(a, 0, 4, 0, 2), tb = betti_table(b, 0, 4, 0, 2), ts = betti_table(sum, 0, 4, 0, 2);
    for (const auto& [pq, c] : ts.cells)
      CHECK(c.dim_k == ta.cells.at(pq).dim_k + tb.cells.at(pq).dim_k);
  }
}

TEST_CASE("Koszul cohomology is subadditive along a degree filtration") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    PrimeField f(trial % 2 ? 65521 : 32003);
    const int e = 2 + static_cast<int>(rng() % 2);
    ComponentSpec x{"X", {testing::random_polynomial(rng, 3, e)}};
    auto m = build_section_system(x, 2, {static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2)}, -1, 4, f);
    const int q0 = 1 + static_cast<int>(rng() % 2);
    auto sub = truncation(m, q0, true);
    auto quo = truncation(m, q0, false);
    auto tm = betti_table(m, 0, 3, 0, 3);
    auto tn = betti_table(sub, 0, 3, q0, 3);
    auto tq = betti_table(quo, 0, 3, 0, 3);
    bool strict = false;
    for (const auto& [pq, c] : tm.cells) {
      const std::uint64_t n = pq.second >= q0 ? tn.cells.at(pq).dim_k : 0;
      const std::uint64_t q = tq.cells.at(pq).dim_k;
      CHECK(c.dim_k <= n + q);
      strict |= c.dim_k < n + q;
    }
    // Truncating a module with generators in lower degrees creates new syzygies.
    CHECK(strict);
  }
}
