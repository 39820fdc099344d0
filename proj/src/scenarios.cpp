#include "koszul/scenarios.hpp"

#include <algorithm>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

std::string cell_name(const std::string& table, int p, int q) {
  return "K_{" + std::to_string(p) + "," + std::to_string(q) + "}(" + table + ")";
}

Verdict zero_claim(const NamedTable& t, int p, int q, const std::string& why) {
  Verdict v{cell_name(t.name, p, q) + " = 0" + (why.empty() ? "" : " (" + why + ")"),
            t.name, p, q, "0", t.table.at(p, q), VerdictStatus::gap};
  if (v.computed) v.status = *v.computed == 0 ? VerdictStatus::pass : VerdictStatus::violation;
  return v;
}

Verdict nonzero_claim(const NamedTable& t, int p, int q, const std::string& why, bool binding) {
  Verdict v{cell_name(t.name, p, q) + " != 0" + (why.empty() ? "" : " (" + why + ")"),
            t.name, p, q, "nonzero", t.table.at(p, q), VerdictStatus::gap};
  if (v.computed) {
    if (!binding)
      v.status = VerdictStatus::info;
    else
      v.status = *v.computed != 0 ? VerdictStatus::pass : VerdictStatus::violation;
  }
  return v;
}

Verdict observation(const NamedTable& t, int p, int q, const std::string& claim) {
  Verdict v{claim, t.name, p, q, "-", t.table.at(p, q), VerdictStatus::info};
  if (!v.computed) v.status = VerdictStatus::gap;
  return v;
}

void append(std::vector<Verdict>& to, std::vector<Verdict> from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

}  // namespace

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return "PASS";
    case VerdictStatus::violation: return "VIOLATION";
    case VerdictStatus::info: return "INFO";
    case VerdictStatus::gap: return "GAP";
  }
  return "?";
}

const BettiTable* ScenarioResult::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t.table;
  return nullptr;
}

bool ScenarioResult::has_violation() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.status == VerdictStatus::violation; });
}

bool ScenarioResult::has_gap() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.status == VerdictStatus::gap; });
}

UnionSpec cy_degenerate_fiber(int n) {
  if (n < 1) throw input_error("cy_degenerate_fiber needs n >= 1");
  if (n + 2 > Monomial::kMaxVars) throw input_error("at most 8 variables are supported");
  UnionSpec spec{n + 1, {}};
  for (int i = 0; i < n + 2; ++i)
    spec.components.push_back({"x" + std::to_string(i), {Polynomial::variable(n + 2, i)}});
  return spec;
}

UnionSpec projective_space(int n) {
  if (n < 1 || n + 1 > Monomial::kMaxVars) throw input_error("projective space needs 1 <= n <= 7");
  return UnionSpec{n, {{"P" + std::to_string(n), {}}}};
}

UnionSpec smooth_hypersurface(int n, int e, std::uint64_t seed) {
  if (n < 1 || n + 2 > Monomial::kMaxVars) throw input_error("hypersurface needs 1 <= n <= 6");
  if (e < 1) throw input_error("hypersurface degree must be >= 1");
  return UnionSpec{n + 1, {{"f", {Polynomial::random_form(n + 2, e, seed)}}}};
}

UnionSpec k3_union(int a, std::uint64_t seed) {
  if (a < 1) throw input_error("quartic union needs a >= 1");
  UnionSpec spec{3, {}};
  for (int i = 0; i < a; ++i)
    spec.components.push_back(
        {"S" + std::to_string(i), {Polynomial::random_form(4, 4, seed + static_cast<std::uint64_t>(i))}});
  return spec;
}

SectionSystem smooth_fiber(int n, int e, int d, std::uint64_t seed, const PrimeField& field,
                           int q_lo, int q_hi) {
  UnionSpec spec = smooth_hypersurface(n, e, seed);
  return build_section_system(spec.components[0], spec.ambient_dim, LineBundleSpec{0, d}, q_lo,
                              q_hi, field);
}

std::vector<Verdict> differential_verdicts(const SectionSystem& sys, const NamedTable& t) {
  std::vector<Verdict> out;
  const BettiTable& b = t.table;
  for (int q = b.q_lo; q <= b.q_hi; ++q)
    for (int p = std::max(1, b.p_lo); p <= b.p_hi; ++p) {
      if (!sys.has_multiplication(q - 1) || !sys.has_multiplication(q)) continue;
      if (!b.at(p, q)) continue;
      const bool ok = differential_squares_to_zero(sys, p, q - 1);
      out.push_back({"d o d = 0 through " + cell_name(t.name, p, q), t.name, p, q, "0",
                     std::nullopt, ok ? VerdictStatus::pass : VerdictStatus::violation});
    }
  return out;
}

std::vector<Verdict> semicontinuity_compare(const NamedTable& special, const NamedTable& general) {
  const BettiTable& s = special.table;
  const BettiTable& g = general.table;
  if (s.v_dim != g.v_dim || s.p_lo != g.p_lo || s.p_hi != g.p_hi || s.q_lo != g.q_lo ||
      s.q_hi != g.q_hi)
    return {{"semicontinuity " + special.name + " vs " + general.name +
                 ": incomparable (h0 " + std::to_string(s.v_dim) + " vs " +
                 std::to_string(g.v_dim) + " or different ranges)",
             special.name, 0, 0, "-", std::nullopt, VerdictStatus::info}};
  std::vector<Verdict> out;
  for (int q = s.q_lo; q <= s.q_hi; ++q)
    for (int p = s.p_lo; p <= s.p_hi; ++p) {
      auto a = s.at(p, q);
      auto b = g.at(p, q);
      Verdict v{cell_name(general.name, p, q) + " <= " + cell_name(special.name, p, q),
                general.name, p, q, a ? "<= " + std::to_string(*a) : "-", b,
                VerdictStatus::gap};
      if (a && b) v.status = *b <= *a ? VerdictStatus::pass : VerdictStatus::violation;
      out.push_back(std::move(v));
    }
  return out;
}

ScenarioResult theorem1_verdict(KoszulEngine& engine, int n, int d, std::uint64_t seed,
                                const PrimeField& field) {
  if (d < 1) throw input_error("d must be >= 1");
  ScenarioResult r;
  r.id = "theorem1";
  r.prime = field.modulus();
  r.parameters = {{"n", n}, {"d", d}, {"seed", static_cast<std::int64_t>(seed)}};

  LocusAtlas atlas(cy_degenerate_fiber(n), field);
  const LineBundleSpec bundle{0, d};
  const int h = static_cast<int>(sections_on_union(atlas, d).dim());
  const int p_hi = h - n - 1;
  r.thresholds["h"] = h;
  for (int q = 0; q <= n + 1; ++q) r.thresholds["bound_q" + std::to_string(q)] = (q - 1) * d - 3;

  SectionSystem special = build_section_system(atlas, bundle, -1, n + 2);
  NamedTable f0{"F0", engine.betti_table(special, 0, p_hi, 0, n + 1)};

  for (int q = 0; q <= n + 1; ++q)
    for (int p = 0; p <= std::min((q - 1) * d - 3, p_hi); ++p) {
      r.verdicts.push_back(zero_claim(f0, p, q, "direct form"));
      auto [dp, dq] = duality_reindex(h - 1, n, p, q);
      r.verdicts.push_back(zero_claim(f0, dp, dq, "dual form of p=" + std::to_string(p) +
                                                      ", q=" + std::to_string(q)));
    }
  if (r.verdicts.empty()) r.notes.push_back("vacuous: (q-1)d-3 < 0 for every q in [0, n+1]");
  r.verdicts.push_back(observation(f0, p_hi, n + 1, "boundary cell dual to K_{0,0}"));
  append(r.verdicts, differential_verdicts(special, f0));

  SectionSystem general = smooth_fiber(n, n + 2, d, seed, field, -1, n + 2);
  NamedTable xt{"X", engine.betti_table(general, 0, p_hi, 0, n + 1)};
  append(r.verdicts, semicontinuity_compare(f0, xt));
  append(r.verdicts, differential_verdicts(general, xt));

  // The vanishing quoted for P^n twists by -3; the canonical twist is -n-1.
  // Both are computed and reported.
  std::vector<int> twists{-3};
  if (n + 1 != 3) twists.push_back(-n - 1);
  for (int b : twists) {
    UnionSpec pn = projective_space(n);
    SectionSystem sys =
        build_section_system(pn.components[0], n, LineBundleSpec{b, d}, -1, n + 3, field);
    const std::string name = "P" + std::to_string(n) + "(b=" + std::to_string(b) + ")";
    const int pn_hi = std::min(static_cast<int>(sys.v_dim()), std::max(0, (n + 1) * d - 3));
    NamedTable t{name, engine.betti_table(sys, 0, pn_hi, 0, n + 2)};
    for (int q = 0; q <= n + 2; ++q)
      for (int p = 0; p <= std::min((q - 1) * d - 3, pn_hi); ++p) {
        Verdict v = zero_claim(t, p, q, "quoted vanishing for P^n");
        if (v.status != VerdictStatus::gap) v.status = VerdictStatus::info;
        r.verdicts.push_back(std::move(v));
      }
    r.tables.push_back(std::move(t));
  }
  r.tables.insert(r.tables.begin(), std::move(xt));
  r.tables.insert(r.tables.begin(), std::move(f0));
  return r;
}

ScenarioResult theorem2_verdict(KoszulEngine& engine, int a, int d, std::uint64_t seed,
                                const PrimeField& field) {
  if (a < 2) throw input_error("quartic union needs a >= 2");
  if (d < 1) throw input_error("d must be >= 1");
  ScenarioResult r;
  r.id = "theorem2";
  r.prime = field.modulus();
  r.parameters = {{"a", a}, {"d", d}, {"seed", static_cast<std::int64_t>(seed)}};
  r.notes.push_back("Picard number one of the quartic components is assumed, not verified");

  LocusAtlas atlas(k3_union(a, seed), field);
  const LineBundleSpec bundle{0, d};
  SectionSystem sys = build_section_system(atlas, bundle, -1, 2);
  const int h = static_cast<int>(sys.v_dim());
  const int t = h - 4 * d + 4;
  r.thresholds["h"] = h;
  r.thresholds["threshold"] = t;

  const int lo = std::max(0, t - 1), hi = std::min(t + 2, h);
  NamedTable f0{"F0", engine.betti_table(sys, lo, hi, 1, 1)};
  for (int p = lo; p <= hi; ++p) {
    if (p >= t)
      r.verdicts.push_back(zero_claim(f0, p, 1, "p >= h - 4d + 4"));
    else
      r.verdicts.push_back(nonzero_claim(f0, p, 1, "below the threshold", false));
  }
  append(r.verdicts, differential_verdicts(sys, f0));
  r.tables.push_back(std::move(f0));

  for (int i = 0; i < a; ++i) {
    const ComponentSpec& comp = atlas.spec().components[static_cast<std::size_t>(i)];
    SectionSystem cs = build_section_system(comp, 3, bundle, -1, 2, field);
    const int hi_h = static_cast<int>(cs.v_dim());
    const int ti = hi_h - 4 * d + 4;
    r.thresholds["threshold_" + comp.label] = ti;
    const int clo = std::max(0, ti - 1), chi = std::min(ti + 2, hi_h);
    NamedTable ct{comp.label, engine.betti_table(cs, clo, chi, 1, 1)};
    for (int p = clo; p <= chi; ++p) {
      if (p >= ti)
        r.verdicts.push_back(zero_claim(ct, p, 1, "iff p >= h0 - 4d + 4"));
      else
        r.verdicts.push_back(nonzero_claim(ct, p, 1, "iff p >= h0 - 4d + 4", true));
    }
    append(r.verdicts, differential_verdicts(cs, ct));
    r.tables.push_back(std::move(ct));
  }
  return r;
}

std::pair<int, int> duality_reindex(int r, int n, int p, int q) {
  if (n < 0 || p < 0 || p > r - n || q < 0 || q > n + 1)
    throw input_error("duality index (" + std::to_string(p) + ", " + std::to_string(q) +
                      ") outside 0 <= p <= " + std::to_string(r - n) + ", 0 <= q <= " +
                      std::to_string(n + 1));
  return {r - n - p, n + 1 - q};
}

ScenarioResult duality_report(KoszulEngine& engine, int n, int d, std::uint64_t seed,
                              const PrimeField& field) {
  if (d < 1) throw input_error("d must be >= 1");
  ScenarioResult r;
  r.id = "duality";
  r.prime = field.modulus();
  r.parameters = {{"n", n}, {"e", n + 2}, {"d", d}, {"seed", static_cast<std::int64_t>(seed)}};

  SectionSystem sys = smooth_fiber(n, n + 2, d, seed, field, -1, n + 2);
  const int rr = static_cast<int>(sys.v_dim()) - 1;
  r.thresholds["r"] = rr;
  NamedTable t{"X", engine.betti_table(sys, 0, rr - n, 0, n + 1)};
  for (int q = 0; q <= n + 1; ++q)
    for (int p = 0; p <= rr - n; ++p) {
      auto [dp, dq] = duality_reindex(rr, n, p, q);
      if (std::pair(q, p) > std::pair(dq, dp)) continue;
      auto a = t.table.at(p, q);
      auto b = t.table.at(dp, dq);
      Verdict v{"dim K_{" + std::to_string(p) + "," + std::to_string(q) + "} = dim K_{" +
                    std::to_string(dp) + "," + std::to_string(dq) + "}",
                t.name, p, q, b ? std::to_string(*b) : "-", a, VerdictStatus::gap};
      if (a && b) v.status = *a == *b ? VerdictStatus::pass : VerdictStatus::violation;
      r.verdicts.push_back(std::move(v));
    }
  append(r.verdicts, differential_verdicts(sys, t));
  r.tables.push_back(std::move(t));
  return r;
}

std::vector<Verdict> cross_prime_verdicts(const ScenarioResult& a, const ScenarioResult& b) {
  std::vector<Verdict> out;
  const std::string tag = std::to_string(a.prime) + " vs " + std::to_string(b.prime);
  for (const auto& ta : a.tables) {
    const BettiTable* tb = b.table(ta.name);
    for (const auto& [pq, cell] : ta.table.cells) {
      Verdict v{cell_name(ta.name, pq.first, pq.second) + " agrees over " + tag, ta.name,
                pq.first, pq.second, std::to_string(cell.dim_k), std::nullopt,
                VerdictStatus::gap};
      if (tb) v.computed = tb->at(pq.first, pq.second);
      if (v.computed)
        v.status = *v.computed == cell.dim_k ? VerdictStatus::pass : VerdictStatus::violation;
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace koszul
