#include "koszul/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#include <omp.h>

#include "koszul/nc_cohomology.hpp"
#include "koszul/scenarios.hpp"

namespace koszul::cli {

using nlohmann::json;

namespace {

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json to_json(const NamedTable& t) {
  const BettiTable& b = t.table;
  json cells = json::array();
  for (const auto& [pq, c] : b.cells)
    cells.push_back({{"p", c.p},
                     {"q", c.q},
                     {"dim", c.dim_k},
                     {"dim_left", c.dim_left},
                     {"dim_middle", c.dim_middle},
                     {"dim_right", c.dim_right},
                     {"rank_in", c.rank_in},
                     {"rank_out", c.rank_out}});
  json gaps = json::array();
  for (const auto& [pq, why] : b.gaps)
    gaps.push_back({{"p", pq.first}, {"q", pq.second}, {"reason", why}});
  return {{"name", t.name},
          {"description", b.description},
          {"system_hash", hex(b.system_hash)},
          {"h0", b.v_dim},
          {"p_range", {b.p_lo, b.p_hi}},
          {"q_range", {b.q_lo, b.q_hi}},
          {"cells", cells},
          {"gaps", gaps}};
}

json to_json(const Verdict& v) {
  return {{"claim", v.claim},
          {"table", v.table},
          {"p", v.p},
          {"q", v.q},
          {"predicted", v.predicted},
          {"computed", v.computed ? json(*v.computed) : json(nullptr)},
          {"status", to_string(v.status)}};
}

json to_json(const HypothesisReport& h) {
  json restrictions = json::array();
  for (const auto& r : h.restrictions)
    restrictions.push_back({{"locus", face_label(r.face)},
                            {"target_dim", r.target_dim},
                            {"kernel_dim", r.kernel_dim},
                            {"surjective", r.surjective}});
  json b = json::array();
  for (std::size_t i = 0; i < h.b_cohomology.size(); ++i)
    b.push_back({{"q", h.q_lo + static_cast<int>(i)},
                 {"dims", h.b_cohomology[i]},
                 {"union_sections", h.union_sections[i]}});
  return {{"q_range", {h.q_lo, h.q_hi}},
          {"higher_cohomology", to_string(h.higher_cohomology)},
          {"negative_twists", to_string(h.negative_twists)},
          {"restrictions_surjective", to_string(h.restrictions_surjective)},
          {"first_step_exact", to_string(h.first_step_exact)},
          {"B_acyclic", to_string(h.B_acyclic)},
          {"all_hold", h.all_hold()},
          {"restrictions", restrictions},
          {"B_cohomology", b}};
}

json opt_int(const std::optional<int>& x) { return x ? json(*x) : json(nullptr); }

struct KindOutput {
  ScenarioResult result;
  json extra = json::object();
  bool not_applicable = false;
};

SectionSystem system_for(const UnionSpec& spec, const LineBundleSpec& bundle, int q_lo, int q_hi,
                         const PrimeField& f, std::unique_ptr<LocusAtlas>& atlas) {
  if (spec.components.size() == 1)
    return build_section_system(spec.components[0], spec.ambient_dim, bundle, q_lo, q_hi, f);
  atlas = std::make_unique<LocusAtlas>(spec, f);
  return build_section_system(*atlas, bundle, q_lo, q_hi);
}

void add_union_extras(json& extra, const LocusAtlas& atlas, const LineBundleSpec& bundle, int q_lo,
                      int q_hi) {
  extra["hypotheses"] = to_json(hypothesis_report(atlas, bundle, q_lo, q_hi));
  extra["structure_sheaf_acyclic"] = to_string(structure_sheaf_acyclic(atlas));
  extra["dual_complex_cohomology"] = simplicial_cohomology(dual_complex(atlas));
}

KindOutput run_betti(const ScenarioFile& s, KoszulEngine& eng, const PrimeField& f) {
  KindOutput out;
  out.result.id = "betti";
  out.result.parameters = {{"b", s.bundle.b}, {"d", s.bundle.d}};
  const auto [q_lo, q_hi] = s.q_range.value_or(std::pair{0, 2});
  std::unique_ptr<LocusAtlas> atlas;
  SectionSystem sys = system_for(s.geometry->build(), s.bundle, q_lo - 1, q_hi + 1, f, atlas);
  const auto [p_lo, p_hi] = s.p_range.value_or(std::pair{0, static_cast<int>(sys.v_dim())});
  NamedTable t{"M", eng.betti_table(sys, p_lo, p_hi, q_lo, q_hi)};
  out.result.thresholds["h0"] = static_cast<std::int64_t>(sys.v_dim());
  if (s.check_differentials) out.result.verdicts = differential_verdicts(sys, t);
  out.result.tables.push_back(std::move(t));
  if (atlas) add_union_extras(out.extra, *atlas, s.bundle, std::max(q_lo, 0), q_hi);
  return out;
}

KindOutput run_semicontinuity(const ScenarioFile& s, KoszulEngine& eng, const PrimeField& f) {
  KindOutput out;
  out.result.id = "semicontinuity";
  out.result.parameters = {{"b", s.bundle.b}, {"d", s.bundle.d}};
  const auto [q_lo, q_hi] = s.q_range.value_or(std::pair{0, 2});
  std::unique_ptr<LocusAtlas> sa, ga;
  SectionSystem special = system_for(s.special->build(), s.bundle, q_lo - 1, q_hi + 1, f, sa);
  SectionSystem general = system_for(s.general->build(), s.bundle, q_lo - 1, q_hi + 1, f, ga);
  const auto [p_lo, p_hi] = s.p_range.value_or(std::pair{0, static_cast<int>(special.v_dim())});
  NamedTable st{"special", eng.betti_table(special, p_lo, p_hi, q_lo, q_hi)};
  NamedTable gt{"general", eng.betti_table(general, p_lo, p_hi, q_lo, q_hi)};
  out.result.thresholds["h0_special"] = static_cast<std::int64_t>(special.v_dim());
  out.result.thresholds["h0_general"] = static_cast<std::int64_t>(general.v_dim());
  out.result.verdicts = semicontinuity_compare(st, gt);
  if (s.check_differentials) {
    auto a = differential_verdicts(special, st);
    auto b = differential_verdicts(general, gt);
    out.result.verdicts.insert(out.result.verdicts.end(), a.begin(), a.end());
    out.result.verdicts.insert(out.result.verdicts.end(), b.begin(), b.end());
  }
  out.result.tables.push_back(std::move(st));
  out.result.tables.push_back(std::move(gt));
  return out;
}

KindOutput run_lemma1(const ScenarioFile& s, KoszulEngine& eng, const PrimeField& f) {
  KindOutput out;
  out.result.id = "lemma1";
  out.result.parameters = {{"b", s.bundle.b}, {"d", s.bundle.d}};
  LocusAtlas atlas(s.geometry->build(), f);
  Lemma1Report rep = lemma1_verify(eng, atlas, s.bundle, s.q_values, s.l_values);
  out.not_applicable = !rep.applicable;
  out.result.thresholds["h0"] = static_cast<std::int64_t>(rep.h0);
  out.result.thresholds["dimension"] = rep.dimension;

  int l_max = 0, q_max = 0;
  for (int l : s.l_values) l_max = std::max(l_max, l);
  for (int q : s.q_values) q_max = std::max(q_max, q);
  const int top = std::max(l_max, q_max);
  SectionSystem whole = build_section_system(atlas, s.bundle, -1, top + 1);
  NamedTable d{"D", eng.betti_table(whole, 0, l_max, 0, q_max)};
  for (const auto& pr : rep.predictions) {
    Verdict v{"K_{" + std::to_string(pr.l - pr.q) + "," + std::to_string(pr.q) + "}(D) = " +
                  std::to_string(pr.predicted) + " at l=" + std::to_string(pr.l) + " [" +
                  pr.status + "]",
              "D", pr.l - pr.q, pr.q, std::to_string(pr.predicted), pr.computed,
              VerdictStatus::info};
    if (pr.status == "VERIFIED") v.status = VerdictStatus::pass;
    if (pr.status == "MISMATCH") v.status = VerdictStatus::violation;
    if (pr.status == "GAP") v.status = VerdictStatus::gap;
    out.result.verdicts.push_back(std::move(v));
  }
  if (s.check_differentials) {
    auto dv = differential_verdicts(whole, d);
    out.result.verdicts.insert(out.result.verdicts.end(), dv.begin(), dv.end());
  }
  out.result.tables.push_back(std::move(d));

  std::map<int, std::pair<int, int>> module_rows;   // p -> q range over E1 terms
  for (const auto& e : rep.e1_terms) {
    auto [it, fresh] = module_rows.try_emplace(e.p, e.q, e.q);
    it->second.first = std::min(it->second.first, e.q);
    it->second.second = std::max(it->second.second, e.q);
  }
  std::map<int, NamedTable> modules;
  for (const auto& [p, rows] : module_rows) {
    SectionSystem m = build_module_system(atlas, s.bundle, p, -1, top + 1);
    modules.emplace(p, NamedTable{"B" + std::to_string(p),
                                  eng.betti_table(m, 0, l_max, rows.first, rows.second)});
  }
  for (const auto& e : rep.e1_terms) {
    const NamedTable& t = modules.at(e.p);
    Verdict v{"K_{" + std::to_string(e.l - e.q) + "," + std::to_string(e.q) + "}(" + t.name +
                  ", V) = 0 (E1 term at l=" + std::to_string(e.l) + ")",
              t.name, e.l - e.q, e.q, "0", e.dim, VerdictStatus::gap};
    if (e.dim)
      v.status = !rep.applicable ? VerdictStatus::info
                 : *e.dim == 0   ? VerdictStatus::pass
                                 : VerdictStatus::violation;
    out.result.verdicts.push_back(std::move(v));
  }
  for (auto& [p, t] : modules) out.result.tables.push_back(std::move(t));
  for (const auto& g : rep.gaps) out.result.notes.push_back("gap: " + g);

  json spans = json::array();
  for (std::size_t q = 0; q < rep.spans.size(); ++q)
    for (const auto& sp : rep.spans[q])
      spans.push_back({{"q", q}, {"locus", face_label(sp.face)}, {"h0", sp.h0}, {"s", opt_int(sp.s)}});
  json svals = json::array();
  for (const auto& x : rep.s) svals.push_back(opt_int(x));
  out.extra = {{"applicable", rep.applicable},
               {"hypotheses", to_json(rep.hypotheses)},
               {"structure_sheaf_acyclic", to_string(structure_sheaf_acyclic(atlas))},
               {"B0_cohomology", rep.b0_cohomology},
               {"s", svals},
               {"vanishing_spans", spans}};
  return out;
}

KindOutput run_simplicial(const ScenarioFile& s, const PrimeField& f) {
  KindOutput out;
  out.result.id = "simplicial";
  SimplicialComplex delta;
  std::optional<std::vector<std::size_t>> expected = s.expected_cohomology;
  if (s.geometry) {
    LocusAtlas atlas(s.geometry->build(), f);
    delta = dual_complex(atlas);
    if (!expected && s.geometry->type == "coordinate_hyperplanes") {
      // The coordinate hyperplanes of P^{n+1} meet like the boundary of an
      // (n+1)-simplex, an n-sphere.
      std::vector<std::size_t> sphere(static_cast<std::size_t>(s.geometry->n) + 1, 0);
      sphere.front() += 1;
      sphere.back() += 1;
      expected = sphere;
    }
  } else {
    delta = simplicial_complex_from_faces(s.complex->n_vertices, s.complex->maximal_faces, f);
  }
  auto h = simplicial_cohomology(delta);
  std::vector<std::size_t> counts;
  for (const auto& fs : delta.faces) counts.push_back(fs.size());
  out.extra = {{"cohomology", h}, {"face_counts", counts}};
  if (expected) {
    const std::size_t len = std::max(h.size(), expected->size());
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t want = i < expected->size() ? (*expected)[i] : 0;
      const std::size_t got = i < h.size() ? h[i] : 0;
      out.result.verdicts.push_back({"dim H^" + std::to_string(i) + "(Delta) = " + std::to_string(want),
                                     "Delta", static_cast<int>(i), 0, std::to_string(want), got,
                                     got == want ? VerdictStatus::pass : VerdictStatus::violation});
    }
  }
  return out;
}

KindOutput run_kind(const ScenarioFile& s, KoszulEngine& eng, const PrimeField& f) {
  KindOutput out;
  if (s.kind == "betti") {
    out = run_betti(s, eng, f);
  } else if (s.kind == "semicontinuity") {
    out = run_semicontinuity(s, eng, f);
  } else if (s.kind == "lemma1") {
    out = run_lemma1(s, eng, f);
  } else if (s.kind == "simplicial") {
    out = run_simplicial(s, f);
  } else if (s.kind == "theorem1") {
    out.result = theorem1_verdict(eng, s.n, s.d, s.seed, f);
    LocusAtlas atlas(cy_degenerate_fiber(s.n), f);
    out.extra["structure_sheaf_acyclic"] = to_string(structure_sheaf_acyclic(atlas));
    out.extra["dual_complex_cohomology"] = simplicial_cohomology(dual_complex(atlas));
  } else if (s.kind == "theorem2") {
    out.result = theorem2_verdict(eng, s.a, s.d, s.seed, f);
    LocusAtlas atlas(k3_union(s.a, s.seed), f);
    out.extra["structure_sheaf_acyclic"] = to_string(structure_sheaf_acyclic(atlas));
  } else if (s.kind == "duality") {
    out.result = duality_report(eng, s.n, s.d, s.seed, f);
  } else {
    throw input_error("unknown scenario kind '" + s.kind + "'");
  }
  out.result.prime = f.modulus();
  if (!s.check_differentials)
    std::erase_if(out.result.verdicts,
                  [](const Verdict& v) { return v.claim.rfind("d o d", 0) == 0; });
  return out;
}

json result_json(const KindOutput& k) {
  const ScenarioResult& r = k.result;
  json tables = json::array();
  for (const auto& t : r.tables) tables.push_back(to_json(t));
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
  return {{"id", r.id},
          {"prime", r.prime},
          {"parameters", r.parameters},
          {"thresholds", r.thresholds},
          {"tables", tables},
          {"verdicts", verdicts},
          {"notes", r.notes},
          {"hypotheses_applicable", !k.not_applicable},
          {"extra", k.extra}};
}

}  // namespace

json run_scenario(const ScenarioFile& s, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::uint32_t> primes = s.primes;
  if (options.prime) primes = {*options.prime};
  EngineOptions eo;
  eo.cap = options.cap.value_or(s.cap);
  KoszulEngine engine(eo, options.store);

  std::vector<KindOutput> outputs;
  for (std::uint32_t p : primes) outputs.push_back(run_kind(s, engine, PrimeField(p)));

  json doc;
  doc["tool"] = {{"name", "koszul"}, {"version", kToolVersion}};
  doc["schema_version"] = kSchemaVersion;
  doc["input_hash"] = hex(fnv1a(s.source.dump()));
  doc["scenario"] = s.source;
  doc["kind"] = s.kind;
  doc["name"] = s.name;
  doc["primes"] = primes;
  doc["cap"] = eo.cap;
  json results = json::array();
  for (const auto& o : outputs) results.push_back(result_json(o));
  doc["results"] = results;

  std::vector<Verdict> cross;
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    auto v = cross_prime_verdicts(outputs[0].result, outputs[i].result);
    cross.insert(cross.end(), v.begin(), v.end());
  }
  json cj = json::array();
  for (const auto& v : cross) cj.push_back(to_json(v));
  doc["cross_prime"] = cj;

  std::map<std::string, std::size_t> counts{{"PASS", 0}, {"VIOLATION", 0}, {"INFO", 0}, {"GAP", 0}};
  auto tally = [&](const Verdict& v) { ++counts[to_string(v.status)]; };
  bool not_applicable = false;
  bool has_gap_cells = false;
  for (const auto& o : outputs) {
    std::for_each(o.result.verdicts.begin(), o.result.verdicts.end(), tally);
    not_applicable = not_applicable || o.not_applicable;
    for (const auto& t : o.result.tables) has_gap_cells = has_gap_cells || !t.table.gaps.empty();
  }
  std::for_each(cross.begin(), cross.end(), tally);
  int code = kExitOk;
  if (counts["VIOLATION"])
    code = kExitViolation;
  else if (counts["GAP"] || has_gap_cells)
    code = kExitResource;
  else if (not_applicable)
    code = kExitNotApplicable;
  doc["summary"] = {{"pass", counts["PASS"]},
                    {"violation", counts["VIOLATION"]},
                    {"info", counts["INFO"]},
                    {"gap", counts["GAP"]},
                    {"hypotheses_applicable", !not_applicable},
                    {"exit_code", code}};

  const EngineStats st = engine.stats();
  json cells = json::array();
  for (const auto& [key, secs] : engine.timings())
    cells.push_back({{"system_hash", hex(key.system_hash)},
                     {"prime", key.prime},
                     {"p", key.p},
                     {"q", key.q},
                     {"seconds", secs}});
  doc["run"] = {
      {"threads", omp_get_max_threads()},
      {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
      {"cache",
       {{"cells_computed", st.cells_computed},
        {"cells_from_memory", st.cells_from_memory},
        {"cells_from_store", st.cells_from_store}}},
      {"cell_timings", cells}};
  return doc;
}

int exit_code(const json& doc) { return doc.at("summary").at("exit_code").get<int>(); }

std::string deterministic_dump(const json& doc) {
  json copy = doc;
  copy.erase("run");
  return copy.dump(2);
}

namespace {

std::string betti_block(const json& t) {
  const int p_lo = t["p_range"][0], p_hi = t["p_range"][1];
  const int q_lo = t["q_range"][0], q_hi = t["q_range"][1];
  std::map<std::pair<int, int>, std::string> entry;
  std::map<int, std::uint64_t> totals;
  for (const auto& c : t["cells"]) {
    const int p = c["p"], q = c["q"];
    const std::uint64_t dim = c["dim"];
    entry[{p, q}] = dim == 0 ? "." : std::to_string(dim);
    totals[p] += dim;
  }
  for (const auto& g : t["gaps"]) entry[{g["p"].get<int>(), g["q"].get<int>()}] = "?";
  std::size_t w = 2;
  for (const auto& [k, v] : entry) w = std::max(w, v.size());
  for (const auto& [k, v] : totals) w = std::max(w, std::to_string(v).size());
  w += 1;
  std::ostringstream os;
  os << std::setw(7) << "";
  for (int p = p_lo; p <= p_hi; ++p) os << std::setw(static_cast<int>(w)) << p;
  os << "\n" << std::setw(7) << "total:";
  for (int p = p_lo; p <= p_hi; ++p) os << std::setw(static_cast<int>(w)) << totals[p];
  os << "\n";
  for (int q = q_lo; q <= q_hi; ++q) {
    os << std::setw(6) << q << ":";
    for (int p = p_lo; p <= p_hi; ++p) {
      auto it = entry.find({p, q});
      os << std::setw(static_cast<int>(w)) << (it == entry.end() ? "-" : it->second);
    }
    os << "\n";
  }
  return os.str();
}

std::string tuple(const json& arr) {
  std::string s = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ", ";
    s += arr[i].is_null() ? std::string("inf") : arr[i].dump();
  }
  return s + ")";
}

void verdict_lines(std::ostringstream& os, const json& verdicts) {
  std::size_t dd = 0, dd_bad = 0;
  for (const auto& v : verdicts) {
    const std::string claim = v["claim"];
    const std::string status = v["status"];
    if (claim.rfind("d o d", 0) == 0) {
      ++dd;
      if (status != "PASS") {
        ++dd_bad;
        os << "  " << std::left << std::setw(10) << status << std::right << claim << "\n";
      }
      continue;
    }
    os << "  " << std::left << std::setw(10) << status << std::right << claim;
    if (!v["computed"].is_null()) os << "  [computed " << v["computed"].dump() << "]";
    os << "\n";
  }
  if (dd) os << "  d o d = 0 checked on " << dd << " differential pairs, " << dd - dd_bad << " PASS\n";
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream os;
  os << "koszul " << doc["tool"]["version"].get<std::string>() << "  scenario '"
     << doc["name"].get<std::string>() << "' (" << doc["kind"].get<std::string>() << ")\n";
  for (const auto& r : doc["results"]) {
    os << "\n== prime " << r["prime"].dump() << " ==\n";
    if (!r["parameters"].empty()) {
      os << "parameters:";
      for (const auto& [k, v] : r["parameters"].items()) os << " " << k << "=" << v.dump();
      os << "\n";
    }
    if (!r["thresholds"].empty()) {
      os << "values:";
      for (const auto& [k, v] : r["thresholds"].items()) os << " " << k << "=" << v.dump();
      os << "\n";
    }
    for (const auto& t : r["tables"]) {
      os << "\n" << t["name"].get<std::string>() << ": " << t["description"].get<std::string>()
         << ", h0 = " << t["h0"].dump() << "\n"
         << betti_block(t);
      for (const auto& g : t["gaps"])
        os << "  gap K_{" << g["p"].dump() << "," << g["q"].dump() << "}: "
           << g["reason"].get<std::string>() << "\n";
    }
    const json& x = r["extra"];
    if (x.contains("cohomology")) os << "\nH^*(Delta) = " << tuple(x["cohomology"]) << "\n";
    if (x.contains("dual_complex_cohomology"))
      os << "dual complex cohomology " << tuple(x["dual_complex_cohomology"]) << "\n";
    if (x.contains("structure_sheaf_acyclic"))
      os << "structure sheaves acyclic: " << x["structure_sheaf_acyclic"].get<std::string>() << "\n";
    if (x.contains("hypotheses")) {
      const json& h = x["hypotheses"];
      os << "hypotheses:";
      for (const char* k : {"higher_cohomology", "negative_twists",
                            "restrictions_surjective", "first_step_exact",
                            "B_acyclic"})
        os << " " << k << "=" << h[k].get<std::string>();
      os << "\n";
      for (const auto& b : h["B_cohomology"])
        os << "  H^*(B_" << b["q"].dump() << ") = " << tuple(b["dims"])
           << ", sections on the union " << b["union_sections"].dump() << "\n";
    }
    if (x.contains("s")) os << "vanishing spans s_q = " << tuple(x["s"]) << "\n";
    if (x.contains("B0_cohomology")) os << "H^*(B_0) = " << tuple(x["B0_cohomology"]) << "\n";
    for (const auto& n : r["notes"]) os << "note: " << n.get<std::string>() << "\n";
    if (!r["verdicts"].empty()) {
      os << "\nverdicts:\n";
      verdict_lines(os, r["verdicts"]);
    }
  }
  if (!doc["cross_prime"].empty()) {
    std::size_t agree = 0;
    for (const auto& v : doc["cross_prime"]) agree += v["status"] == "PASS";
    os << "\ncross-prime agreement: " << agree << " of " << doc["cross_prime"].size()
       << " cells agree\n";
    for (const auto& v : doc["cross_prime"])
      if (v["status"] != "PASS")
        os << "  " << v["status"].get<std::string>() << " " << v["claim"].get<std::string>() << "\n";
  }
  const json& s = doc["summary"];
  os << "\nsummary: " << s["pass"].dump() << " pass, " << s["violation"].dump() << " violation, "
     << s["info"].dump() << " info, " << s["gap"].dump() << " gap; exit " << s["exit_code"].dump()
     << "\n";
  return os.str();
}

std::string render_csv(const json& doc) {
  std::ostringstream os;
  os << "prime,table,p,q,dim,dim_middle,rank_in,rank_out\n";
  for (const auto& r : doc["results"])
    for (const auto& t : r["tables"]) {
      for (const auto& c : t["cells"])
        os << r["prime"].dump() << "," << t["name"].get<std::string>() << "," << c["p"].dump()
           << "," << c["q"].dump() << "," << c["dim"].dump() << "," << c["dim_middle"].dump() << ","
           << c["rank_in"].dump() << "," << c["rank_out"].dump() << "\n";
      for (const auto& g : t["gaps"])
        os << r["prime"].dump() << "," << t["name"].get<std::string>() << "," << g["p"].dump()
           << "," << g["q"].dump() << ",,,,\n";
    }
  return os.str();
}

}  // namespace koszul::cli
