#include "koszul/cli/scenario_file.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "koszul/field.hpp"
#include "koszul/scenarios.hpp"

namespace koszul::cli {

using nlohmann::json;

namespace {

std::string join_messages(const std::vector<Diagnostic>& d) {
  std::string out;
  for (const auto& x : d) {
    if (!out.empty()) out += "; ";
    out += x.field + ": " + x.message;
  }
  return out;
}

/// Collects diagnostics with a best-effort line number for each JSON pointer:
/// the keys on the path are searched for in order in the raw text.
class Validator {
 public:
  explicit Validator(const std::string& text) : text_(text) {}

  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

  void error(const std::string& path, const std::string& message) {
    diags_.push_back({path.empty() ? "/" : path, line_of(path), message});
  }

  bool object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    error(path, "expected an object");
    return false;
  }

  void keys(const json& obj, const std::string& path, const std::set<std::string>& allowed,
            const std::set<std::string>& required) {
    for (const auto& [k, v] : obj.items())
      if (!allowed.count(k)) error(path + "/" + k, "unknown key");
    for (const auto& k : required)
      if (!obj.contains(k)) error(path + "/" + k, "required key is missing");
  }

  std::optional<std::int64_t> integer(const json& obj, const std::string& path,
                                      const std::string& key, std::int64_t lo, std::int64_t hi) {
    if (!obj.contains(key)) return std::nullopt;
    return integer_value(obj.at(key), path + "/" + key, lo, hi);
  }

  std::optional<std::int64_t> integer_value(const json& v, const std::string& where,
                                            std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) {
      error(where, "expected an integer");
      return std::nullopt;
    }
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
      error(where, "must be <= " + std::to_string(hi));
      return std::nullopt;
    }
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi) {
      error(where, x < lo ? "must be >= " + std::to_string(lo) : "must be <= " + std::to_string(hi));
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::uint64_t> seed(const json& obj, const std::string& path) {
    if (!obj.contains("seed")) return std::nullopt;
    const json& v = obj.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      error(path + "/seed", "expected a non-negative integer");
      return std::nullopt;
    }
    return v.get<std::uint64_t>();
  }

  std::optional<std::string> string(const json& obj, const std::string& path,
                                    const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj.at(key).is_string()) {
      error(path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return obj.at(key).get<std::string>();
  }

  std::optional<std::vector<std::int64_t>> int_array(const json& obj, const std::string& path,
                                                     const std::string& key, std::int64_t lo,
                                                     std::int64_t hi) {
    if (!obj.contains(key)) return std::nullopt;
    const json& arr = obj.at(key);
    const std::string where = path + "/" + key;
    if (!arr.is_array()) {
      error(where, "expected an array of integers");
      return std::nullopt;
    }
    std::vector<std::int64_t> out;
    bool ok = true;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      auto x = integer_value(arr[i], where + "/" + std::to_string(i), lo, hi);
      if (x)
        out.push_back(*x);
      else
        ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::pair<int, int>> range(const json& obj, const std::string& path,
                                           const std::string& key, int lo, int hi) {
    auto v = int_array(obj, path, key, lo, hi);
    if (!v) return std::nullopt;
    if (v->size() != 2 || (*v)[0] > (*v)[1]) {
      error(path + "/" + key, "expected [low, high] with low <= high");
      return std::nullopt;
    }
    return std::pair{static_cast<int>((*v)[0]), static_cast<int>((*v)[1])};
  }

 private:
  int line_of(const std::string& path) const {
    std::size_t pos = 0;
    bool found = false;
    std::stringstream ss(path);
    std::string token;
    while (std::getline(ss, token, '/')) {
      if (token.empty() || std::all_of(token.begin(), token.end(), ::isdigit)) continue;
      auto at = text_.find("\"" + token + "\"", pos);
      if (at == std::string::npos) break;
      pos = at;
      found = true;
    }
    if (!found) return 0;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  const std::string& text_;
  std::vector<Diagnostic> diags_;
};

std::optional<Polynomial> parse_generator(Validator& v, const json& g, const std::string& where,
                                          int n_vars) {
  if (!g.is_array() || g.empty()) {
    v.error(where, "expected a non-empty array of [coefficient, [exponents]] terms");
    return std::nullopt;
  }
  std::vector<std::pair<Monomial, std::int64_t>> terms;
  int degree = -1;
  for (std::size_t t = 0; t < g.size(); ++t) {
    const std::string tw = where + "/" + std::to_string(t);
    const json& term = g[t];
    if (!term.is_array() || term.size() != 2 || !term[1].is_array()) {
      v.error(tw, "expected [coefficient, [exponents]]");
      return std::nullopt;
    }
    auto c = v.integer_value(term[0], tw + "/0", -(std::int64_t{1} << 40), std::int64_t{1} << 40);
    if (!c) return std::nullopt;
    if (term[1].size() != static_cast<std::size_t>(n_vars)) {
      v.error(tw + "/1", "expected " + std::to_string(n_vars) + " exponents");
      return std::nullopt;
    }
    std::vector<int> exps;
    for (std::size_t i = 0; i < term[1].size(); ++i) {
      auto e = v.integer_value(term[1][i], tw + "/1/" + std::to_string(i), 0, 255);
      if (!e) return std::nullopt;
      exps.push_back(static_cast<int>(*e));
    }
    Monomial m(exps);
    if (degree >= 0 && m.degree() != degree) {
      v.error(tw, "generator is not homogeneous");
      return std::nullopt;
    }
    degree = m.degree();
    terms.emplace_back(std::move(m), *c);
  }
  Polynomial p(n_vars, std::move(terms));
  if (p.is_zero()) {
    v.error(where, "generator is zero");
    return std::nullopt;
  }
  return p;
}

std::optional<GeometrySpec> parse_geometry(Validator& v, const json& obj, const std::string& key) {
  if (!obj.contains(key)) return std::nullopt;
  const json& g = obj.at(key);
  const std::string path = "/" + key;
  if (!v.object(g, path)) return std::nullopt;
  auto type = v.string(g, path, "type");
  if (!type) {
    if (!g.contains("type")) v.error(path + "/type", "required key is missing");
    return std::nullopt;
  }
  GeometrySpec s;
  s.type = *type;
  const std::size_t before = v.diagnostics().size();
  if (s.type == "projective_space") {
    v.keys(g, path, {"type", "n"}, {"n"});
    s.n = static_cast<int>(v.integer(g, path, "n", 1, 7).value_or(0));
  } else if (s.type == "coordinate_hyperplanes") {
    v.keys(g, path, {"type", "n"}, {"n"});
    s.n = static_cast<int>(v.integer(g, path, "n", 1, 6).value_or(0));
  } else if (s.type == "hypersurface") {
    v.keys(g, path, {"type", "n", "degree", "seed"}, {"n", "degree"});
    s.n = static_cast<int>(v.integer(g, path, "n", 1, 6).value_or(0));
    s.degree = static_cast<int>(v.integer(g, path, "degree", 1, 64).value_or(0));
    s.seed = v.seed(g, path).value_or(0);
  } else if (s.type == "quartic_union") {
    v.keys(g, path, {"type", "a", "seed"}, {"a"});
    s.a = static_cast<int>(v.integer(g, path, "a", 1, 16).value_or(0));
    s.seed = v.seed(g, path).value_or(0);
  } else if (s.type == "union") {
    v.keys(g, path, {"type", "ambient_dim", "components"}, {"ambient_dim", "components"});
    auto dim = v.integer(g, path, "ambient_dim", 1, Monomial::kMaxVars - 1);
    if (dim && g.contains("components")) {
      s.explicit_union.ambient_dim = static_cast<int>(*dim);
      const json& comps = g.at("components");
      const std::string cw = path + "/components";
      if (!comps.is_array() || comps.empty()) {
        v.error(cw, "expected a non-empty array of components");
      } else {
        for (std::size_t i = 0; i < comps.size(); ++i) {
          const std::string w = cw + "/" + std::to_string(i);
          if (!v.object(comps[i], w)) continue;
          v.keys(comps[i], w, {"label", "generators"}, {"generators"});
          ComponentSpec c;
          c.label = v.string(comps[i], w, "label").value_or("D" + std::to_string(i));
          if (!comps[i].contains("generators")) continue;
          const json& gens = comps[i].at("generators");
          if (!gens.is_array()) {
            v.error(w + "/generators", "expected an array of generators");
            continue;
          }
          for (std::size_t k = 0; k < gens.size(); ++k)
            if (auto p = parse_generator(v, gens[k], w + "/generators/" + std::to_string(k),
                                         s.explicit_union.n_vars()))
              c.generators.push_back(std::move(*p));
          s.explicit_union.components.push_back(std::move(c));
        }
      }
    }
  } else {
    v.error(path + "/type",
            "unknown geometry type '" + s.type +
                "' (projective_space, hypersurface, coordinate_hyperplanes, quartic_union, union)");
  }
  if (v.diagnostics().size() != before) return std::nullopt;
  return s;
}

std::optional<ComplexSpec> parse_complex(Validator& v, const json& obj) {
  if (!obj.contains("complex")) return std::nullopt;
  const json& c = obj.at("complex");
  if (!v.object(c, "/complex")) return std::nullopt;
  v.keys(c, "/complex", {"n_vertices", "maximal_faces"}, {"n_vertices", "maximal_faces"});
  auto nv = v.integer(c, "/complex", "n_vertices", 1, 20);
  if (!nv || !c.contains("maximal_faces")) return std::nullopt;
  ComplexSpec out;
  out.n_vertices = static_cast<int>(*nv);
  const json& faces = c.at("maximal_faces");
  if (!faces.is_array()) {
    v.error("/complex/maximal_faces", "expected an array of vertex lists");
    return std::nullopt;
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string w = "/complex/maximal_faces/" + std::to_string(i);
    if (!faces[i].is_array() || faces[i].empty()) {
      v.error(w, "expected a non-empty array of vertices");
      continue;
    }
    Face face;
    for (std::size_t k = 0; k < faces[i].size(); ++k)
      if (auto x = v.integer_value(faces[i][k], w + "/" + std::to_string(k), 0, *nv - 1))
        face.push_back(static_cast<int>(*x));
    std::sort(face.begin(), face.end());
    if (std::adjacent_find(face.begin(), face.end()) != face.end())
      v.error(w, "repeated vertex");
    out.maximal_faces.push_back(std::move(face));
  }
  return out;
}

}  // namespace

schema_error::schema_error(std::vector<Diagnostic> d)
    : input_error(join_messages(d)), diagnostics_(std::move(d)) {}

UnionSpec GeometrySpec::build() const {
  if (type == "projective_space") return projective_space(n);
  if (type == "coordinate_hyperplanes") return cy_degenerate_fiber(n);
  if (type == "hypersurface") return smooth_hypersurface(n, degree, seed);
  if (type == "quartic_union") return k3_union(a, seed);
  if (type == "union") return explicit_union;
  throw input_error("unknown geometry type '" + type + "'");
}

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw schema_error({{"/", line, std::string("malformed JSON: ") + e.what()}});
  }
  Validator v(text);
  if (!v.object(doc, "")) throw schema_error(v.diagnostics());

  ScenarioFile s;
  s.source = doc;
  static const std::set<std::string> common{"schema_version", "kind", "name", "description",
                                            "primes", "cap", "check_differentials"};
  static const std::map<std::string, std::set<std::string>> per_kind{
      {"betti", {"geometry", "bundle", "p_range", "q_range"}},
      {"lemma1", {"geometry", "bundle", "l_values", "q_values"}},
      {"theorem1", {"n", "d", "seed"}},
      {"theorem2", {"a", "d", "seed"}},
      {"duality", {"n", "d", "seed"}},
      {"semicontinuity", {"special", "general", "bundle", "p_range", "q_range"}},
      {"simplicial", {"geometry", "complex", "expected_cohomology"}},
  };
  static const std::map<std::string, std::set<std::string>> required{
      {"betti", {"geometry", "bundle"}},
      {"lemma1", {"geometry", "bundle", "l_values", "q_values"}},
      {"theorem1", {"n", "d"}},
      {"theorem2", {"a", "d"}},
      {"duality", {"n", "d"}},
      {"semicontinuity", {"special", "general", "bundle"}},
      {"simplicial", {}},
  };

  if (auto version = v.integer(doc, "", "schema_version", kSchemaVersion, kSchemaVersion); !version)
    if (!doc.contains("schema_version")) v.error("/schema_version", "required key is missing");
  auto kind = v.string(doc, "", "kind");
  if (!kind) {
    if (!doc.contains("kind")) v.error("/kind", "required key is missing");
    throw schema_error(v.diagnostics());
  }
  auto it = per_kind.find(*kind);
  if (it == per_kind.end()) {
    v.error("/kind", "unknown kind '" + *kind +
                         "' (betti, lemma1, theorem1, theorem2, duality, semicontinuity, simplicial)");
    throw schema_error(v.diagnostics());
  }
  s.kind = *kind;
  std::set<std::string> allowed = common;
  allowed.insert(it->second.begin(), it->second.end());
  v.keys(doc, "", allowed, required.at(s.kind));

  s.name = v.string(doc, "", "name").value_or(s.kind);
  v.string(doc, "", "description");
  if (auto primes = v.int_array(doc, "", "primes", 2, PrimeField::kMaxModulus - 1)) {
    s.primes.clear();
    for (std::size_t i = 0; i < primes->size(); ++i) {
      const auto p = static_cast<std::uint32_t>((*primes)[i]);
      if (!is_prime(p))
        v.error("/primes/" + std::to_string(i), std::to_string(p) + " is not prime");
      else if (std::find(s.primes.begin(), s.primes.end(), p) != s.primes.end())
        v.error("/primes/" + std::to_string(i), "repeated prime");
      else
        s.primes.push_back(p);
    }
    if (primes->empty()) v.error("/primes", "at least one prime is required");
  }
  if (auto cap = v.integer(doc, "", "cap", 1, std::numeric_limits<std::int64_t>::max()))
    s.cap = static_cast<std::uint64_t>(*cap);
  if (doc.contains("check_differentials")) {
    if (doc.at("check_differentials").is_boolean())
      s.check_differentials = doc.at("check_differentials").get<bool>();
    else
      v.error("/check_differentials", "expected a boolean");
  }

  s.geometry = parse_geometry(v, doc, "geometry");
  s.special = parse_geometry(v, doc, "special");
  s.general = parse_geometry(v, doc, "general");
  s.complex = parse_complex(v, doc);
  if (doc.contains("bundle") && v.object(doc.at("bundle"), "/bundle")) {
    const json& b = doc.at("bundle");
    v.keys(b, "/bundle", {"b", "d"}, {"d"});
    s.bundle.b = static_cast<int>(v.integer(b, "/bundle", "b", -64, 64).value_or(0));
    s.bundle.d = static_cast<int>(v.integer(b, "/bundle", "d", 1, 64).value_or(1));
  }
  s.p_range = v.range(doc, "", "p_range", 0, 4096);
  s.q_range = v.range(doc, "", "q_range", -64, 64);
  if (auto l = v.int_array(doc, "", "l_values", 0, 256))
    s.l_values.assign(l->begin(), l->end());
  if (auto q = v.int_array(doc, "", "q_values", 0, 64))
    s.q_values.assign(q->begin(), q->end());
  if (auto e = v.int_array(doc, "", "expected_cohomology", 0, 1 << 30))
    s.expected_cohomology = std::vector<std::size_t>(e->begin(), e->end());
  s.n = static_cast<int>(v.integer(doc, "", "n", 1, 6).value_or(0));
  s.a = static_cast<int>(v.integer(doc, "", "a", 2, 16).value_or(0));
  s.d = static_cast<int>(v.integer(doc, "", "d", 1, 64).value_or(1));
  s.seed = v.seed(doc, "").value_or(0);

  if (s.kind == "simplicial" && !doc.contains("geometry") && !doc.contains("complex"))
    v.error("/geometry", "a simplicial scenario needs either geometry or complex");
  if (s.kind == "simplicial" && doc.contains("geometry") && doc.contains("complex"))
    v.error("/complex", "give either geometry or complex, not both");

  if (!v.diagnostics().empty()) throw schema_error(v.diagnostics());
  return s;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error({{"/", 0, "cannot read scenario file '" + path + "'"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace koszul::cli
