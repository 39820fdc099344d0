#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "koszul/errors.hpp"
#include "koszul/geometry.hpp"

namespace koszul::cli {

inline constexpr int kSchemaVersion = 1;

/// A geometry block of a scenario file.
struct GeometrySpec {
  /// projective_space | hypersurface | coordinate_hyperplanes | quartic_union | union
  std::string type;
  int n = 0;
  int degree = 0;
  int a = 0;
  std::uint64_t seed = 0;
  UnionSpec explicit_union;

  UnionSpec build() const;
};

struct ComplexSpec {
  int n_vertices = 0;
  std::vector<Face> maximal_faces;
};

struct ScenarioFile {
  std::string kind;   // betti | lemma1 | theorem1 | theorem2 | duality | semicontinuity | simplicial
  std::string name;
  std::optional<GeometrySpec> geometry;
  std::optional<GeometrySpec> special;
  std::optional<GeometrySpec> general;
  std::optional<ComplexSpec> complex;
  LineBundleSpec bundle;
  std::optional<std::pair<int, int>> p_range;
  std::optional<std::pair<int, int>> q_range;
  std::vector<int> l_values;
  std::vector<int> q_values;
  std::optional<std::vector<std::size_t>> expected_cohomology;
  int n = 0;
  int a = 0;
  int d = 1;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> primes{32003};
  std::uint64_t cap = 50'000'000;
  bool check_differentials = true;
  /// The parsed document, as read.
  nlohmann::json source;
};

struct Diagnostic {
  std::string field;   // JSON pointer
  int line = 0;        // 1-based, 0 when unknown
  std::string message;
};

class schema_error : public input_error {
 public:
  explicit schema_error(std::vector<Diagnostic> d);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Parses and validates a scenario document; schema_error lists every problem found.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

}  // namespace koszul::cli
