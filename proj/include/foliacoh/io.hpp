#ifndef FOLIACOH_IO_HPP
#define FOLIACOH_IO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "foliacoh/complex.hpp"
#include "foliacoh/foliation.hpp"
#include "foliacoh/gstar.hpp"
#include "foliacoh/module.hpp"
#include "foliacoh/series.hpp"

namespace foliacoh::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or schema-violating input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Kind { gstar_algebra, strata_model, morse_data, polytope, module_presentation, ses };

std::string to_string(Kind k);
Kind kind_from_string(std::string_view s);

struct InputDocument {
  int schema_version = kSchemaVersion;
  Kind kind = Kind::gstar_algebra;
  std::string name;
  std::optional<int> max_degree;
  Json payload;
  std::optional<Json> expect;  // golden expectations, ignored by computations
};

/// The input schema shipped with the tool (JSON Schema, draft 4).
const std::string& input_schema();
/// Messages describing schema violations; empty when the document conforms.
std::vector<std::string> schema_errors(const Json& doc);

/// Schema check plus header decoding. Throws InputError.
InputDocument parse_document(const Json& doc);
Json to_json(const InputDocument& doc);
InputDocument load_document(const std::string& path);

/// FNV-1a over the canonical (key-sorted, compact) serialization.
std::string input_hash(const Json& doc);

Rational rational_from_json(const Json& j);
Json to_json(const Rational& r);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
Json to_json(const Matrix& m);
Json to_json(const SignedPolynomial& p);
Json to_json(const PoincareSeries& s);
PoincareSeries series_from_json(const Json& j);

struct GStarInput {
  GStarStructure structure;
  std::vector<Vector> connection;        // candidates in degree 1
  std::optional<std::size_t> h_dim;      // split g = h x k for the reduction check
  std::optional<int> weil_degree;        // payload describes W(g) truncated here
};

GStarInput gstar_from_json(const Json& payload);
Json to_json(const GStarInput& in);

struct BorelInput {
  std::int64_t dim_h_m = 0;
  std::int64_t dim_h_c = 0;
  bool formal = false;
};

struct StrataInput {
  FoliationStrataModel model;
  std::optional<bool> formal;
  std::optional<BorelInput> borel;
};

StrataInput strata_from_json(const Json& payload);
Json to_json(const StrataInput& in);

struct MorseInput {
  MorseData data;
  int dim_a = 0;
  std::optional<PoincarePolynomial> poincare;
};

MorseInput morse_from_json(const Json& payload);
Json to_json(const MorseInput& in);

PolytopeData polytope_from_json(const Json& payload);
Json to_json(const PolytopeData& p);

struct ModuleInput {
  GradedModulePresentation presentation;  // window resolved
  std::optional<int> window;              // as given in the payload
  std::optional<std::int64_t> dim_h_c;
};

/// Window precedence: payload, then `fallback_window`, then default_window().
ModuleInput module_from_json(const Json& payload, std::optional<int> fallback_window = std::nullopt);
Json to_json(const ModuleInput& in);

struct ModuleSes {
  ModuleInput sub, middle, quotient;
  ModuleMap inclusion, projection;
};

using SesInput = std::variant<ShortExactSequence, ModuleSes>;

SesInput ses_from_json(const Json& payload, std::optional<int> fallback_window = std::nullopt);
Json to_json(const SesInput& in);

CochainComplex complex_from_json(const Json& j);
Json to_json(const CochainComplex& c);

}  // namespace foliacoh::io

#endif  // FOLIACOH_IO_HPP
