#include "foliacoh/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

#include "embedded_schema.hpp"

namespace foliacoh::io {

namespace {

constexpr const char* kKindNames[] = {"gstar_algebra", "strata_model", "morse_data",
                                      "polytope",      "module_presentation", "ses"};

[[noreturn]] void fail(const std::string& msg) { throw InputError(msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::int64_t as_int64(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> int_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::int64_t> out;
  for (const auto& x : j) out.push_back(as_int64(x, what));
  return out;
}

PoincarePolynomial poincare_from_json(const Json& j, const char* what) {
  auto c = int_array(j, what);
  for (auto x : c)
    if (x < 0) fail(std::string(what) + " has a negative coefficient");
  return PoincarePolynomial(std::move(c));
}

Json coeff_array(const std::vector<std::int64_t>& c) {
  Json a = Json::array();
  for (auto x : c) a.push_back(x);
  return a;
}

class SchemaHolder {
 public:
  SchemaHolder() {
    rapidjson::Document d;
    d.Parse(kEmbeddedInputSchema);
    if (d.HasParseError()) throw std::logic_error("embedded schema is not valid JSON");
    schema_ = std::make_unique<rapidjson::SchemaDocument>(d);
  }
  const rapidjson::SchemaDocument& get() const { return *schema_; }

 private:
  std::unique_ptr<rapidjson::SchemaDocument> schema_;
};

std::string pointer_string(const rapidjson::Pointer& p) {
  rapidjson::StringBuffer sb;
  p.StringifyUriFragment(sb);
  std::string s = sb.GetString();
  return s.empty() || s == "#" ? "#/" : s;
}

// Only shallow errors are readable when anyOf/oneOf branches fail; report the
// deepest location rapidjson points to, plus the offending keyword.
std::vector<std::string> validate_with(const rapidjson::SchemaDocument& schema, const std::string& text) {
  rapidjson::Document d;
  d.Parse(text.c_str());
  if (d.HasParseError())
    return {std::string("not JSON: ") + rapidjson::GetParseError_En(d.GetParseError())};
  rapidjson::SchemaValidator validator(schema);
  if (d.Accept(validator)) return {};
  return {std::string("schema violation at ") + pointer_string(validator.GetInvalidDocumentPointer()) +
          " (keyword '" + validator.GetInvalidSchemaKeyword() + "', schema " +
          pointer_string(validator.GetInvalidSchemaPointer()) + ")"};
}

// Targeted messages for the cases rapidjson reports only as an anyOf failure.
void explain_payload(const Json& doc, std::vector<std::string>& out) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("payload")) return;
  const auto& kind = doc["kind"];
  if (!kind.is_string()) return;
  const auto& p = doc["payload"];
  if (!p.is_object()) return;
  auto need = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (!p.contains(k)) out.push_back("payload is missing required field '" + std::string(k) + "'");
  };
  const auto k = kind.get<std::string>();
  if (k == "gstar_algebra") {
    need({"lie"});
    if (!p.contains("basis") && !p.contains("weil_degree"))
      out.push_back("payload needs exactly one of 'basis' or 'weil_degree'");
  } else if (k == "strata_model") {
    need({"q", "dim_a", "strata"});
  } else if (k == "morse_data") {
    need({"dim_a", "components"});
  } else if (k == "polytope") {
    need({"f_vector", "q"});
  } else if (k == "module_presentation") {
    need({"dim_a", "generators"});
  } else if (k == "ses") {
    need({"type", "sub", "middle", "quotient", "inclusion", "projection"});
  }
}

LieAlgebra lie_from_json(const Json& j) {
  const int dim = as_int(field(j, "dim"), "lie.dim");
  if (dim < 0) fail("lie.dim must be >= 0");
  LieAlgebra lie = LieAlgebra::abelian(static_cast<std::size_t>(dim));
  if (!j.contains("brackets")) return lie;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> given;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> entries;
  for (const auto& b : j["brackets"]) {
    const int i = as_int(field(b, "i"), "bracket index");
    const int jj = as_int(field(b, "j"), "bracket index");
    const int k = as_int(field(b, "k"), "bracket index");
    if (i < 1 || jj < 1 || k < 1 || i > dim || jj > dim || k > dim)
      fail("bracket index out of range 1.." + std::to_string(dim));
    const auto key = std::tuple{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(jj - 1),
                                static_cast<std::size_t>(k - 1)};
    if (!given.insert(key).second) fail("bracket [X" + std::to_string(i) + ", X" + std::to_string(jj) +
                                        "] component " + std::to_string(k) + " given twice");
    entries.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key), rational_from_json(field(b, "c")));
  }
  for (const auto& [i, jj, k, c] : entries) lie.c(i, jj, k) = c;
  for (const auto& [i, jj, k, c] : entries)
    if (!given.count({jj, i, k})) lie.c(jj, i, k) = -c;
  return lie;
}

Json lie_to_json(const LieAlgebra& lie) {
  Json j = Json::object();
  j["dim"] = lie.dim;
  Json brackets = Json::array();
  auto add = [&](std::size_t i, std::size_t jj, std::size_t k) {
    brackets.push_back(Json{{"i", i + 1}, {"j", jj + 1}, {"k", k + 1}, {"c", to_json(lie.c(i, jj, k))}});
  };
  for (std::size_t i = 0; i < lie.dim; ++i)
    for (std::size_t jj = i; jj < lie.dim; ++jj)
      for (std::size_t k = 0; k < lie.dim; ++k) {
        const Rational& a = lie.c(i, jj, k);
        if (i == jj) {
          if (sgn(a) != 0) add(i, jj, k);
          continue;
        }
        const Rational& b = lie.c(jj, i, k);
        const bool paired = b == -a;
        if (sgn(a) != 0 || !paired) add(i, jj, k);
        if (!paired) add(jj, i, k);
      }
  if (!brackets.empty()) j["brackets"] = std::move(brackets);
  return j;
}

GStarBuilder::Element element_from_json(const Json& j) {
  if (!j.is_object()) fail("algebra element must be an object label -> coefficient");
  GStarBuilder::Element e;
  for (const auto& [label, c] : j.items()) e.emplace_back(label, rational_from_json(c));
  return e;
}

Json element_to_json(const GStarStructure& s, int n, const Vector& v) {
  Json j = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) j[s.label(n, i)] = to_json(v[i]);
  return j;
}

Json sparse_to_json(const GStarStructure& s, int n, const SparseVector* v) {
  Json j = Json::object();
  if (v)
    for (const auto& [i, c] : *v)
      if (sgn(c) != 0) j[s.label(n, i)] = to_json(c);
  return j;
}

bool sparse_equal(const SparseVector* a, const SparseVector& b) {
  std::map<std::size_t, Rational> x, y;
  if (a)
    for (const auto& [i, c] : *a)
      if (sgn(c) != 0) x[i] = c;
  for (const auto& [i, c] : b)
    if (sgn(c) != 0) y[i] = c;
  return x == y;
}

MultiPolynomial mpoly_from_json(const Json& j, std::size_t vars) {
  if (!j.is_array()) fail("polynomial must be an array of terms");
  MultiPolynomial p(vars);
  for (const auto& t : j) {
    const auto e = int_array(field(t, "exponent"), "exponent");
    if (e.size() != vars)
      fail("exponent has " + std::to_string(e.size()) + " entries, expected " + std::to_string(vars));
    Exponent ex;
    for (auto x : e) {
      if (x < 0) fail("negative exponent");
      ex.push_back(static_cast<int>(x));
    }
    p.add_term(ex, rational_from_json(field(t, "coeff")));
  }
  return p;
}

Json mpoly_to_json(const MultiPolynomial& p) {
  Json a = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json ex = Json::array();
    for (int x : e) ex.push_back(x);
    a.push_back(Json{{"exponent", std::move(ex)}, {"coeff", to_json(c)}});
  }
  return a;
}

ModuleMap module_map_from_json(const Json& j, std::size_t source_gens, std::size_t target_gens, std::size_t vars,
                               const char* what) {
  if (!j.is_array() || j.size() != source_gens)
    fail(std::string(what) + " needs one image per source generator (" + std::to_string(source_gens) + ")");
  ModuleMap m;
  for (const auto& img : j) {
    if (!img.is_array() || img.size() != target_gens)
      fail(std::string(what) + " image needs " + std::to_string(target_gens) + " components");
    FreeElement f;
    for (const auto& c : img) f.push_back(mpoly_from_json(c, vars));
    m.images.push_back(std::move(f));
  }
  return m;
}

Json module_map_to_json(const ModuleMap& m) {
  Json a = Json::array();
  for (const auto& img : m.images) {
    Json comps = Json::array();
    for (const auto& c : img) comps.push_back(mpoly_to_json(c));
    a.push_back(std::move(comps));
  }
  return a;
}

std::vector<Matrix> maps_from_json(const Json& j, const CochainComplex& from, const CochainComplex& to,
                                   const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of matrices");
  const int top = std::max(from.top(), to.top());
  if (static_cast<int>(j.size()) != top + 1)
    fail(std::string(what) + " needs " + std::to_string(top + 1) + " matrices, got " + std::to_string(j.size()));
  std::vector<Matrix> out;
  for (int n = 0; n <= top; ++n) out.push_back(matrix_from_json(j[static_cast<std::size_t>(n)], to.dim(n), from.dim(n)));
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string to_string(Kind k) { return kKindNames[static_cast<int>(k)]; }

Kind kind_from_string(std::string_view s) {
  for (int i = 0; i < 6; ++i)
    if (s == kKindNames[i]) return static_cast<Kind>(i);
  fail("unknown kind '" + std::string(s) + "'");
}

const std::string& input_schema() {
  static const std::string s = kEmbeddedInputSchema;
  return s;
}

std::vector<std::string> schema_errors(const Json& doc) {
  static const SchemaHolder holder;
  auto errors = validate_with(holder.get(), doc.dump());
  if (!errors.empty()) explain_payload(doc, errors);
  return errors;
}

InputDocument parse_document(const Json& doc) {
  const auto errors = schema_errors(doc);
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    fail(msg);
  }
  InputDocument d;
  d.schema_version = doc.at("schema_version").get<int>();
  d.kind = kind_from_string(doc.at("kind").get<std::string>());
  if (doc.contains("name")) d.name = doc["name"].get<std::string>();
  if (doc.contains("max_degree")) d.max_degree = doc["max_degree"].get<int>();
  d.payload = doc.at("payload");
  if (doc.contains("expect")) d.expect = doc["expect"];
  return d;
}

Json to_json(const InputDocument& d) {
  Json j = Json::object();
  j["schema_version"] = d.schema_version;
  j["kind"] = to_string(d.kind);
  if (!d.name.empty()) j["name"] = d.name;
  if (d.max_degree) j["max_degree"] = *d.max_degree;
  j["payload"] = d.payload;
  if (d.expect) j["expect"] = *d.expect;
  return j;
}

InputDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_document(j);
}

std::string input_hash(const Json& doc) {
  const nlohmann::json sorted = nlohmann::json::parse(doc.dump());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(sorted.dump())));
  return buf;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
    return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(std::string("bad rational: ") + e.what());
    }
  }
  fail("rational must be an integer or a string \"p/q\", got " + j.dump());
}

Json to_json(const Rational& r) {
  return Json(foliacoh::to_string(r));
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) fail("matrix must be an array of rows");
  if (rows == 0 && j.empty()) return Matrix(0, cols);
  if (j.size() != rows) fail("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols)
      fail("matrix row " + std::to_string(r) + " has " + std::to_string(row.is_array() ? row.size() : 0) +
           " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[c]);
  }
  return m;
}

Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

Json to_json(const SignedPolynomial& p) { return coeff_array(p.coeffs()); }

Json to_json(const PoincareSeries& s) {
  return Json{{"numerator", to_json(s.numerator())}, {"den_exp", s.den_exp()}};
}

PoincareSeries series_from_json(const Json& j) {
  const int k = as_int(field(j, "den_exp"), "den_exp");
  if (k < 0) fail("den_exp must be >= 0");
  return PoincareSeries(SignedPolynomial(int_array(field(j, "numerator"), "numerator")), k);
}

GStarInput gstar_from_json(const Json& p) {
  GStarInput in;
  const LieAlgebra lie = lie_from_json(field(p, "lie"));
  try {
    if (p.contains("weil_degree")) {
      in.weil_degree = as_int(p["weil_degree"], "weil_degree");
      in.structure = weil_algebra(lie, *in.weil_degree);
    } else {
      GStarBuilder b(lie);
      for (const auto& e : field(p, "basis")) b.basis(field(e, "label").get<std::string>(), as_int(field(e, "degree"), "degree"));
      if (p.contains("unit")) b.unit(p["unit"].get<std::string>());
      if (p.contains("products"))
        for (const auto& e : p["products"])
          b.product(field(e, "a").get<std::string>(), field(e, "b").get<std::string>(), element_from_json(field(e, "value")));
      if (p.value("without_products", false)) b.without_products();
      if (p.contains("d"))
        for (const auto& e : p["d"]) b.d(field(e, "of").get<std::string>(), element_from_json(field(e, "value")));
      auto op = [&](const char* key, auto&& add) {
        if (!p.contains(key)) return;
        for (const auto& e : p[key]) {
          const int g = as_int(field(e, "generator"), "generator");
          if (g < 1 || static_cast<std::size_t>(g) > lie.dim)
            fail(std::string(key) + " generator " + std::to_string(g) + " out of range 1.." + std::to_string(lie.dim));
          add(static_cast<std::size_t>(g - 1), field(e, "of").get<std::string>(), element_from_json(field(e, "value")));
        }
      };
      op("contraction", [&](std::size_t j, const std::string& a, GStarBuilder::Element v) { b.contraction(j, a, std::move(v)); });
      op("lie_derivative", [&](std::size_t j, const std::string& a, GStarBuilder::Element v) { b.lie_derivative(j, a, std::move(v)); });
      b.truncated(p.value("truncated", false));
      in.structure = b.build();
    }
    if (p.contains("connection"))
      for (const auto& e : p["connection"]) in.connection.push_back(GStarBuilder::coordinates(in.structure, 1, element_from_json(e)));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid algebra: ") + e.what());
  }
  if (p.contains("h_dim")) {
    const int h = as_int(p["h_dim"], "h_dim");
    if (h < 0 || static_cast<std::size_t>(h) > lie.dim) fail("h_dim must lie in 0.." + std::to_string(lie.dim));
    in.h_dim = static_cast<std::size_t>(h);
  }
  return in;
}

Json to_json(const GStarInput& in) {
  const GStarStructure& s = in.structure;
  Json j = Json::object();
  j["lie"] = lie_to_json(s.lie);
  if (in.weil_degree) {
    j["weil_degree"] = *in.weil_degree;
  } else {
    Json basis = Json::array();
    for (int n = 0; n <= s.top(); ++n)
      for (std::size_t i = 0; i < s.dim(n); ++i) basis.push_back(Json{{"label", s.label(n, i)}, {"degree", n}});
    j["basis"] = std::move(basis);
    if (s.unit) j["unit"] = s.label(0, *s.unit);
    if (s.products) {
      std::vector<std::pair<int, std::size_t>> where;
      for (int n = 0; n <= s.top(); ++n)
        for (std::size_t i = 0; i < s.dim(n); ++i) where.emplace_back(n, i);
      const std::size_t total = where.size();
      const bool has_unit = s.unit.has_value();
      const std::size_t unit = has_unit ? s.offset(0) + *s.unit : 0;
      Json products = Json::array();
      std::set<std::pair<std::size_t, std::size_t>> emitted;
      auto emit = [&](std::size_t a, std::size_t b) {
        const int deg = where[a].first + where[b].first;
        products.push_back(Json{{"a", s.label(where[a].first, where[a].second)},
                                {"b", s.label(where[b].first, where[b].second)},
                                {"value", sparse_to_json(s, deg, s.products->find(a, b))}});
        emitted.insert({a, b});
      };
      auto base_default = [&](std::size_t a, std::size_t b) {
        SparseVector v;
        if (has_unit && (a == unit || b == unit)) v.emplace_back(a == unit ? where[b].second : where[a].second, Rational(1));
        return v;
      };
      for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = a; b < total; ++b) {
          if (where[a].first + where[b].first > s.top()) continue;
          if (!sparse_equal(s.products->find(a, b), base_default(a, b))) emit(a, b);
        }
      for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < a; ++b) {
          if (where[a].first + where[b].first > s.top()) continue;
          SparseVector implied;
          if (emitted.count({b, a})) {
            const bool odd = (where[a].first * where[b].first) % 2 != 0;
            if (const auto* v = s.products->find(b, a))
              for (const auto& [i, c] : *v) implied.emplace_back(i, odd ? Rational(-c) : c);
          } else {
            implied = base_default(a, b);
          }
          if (!sparse_equal(s.products->find(a, b), implied)) emit(a, b);
        }
      j["products"] = std::move(products);
    } else {
      j["without_products"] = true;
    }
    Json d = Json::array();
    for (int n = 0; n < s.top(); ++n) {
      const Matrix& m = s.d[static_cast<std::size_t>(n)];
      for (std::size_t i = 0; i < m.cols(); ++i) {
        const Vector col = m.column(i);
        if (!is_zero(col)) d.push_back(Json{{"of", s.label(n, i)}, {"value", element_to_json(s, n + 1, col)}});
      }
    }
    j["d"] = std::move(d);
    auto ops = [&](const std::vector<std::vector<Matrix>>& mats, int shift) {
      Json a = Json::array();
      for (std::size_t g = 0; g < mats.size(); ++g)
        for (int n = 0; n <= s.top(); ++n) {
          if (n + shift < 0) continue;
          const Matrix& m = mats[g][static_cast<std::size_t>(n)];
          for (std::size_t i = 0; i < m.cols(); ++i) {
            const Vector col = m.column(i);
            if (!is_zero(col))
              a.push_back(Json{{"generator", g + 1}, {"of", s.label(n, i)}, {"value", element_to_json(s, n + shift, col)}});
          }
        }
      return a;
    };
    j["contraction"] = ops(s.contraction, -1);
    j["lie_derivative"] = ops(s.lie_derivative, 0);
    if (s.truncated) j["truncated"] = true;
  }
  if (!in.connection.empty()) {
    Json c = Json::array();
    for (const auto& v : in.connection) c.push_back(element_to_json(s, 1, v));
    j["connection"] = std::move(c);
  }
  if (in.h_dim) j["h_dim"] = *in.h_dim;
  return j;
}

StrataInput strata_from_json(const Json& p) {
  StrataInput in;
  in.model.q = as_int(field(p, "q"), "q");
  in.model.dim_a = as_int(field(p, "dim_a"), "dim_a");
  for (const auto& s : field(p, "strata")) {
    Stratum x;
    x.name = field(s, "name").get<std::string>();
    x.codim = as_int(field(s, "codim"), "codim");
    x.isotropy_dim = as_int(field(s, "isotropy_dim"), "isotropy_dim");
    x.quotient_poincare = poincare_from_json(field(s, "quotient_poincare"), "quotient_poincare");
    in.model.strata.push_back(std::move(x));
  }
  if (p.contains("closed_leaf_components"))
    for (const auto& c : p["closed_leaf_components"]) in.model.closed_leaf_components.push_back(c.get<std::string>());
  if (p.contains("formal")) in.formal = p["formal"].get<bool>();
  if (p.contains("borel")) {
    const auto& b = p["borel"];
    in.borel = BorelInput{as_int64(field(b, "dim_h_m"), "dim_h_m"), as_int64(field(b, "dim_h_c"), "dim_h_c"),
                          field(b, "formal").get<bool>()};
  }
  return in;
}

Json to_json(const StrataInput& in) {
  Json j = Json::object();
  j["q"] = in.model.q;
  j["dim_a"] = in.model.dim_a;
  Json strata = Json::array();
  for (const auto& s : in.model.strata)
    strata.push_back(Json{{"name", s.name},
                          {"codim", s.codim},
                          {"isotropy_dim", s.isotropy_dim},
                          {"quotient_poincare", coeff_array(s.quotient_poincare.coeffs())}});
  j["strata"] = std::move(strata);
  if (!in.model.closed_leaf_components.empty()) j["closed_leaf_components"] = in.model.closed_leaf_components;
  if (in.formal) j["formal"] = *in.formal;
  if (in.borel) j["borel"] = Json{{"dim_h_m", in.borel->dim_h_m}, {"dim_h_c", in.borel->dim_h_c}, {"formal", in.borel->formal}};
  return j;
}

MorseInput morse_from_json(const Json& p) {
  MorseInput in;
  in.dim_a = as_int(field(p, "dim_a"), "dim_a");
  std::size_t k = 0;
  for (const auto& c : field(p, "components")) {
    MorseComponent m;
    ++k;
    m.name = c.contains("name") ? c["name"].get<std::string>() : "C" + std::to_string(k);
    m.index = as_int(field(c, "index"), "index");
    m.isotropy_dim = c.contains("isotropy_dim") ? as_int(c["isotropy_dim"], "isotropy_dim") : 0;
    m.quotient_poincare = poincare_from_json(field(c, "quotient_poincare"), "quotient_poincare");
    in.data.components.push_back(std::move(m));
  }
  if (p.contains("poincare")) in.poincare = poincare_from_json(p["poincare"], "poincare");
  return in;
}

Json to_json(const MorseInput& in) {
  Json j = Json::object();
  j["dim_a"] = in.dim_a;
  Json comps = Json::array();
  for (const auto& c : in.data.components)
    comps.push_back(Json{{"name", c.name},
                         {"index", c.index},
                         {"isotropy_dim", c.isotropy_dim},
                         {"quotient_poincare", coeff_array(c.quotient_poincare.coeffs())}});
  j["components"] = std::move(comps);
  if (in.poincare) j["poincare"] = coeff_array(in.poincare->coeffs());
  return j;
}

PolytopeData polytope_from_json(const Json& p) {
  PolytopeData d;
  d.f_vector = int_array(field(p, "f_vector"), "f_vector");
  d.q = as_int(field(p, "q"), "q");
  if (p.contains("edges")) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : p["edges"]) {
      if (!e.is_array() || e.size() != 2) fail("edge must be a pair of vertex indices");
      edges.emplace_back(as_int(e[0], "edge endpoint"), as_int(e[1], "edge endpoint"));
    }
    d.edges = std::move(edges);
  }
  return d;
}

Json to_json(const PolytopeData& d) {
  Json j = Json::object();
  j["f_vector"] = coeff_array(d.f_vector);
  j["q"] = d.q;
  if (d.edges) {
    Json e = Json::array();
    for (const auto& [a, b] : *d.edges) e.push_back(Json::array({a, b}));
    j["edges"] = std::move(e);
  }
  return j;
}

ModuleInput module_from_json(const Json& p, std::optional<int> fallback_window) {
  ModuleInput in;
  GradedModulePresentation& m = in.presentation;
  const int r = as_int(field(p, "dim_a"), "dim_a");
  if (r < 0) fail("dim_a must be >= 0");
  m.dim_a = static_cast<std::size_t>(r);
  for (const auto& g : field(p, "generators")) {
    const int d = as_int(g, "generator degree");
    if (d < 0) fail("generator degrees must be >= 0");
    m.generator_degrees.push_back(d);
  }
  if (p.contains("relations"))
    for (const auto& rel : p["relations"]) {
      if (!rel.is_array() || rel.size() != m.generator_degrees.size())
        fail("each relation needs one polynomial per generator (" + std::to_string(m.generator_degrees.size()) + ")");
      std::vector<MultiPolynomial> row;
      for (const auto& c : rel) row.push_back(mpoly_from_json(c, m.dim_a));
      m.relations.push_back(std::move(row));
    }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid module presentation: ") + e.what());
  }
  if (p.contains("window")) in.window = as_int(p["window"], "window");
  m.window = in.window ? *in.window : fallback_window ? *fallback_window : default_window(m);
  if (m.window < 0) fail("window must be >= 0");
  if (p.contains("dim_h_c")) in.dim_h_c = as_int64(p["dim_h_c"], "dim_h_c");
  return in;
}

Json to_json(const ModuleInput& in) {
  const auto& m = in.presentation;
  Json j = Json::object();
  j["dim_a"] = m.dim_a;
  j["generators"] = m.generator_degrees;
  Json rels = Json::array();
  for (const auto& rel : m.relations) {
    Json row = Json::array();
    for (const auto& c : rel) row.push_back(mpoly_to_json(c));
    rels.push_back(std::move(row));
  }
  j["relations"] = std::move(rels);
  if (in.window) j["window"] = *in.window;
  if (in.dim_h_c) j["dim_h_c"] = *in.dim_h_c;
  return j;
}

SesInput ses_from_json(const Json& p, std::optional<int> fallback_window) {
  const std::string type = field(p, "type").get<std::string>();
  if (type == "complexes") {
    ShortExactSequence s;
    s.sub = complex_from_json(field(p, "sub"));
    s.middle = complex_from_json(field(p, "middle"));
    s.quotient = complex_from_json(field(p, "quotient"));
    s.inclusion = maps_from_json(field(p, "inclusion"), s.sub, s.middle, "inclusion");
    s.projection = maps_from_json(field(p, "projection"), s.middle, s.quotient, "projection");
    return s;
  }
  if (type != "modules") fail("ses type must be 'complexes' or 'modules'");
  ModuleSes s;
  s.sub = module_from_json(field(p, "sub"), fallback_window);
  s.middle = module_from_json(field(p, "middle"), fallback_window);
  s.quotient = module_from_json(field(p, "quotient"), fallback_window);
  const std::size_t vars = s.middle.presentation.dim_a;
  if (s.sub.presentation.dim_a != vars || s.quotient.presentation.dim_a != vars)
    fail("modules in a sequence must share dim_a");
  s.inclusion = module_map_from_json(field(p, "inclusion"), s.sub.presentation.generator_degrees.size(),
                                     s.middle.presentation.generator_degrees.size(), vars, "inclusion");
  s.projection = module_map_from_json(field(p, "projection"), s.middle.presentation.generator_degrees.size(),
                                      s.quotient.presentation.generator_degrees.size(), vars, "projection");
  return s;
}

Json to_json(const SesInput& in) {
  if (const auto* c = std::get_if<ShortExactSequence>(&in)) {
    Json inc = Json::array(), proj = Json::array();
    for (const auto& m : c->inclusion) inc.push_back(to_json(m));
    for (const auto& m : c->projection) proj.push_back(to_json(m));
    return Json{{"type", "complexes"},
                {"sub", to_json(c->sub)},
                {"middle", to_json(c->middle)},
                {"quotient", to_json(c->quotient)},
                {"inclusion", std::move(inc)},
                {"projection", std::move(proj)}};
  }
  const auto& m = std::get<ModuleSes>(in);
  return Json{{"type", "modules"},
              {"sub", to_json(m.sub)},
              {"middle", to_json(m.middle)},
              {"quotient", to_json(m.quotient)},
              {"inclusion", module_map_to_json(m.inclusion)},
              {"projection", module_map_to_json(m.projection)}};
}

CochainComplex complex_from_json(const Json& j) {
  std::vector<std::size_t> dims;
  for (auto x : int_array(field(j, "dims"), "dims")) {
    if (x < 0) fail("dims must be >= 0");
    dims.push_back(static_cast<std::size_t>(x));
  }
  if (dims.empty()) fail("complex needs at least one degree");
  const auto& ds = field(j, "differentials");
  if (!ds.is_array() || (ds.size() != dims.size() && ds.size() + 1 != dims.size()))
    fail("complex with " + std::to_string(dims.size()) + " degrees needs " + std::to_string(dims.size() - 1) + " or " +
         std::to_string(dims.size()) + " differentials");
  auto dim = [&](std::size_t n) { return n < dims.size() ? dims[n] : std::size_t{0}; };
  std::vector<Matrix> mats;
  for (std::size_t n = 0; n < ds.size(); ++n) mats.push_back(matrix_from_json(ds[n], dim(n + 1), dim(n)));
  try {
    return CochainComplex::make(std::move(dims), std::move(mats));
  } catch (const DimensionError& e) {
    fail(e.what());
  }
}

Json to_json(const CochainComplex& c) {
  Json ds = Json::array();
  for (int n = 0; n < c.top(); ++n) ds.push_back(to_json(c.differential(n)));
  return Json{{"dims", c.space.dims}, {"differentials", std::move(ds)}};
}

}  // namespace foliacoh::io
