#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "foliacoh/commands.hpp"
#include "foliacoh/io.hpp"

using namespace foliacoh;
using io::Json;

namespace {

std::vector<std::filesystem::path> fixture_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(FOLIACOH_FIXTURE_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Json read(const std::filesystem::path& p) {
  std::ifstream in(p);
  Json j = Json::parse(in);
  j.erase("expect");
  return j;
}

Json typed_payload(const io::InputDocument& d) {
  switch (d.kind) {
    case io::Kind::gstar_algebra: return io::to_json(io::gstar_from_json(d.payload));
    case io::Kind::strata_model: return io::to_json(io::strata_from_json(d.payload));
    case io::Kind::morse_data: return io::to_json(io::morse_from_json(d.payload));
    case io::Kind::polytope: return io::to_json(io::polytope_from_json(d.payload));
    case io::Kind::module_presentation: return io::to_json(io::module_from_json(d.payload));
    case io::Kind::ses: return io::to_json(io::ses_from_json(d.payload));
  }
  return {};
}

std::string serialize(const Json& raw) {
  io::InputDocument d = io::parse_document(raw);
  d.payload = typed_payload(d);
  return io::to_json(d).dump(2);
}

Json minimal_polytope() {
  return Json{{"schema_version", 1}, {"kind", "polytope"}, {"payload", {{"f_vector", {2, 1}}, {"q", 2}}}};
}

}  // namespace

TEST_CASE("every fixture conforms to the schema") {
  const auto files = fixture_files();
  CHECK(files.size() >= 30);
  for (const auto& f : files) {
    CAPTURE(f.string());
    CHECK(io::schema_errors(read(f)).empty());
  }
}

TEST_CASE("round trip: serialize after parse is stable on every fixture") {
  for (const auto& f : fixture_files()) {
    CAPTURE(f.string());
    const Json raw = read(f);
    const std::string once = serialize(raw);
    const std::string twice = serialize(Json::parse(once));
    CHECK(once == twice);
  }
}

TEST_CASE("round trip preserves computed results") {
  for (const auto& f : fixture_files()) {
    CAPTURE(f.string());
    const Json raw = read(f);
    const Json again = Json::parse(serialize(raw));
    const auto a = cli::run_on_document("validate", io::parse_document(raw), raw, std::nullopt);
    const auto b = cli::run_on_document("validate", io::parse_document(again), again, std::nullopt);
    CHECK(a["results"] == b["results"]);
    CHECK(a["exit_code"] == b["exit_code"]);
  }
}

TEST_CASE("schema violations are named") {
  Json doc = minimal_polytope();
  CHECK(io::schema_errors(doc).empty());
  doc["payload"].erase("q");
  const auto errors = io::schema_errors(doc);
  REQUIRE_FALSE(errors.empty());
  bool named = false;
  for (const auto& e : errors) named = named || e.find("'q'") != std::string::npos;
  CHECK(named);
  Json wrong = minimal_polytope();
  wrong["schema_version"] = 2;
  CHECK_THROWS_AS(io::parse_document(wrong), io::InputError);
  Json extra = minimal_polytope();
  extra["surprise"] = true;
  CHECK_FALSE(io::schema_errors(extra).empty());
}

TEST_CASE("rationals are written as strings and read from integers or strings") {
  CHECK(io::to_json(Rational(3, 6)) == Json("1/2"));
  CHECK(io::to_json(Rational(4)) == Json("4"));
  CHECK(io::rational_from_json(Json(5)) == 5);
  CHECK(io::rational_from_json(Json("-2/4")) == Rational(-1, 2));
  CHECK_THROWS(io::rational_from_json(Json(0.5)));
}

TEST_CASE("series serialization") {
  const PoincareSeries s(SignedPolynomial({1, 0, 1}), 1);
  const Json j = io::to_json(s);
  CHECK(j == Json{{"numerator", {1, 0, 1}}, {"den_exp", 1}});
  CHECK(io::series_from_json(j) == s);
}

TEST_CASE("complexes serialize with their differentials") {
  Matrix d0(1, 1);
  d0(0, 0) = Rational(1, 2);
  const auto c = CochainComplex::make({1, 1}, {d0, Matrix(0, 1)});
  const auto back = io::complex_from_json(io::to_json(c));
  CHECK(back.space.dims == c.space.dims);
  CHECK(back.differentials[0] == d0);
}

TEST_CASE("input hash ignores key order") {
  const Json a = Json::parse(R"({"schema_version":1,"kind":"polytope","payload":{"f_vector":[2,1],"q":2}})");
  const Json b = Json::parse(R"({"payload":{"q":2,"f_vector":[2,1]},"kind":"polytope","schema_version":1})");
  CHECK(io::input_hash(a) == io::input_hash(b));
  CHECK(io::input_hash(a).size() == 16);
  Json c = a;
  c["payload"]["q"] = 4;
  CHECK(io::input_hash(a) != io::input_hash(c));
}

TEST_CASE("golden subset matching") {
  const Json actual = Json::parse(R"({"a":[1,2],"b":{"c":true,"d":3}})");
  CHECK_FALSE(cli::subset_mismatch(Json::parse(R"({"b":{"c":true}})"), actual));
  const auto m = cli::subset_mismatch(Json::parse(R"({"b":{"d":4}})"), actual);
  REQUIRE(m);
  CHECK(m->find("b.d") != std::string::npos);
  CHECK(cli::subset_mismatch(Json::parse(R"({"a":[1]})"), actual));
}
