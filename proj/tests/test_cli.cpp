#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

const std::string kBin = FOLIACOH_BIN;
const std::string kFixtures = FOLIACOH_FIXTURE_DIR;

int run(const std::string& args) {
  const std::string cmd = "sh -c '\"" + kBin + "\" " + args + " >/dev/null 2>&1'";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args, const std::string& env = "") {
  std::string out;
  FILE* p = popen((env + " \"" + kBin + "\" " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  pclose(p);
  return out;
}

std::string fixture(const std::string& stem) { return "--input \"" + kFixtures + "/" + stem + ".json\""; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("foliacoh_cli_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("exit code: success") {
  CHECK(run("strata " + fixture("hopf_strata")) == 0);
  CHECK(run("polytope " + fixture("square")) == 0);
  CHECK(run("equivariant " + fixture("hopf_gstar") + " --max-degree 8") == 0);
  CHECK(run("module " + fixture("residue_field_2")) == 0);
}

TEST_CASE("exit code: verdict failure") {
  CHECK(run("morse " + fixture("morse_violation")) == 1);
  CHECK(run("strata " + fixture("formality_inconsistent")) == 1);
}

TEST_CASE("exit code: invalid input") {
  CHECK(run("validate " + fixture("bad_euler")) == 2);
  CHECK(run("polytope " + fixture("bad_q")) == 2);
  CHECK(run("strata --input /nonexistent/file.json") == 2);
  CHECK(run("strata " + fixture("hopf_morse")) == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("strata") == 2);
  const auto broken = temp_file("broken.json", "{ not json");
  CHECK(run("validate --input \"" + broken.string() + "\"") == 2);
}

TEST_CASE("exit code: inconclusive") {
  const auto doc = temp_file("short_window.json", R"({"schema_version": 1, "kind": "module_presentation",
    "payload": {"dim_a": 1, "generators": [0], "relations": [[[{"exponent": [1], "coeff": 1}]]], "window": 3}})");
  CHECK(run("module --input \"" + doc.string() + "\"") == 3);
}

TEST_CASE("result document shape") {
  const auto j = nlohmann::json::parse(capture("strata " + fixture("hopf_strata")));
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "strata");
  CHECK(j["status"] == "ok");
  CHECK(j["exit_code"] == 0);
  CHECK(j["results"]["basic"] == nlohmann::json::array({1, 0, 1}));
  CHECK(j["input_hash"].get<std::string>().size() == 16);
}

TEST_CASE("output file and text format") {
  const auto out = std::filesystem::temp_directory_path() / "foliacoh_cli_out.json";
  std::filesystem::remove(out);
  CHECK(run("polytope " + fixture("segment") + " --output \"" + out.string() + "\"") == 0);
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["results"]["euler"] == 2);
  const std::string text = capture("polytope " + fixture("segment") + " --format text");
  CHECK(text.find("euler") != std::string::npos);
  CHECK(text.find('{') == std::string::npos);
}

TEST_CASE("output does not depend on the thread count") {
  const std::string args = "module " + fixture("mixed_sum");
  CHECK(capture(args, "FOLIACOH_THREADS=1") == capture(args, "FOLIACOH_THREADS=4"));
}

TEST_CASE("fixtures subcommand") {
  CHECK(run("fixtures list") == 0);
  const auto j = nlohmann::json::parse(capture("fixtures run --filter hopf"));
  CHECK(j["exit_code"] == 0);
  for (const auto& g : j["results"]["goldens"]) CHECK(g["id"].get<std::string>().find("hopf") != std::string::npos);
  CHECK(j["results"]["failed"] == 0);
}

TEST_CASE("a perturbed golden fails by name") {
  const auto dir = std::filesystem::temp_directory_path() / "foliacoh_cli_fixtures";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ifstream in(kFixtures + "/square.json");
  auto doc = nlohmann::ordered_json::parse(in);
  doc["expect"]["polytope"]["results"]["basic"][2] = 3;
  std::ofstream(dir / "square.json") << doc.dump(2);
  const auto j = nlohmann::json::parse(capture("fixtures run --filter square --fixture-dir \"" + dir.string() + "\""));
  CHECK(j["exit_code"] == 1);
  bool named = false;
  for (const auto& g : j["results"]["goldens"])
    if (g["id"] == "square:polytope" && g["pass"] == false) named = true;
  CHECK(named);
}
