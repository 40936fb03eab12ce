#include "foliacoh/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "foliacoh/acceptance.hpp"
#include "foliacoh/cartan.hpp"
#include "foliacoh/spectral.hpp"

namespace foliacoh::cli {

namespace {

using io::Json;
using io::Kind;

constexpr int kDefaultAlgebraWindow = 8;
constexpr int kDefaultSeriesWindow = 20;

/// Accumulates one result document.
struct Outcome {
  int exit_code = kOk;
  Json results = Json::object();
  std::vector<std::string> diagnostics;
  std::optional<int> stable_through;

  void raise(int code) {
    // Precedence: invalid input, verdict failure, inconclusive, ok.
    auto rank = [](int c) { return c == kInvalidInput ? 3 : c == kVerdictFailure ? 2 : c == kInconclusive ? 1 : 0; };
    if (rank(code) > rank(exit_code)) exit_code = code;
  }
  void note(std::string s) { diagnostics.push_back(std::move(s)); }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json dims_json(const std::vector<std::size_t>& d) {
  Json a = Json::array();
  for (auto x : d) a.push_back(x);
  return a;
}

Json dims_json(const std::vector<std::int64_t>& d) {
  Json a = Json::array();
  for (auto x : d) a.push_back(x);
  return a;
}

Json ints_json(const std::vector<int>& d) {
  Json a = Json::array();
  for (auto x : d) a.push_back(x);
  return a;
}

std::vector<std::size_t> head(const std::vector<std::size_t>& v, int through) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= through; ++n) out.push_back(static_cast<std::size_t>(n) < v.size() ? v[static_cast<std::size_t>(n)] : 0);
  return out;
}

Json axioms_json(const AxiomReport& r) {
  Json a = Json::array();
  for (const auto& x : r.axioms) {
    Json e{{"name", x.name}, {"ok", x.ok}, {"checked", x.checked}};
    if (!x.witness.empty()) e["witness"] = x.witness;
    a.push_back(std::move(e));
  }
  return a;
}

Json issues_json(const ValidationReport& r) {
  Json a = Json::array();
  for (const auto& i : r.issues) a.push_back(Json{{"rule", i.rule}, {"message", i.message}});
  return a;
}

void require_kind(const io::InputDocument& doc, std::initializer_list<Kind> kinds, const std::string& command) {
  if (std::find(kinds.begin(), kinds.end(), doc.kind) != kinds.end()) return;
  throw UsageError("command '" + command + "' does not accept documents of kind '" + io::to_string(doc.kind) + "'");
}

int window_or(std::optional<int> requested, const io::InputDocument& doc, int fallback) {
  const int n = requested ? *requested : doc.max_degree ? *doc.max_degree : fallback;
  if (n < 0) throw UsageError("--max-degree must be >= 0");
  return n;
}

/// Checks the axioms; records them and marks the input invalid when one fails.
bool axioms_hold(const GStarStructure& s, Outcome& out) {
  const AxiomReport ax = check_gstar_axioms(s);
  const AxiomReport alg = check_graded_algebra(s);
  Json all = axioms_json(ax);
  for (const auto& x : axioms_json(alg)) all.push_back(x);
  out.results["axioms"] = std::move(all);
  if (const auto err = s.lie.check()) {
    out.note("Lie algebra: " + *err);
    out.raise(kInvalidInput);
    return false;
  }
  bool ok = true;
  for (const auto* r : {&ax, &alg})
    for (const auto& x : r->axioms)
      if (!x.ok) {
        out.note("axiom '" + x.name + "' fails: " + x.witness);
        ok = false;
      }
  if (!ok) out.raise(kInvalidInput);
  return ok;
}

// ---------------------------------------------------------------- validate

void cmd_validate(const io::InputDocument& doc, std::optional<int> window, Outcome& out) {
  ValidationReport report;
  switch (doc.kind) {
    case Kind::gstar_algebra: {
      const auto in = io::gstar_from_json(doc.payload);
      out.stable_through = in.structure.stable_through();
      axioms_hold(in.structure, out);
      if (!in.connection.empty()) {
        const TypeC t = detect_type_c(in.structure, in.connection);
        out.results["connection"] = Json{{"free", t.free}, {"type_c", t.type_c}};
      }
      break;
    }
    case Kind::strata_model:
      report = validate_strata(io::strata_from_json(doc.payload).model);
      break;
    case Kind::morse_data: {
      const auto in = io::morse_from_json(doc.payload);
      report = validate_morse(in.data, in.dim_a);
      break;
    }
    case Kind::polytope:
      report = validate_polytope(io::polytope_from_json(doc.payload));
      break;
    case Kind::module_presentation: {
      const auto in = io::module_from_json(doc.payload, window);
      out.results["window"] = in.presentation.window;
      out.results["required_window"] = required_window(in.presentation);
      break;
    }
    case Kind::ses: {
      const auto in = io::ses_from_json(doc.payload, window);
      if (const auto* c = std::get_if<ShortExactSequence>(&in)) {
        for (const auto* x : {&c->sub, &c->middle, &c->quotient}) {
          const auto r = verify_complex(*x);
          if (!r.ok) report.issues.push_back({"d-squared", r.message});
        }
      }
      break;
    }
  }
  for (const auto& i : report.issues) out.note(i.rule + ": " + i.message);
  out.results["issues"] = issues_json(report);
  if (!report.ok()) out.raise(kInvalidInput);
  out.results["valid"] = out.exit_code == kOk;
}

// ---------------------------------------------------------------- cohomology

void cmd_cohomology(const io::InputDocument& doc, std::optional<int> window, Outcome& out) {
  require_kind(doc, {Kind::gstar_algebra, Kind::ses}, "cohomology");
  if (doc.kind == Kind::ses) {
    const auto in = io::ses_from_json(doc.payload, window);
    const auto* ses = std::get_if<ShortExactSequence>(&in);
    if (!ses) throw UsageError("cohomology expects a sequence of complexes; use 'module' for module sequences");
    const LesReport r = les_exactness_check(*ses);
    out.stable_through = std::min({ses->sub.top(), ses->middle.top(), ses->quotient.top()});
    out.results["status"] = r.status == LesStatus::exact ? "exact" : r.status == LesStatus::not_exact ? "not exact" : "not short exact";
    out.results["sub"] = dims_json(r.sub_h);
    out.results["middle"] = dims_json(r.middle_h);
    out.results["quotient"] = dims_json(r.quotient_h);
    out.results["inclusion_rank"] = dims_json(r.inclusion_rank);
    out.results["projection_rank"] = dims_json(r.projection_rank);
    out.results["connecting_rank"] = dims_json(r.connecting_rank);
    if (r.failing_degree) out.results["failing_degree"] = *r.failing_degree;
    if (!r.message.empty()) out.note(r.message);
    if (r.status == LesStatus::not_exact) out.raise(kVerdictFailure);
    if (r.status == LesStatus::not_short_exact) out.raise(kInvalidInput);
    return;
  }
  const auto in = io::gstar_from_json(doc.payload);
  const GStarStructure& s = in.structure;
  if (!axioms_hold(s, out)) return;
  const int stable = s.stable_through();
  out.stable_through = stable;
  const auto basic = basic_subcomplex(s);
  out.results["algebra_dims"] = dims_json(s.space.dims);
  out.results["algebra_cohomology"] = dims_json(head(cohomology_dims(s.complex()), stable));
  out.results["basic_dims"] = dims_json(basic.complex.space.dims);
  out.results["basic_cohomology"] = dims_json(head(cohomology_dims(basic.complex), stable));
}

// ---------------------------------------------------------------- equivariant

void cmd_equivariant(const io::InputDocument& doc, std::optional<int> window, Outcome& out) {
  require_kind(doc, {Kind::gstar_algebra}, "equivariant");
  const int N = window_or(window, doc, kDefaultAlgebraWindow);
  const auto in = io::gstar_from_json(doc.payload);
  const GStarStructure& s = in.structure;
  if (!axioms_hold(s, out)) return;

  const EquivariantCohomology e = equivariant_cohomology(s, N);
  out.stable_through = e.stable_through;
  out.results["dims"] = dims_json(head(e.dims, e.stable_through));
  out.results["cartan_dims"] = [&] {
    std::vector<std::size_t> d;
    for (int n = 0; n <= e.stable_through; ++n) d.push_back(e.cartan.complex.dim(n));
    return dims_json(d);
  }();
  out.results["d_squared_zero"] = e.cartan.d_squared.ok;
  if (!e.cartan.d_squared.ok) {
    out.note("Cartan differential does not square to zero: " + e.cartan.d_squared.message);
    out.raise(kVerdictFailure);
  }

  const GradedDims w = weil_model_cohomology(s, N);
  const int common = std::min(e.stable_through, w.stable_through);
  const bool agree = head(e.dims, common) == head(w.dims, common);
  out.results["weil"] = Json{{"dims", dims_json(head(w.dims, w.stable_through))},
                             {"stable_through", w.stable_through},
                             {"compared_through", common},
                             {"agree", agree}};
  if (!agree) {
    out.note("Cartan and Weil models disagree through degree " + std::to_string(common));
    out.raise(kVerdictFailure);
  }

  out.results["generator_degrees"] = ints_json(e.generator_degrees);
  if (s.lie.is_abelian()) {
    const GradedModulePresentation pres = module_presentation(e);
    const auto h = hilbert(pres);
    const bool matches = head(std::vector<std::size_t>(h.coeffs.begin(), h.coeffs.end()), e.stable_through) ==
                         head(e.dims, e.stable_through);
    out.results["presentation"] = Json{{"generators", ints_json(pres.generator_degrees)},
                                       {"relations", pres.relations.size()},
                                       {"window", pres.window},
                                       {"hilbert_matches", matches}};
    if (!matches) {
      out.note("module presentation does not reproduce the equivariant dimensions");
      out.raise(kVerdictFailure);
    }
  } else {
    out.note("module structure over S(g*) reported only for abelian g");
  }

  if (!in.connection.empty()) {
    const TypeC t = detect_type_c(s, in.connection);
    Json c{{"free", t.free}, {"type_c", t.type_c}};
    if (t.type_c) {
      const auto basic = head(cohomology_dims(basic_subcomplex(s).complex), e.stable_through);
      const bool eq = basic == head(e.dims, e.stable_through);
      c["basic_cohomology"] = dims_json(basic);
      c["equals_equivariant"] = eq;
      if (!eq) {
        out.note("type (C) algebra whose equivariant cohomology differs from basic cohomology");
        out.raise(kVerdictFailure);
      }
    }
    out.results["connection"] = std::move(c);
  }

  if (in.h_dim) {
    const ReductionReport r = commuting_reduction_check(s, *in.h_dim, in.connection, N);
    const char* status = r.status == ReductionStatus::agree ? "agree" : r.status == ReductionStatus::disagree ? "disagree" : "refused";
    out.results["reduction"] = Json{{"status", status},
                                    {"product_dims", dims_json(r.product_dims)},
                                    {"reduced_dims", dims_json(r.reduced_dims)},
                                    {"stable_through", r.stable_through},
                                    {"message", r.message}};
    if (r.status == ReductionStatus::disagree) out.raise(kVerdictFailure);
    if (r.status == ReductionStatus::refused) out.note("reduction check refused: " + r.message);
  }
}

// ---------------------------------------------------------------- spectral

Json page_json(const DoubleComplexPage& p) {
  Json dims = Json::array(), ranks = Json::array(), totals = Json::array();
  for (std::size_t n = 0; n < p.dims.size() && static_cast<int>(n) <= p.stable_through; ++n) {
    dims.push_back(dims_json(p.dims[n]));
    ranks.push_back(dims_json(p.rank_out[n]));
    totals.push_back(p.total(static_cast<int>(n)));
  }
  return Json{{"r", p.r}, {"totals", std::move(totals)}, {"dims", std::move(dims)}, {"rank_out", std::move(ranks)}};
}

Json method_json(const MethodResult& m) {
  Json j{{"method", to_string(m.method)}, {"conclusive", m.conclusive}, {"formal", m.formal}};
  if (m.witness_degree) j["witness_degree"] = *m.witness_degree;
  if (!m.witness.empty()) j["witness"] = m.witness;
  return j;
}

void cmd_spectral(const io::InputDocument& doc, std::optional<int> window, Outcome& out) {
  require_kind(doc, {Kind::gstar_algebra}, "spectral");
  const int N = window_or(window, doc, kDefaultAlgebraWindow);
  const auto in = io::gstar_from_json(doc.payload);
  const GStarStructure& s = in.structure;
  if (!axioms_hold(s, out)) return;

  const SpectralRun run = run_pages(s, N);
  const EquivariantCohomology e = equivariant_cohomology(s, N);
  const auto basic_h = cohomology_dims(s.complex());
  const FormalityVerdict v = formality_verdict(e, basic_h, s.lie.dim, N, &run, &s);
  out.stable_through = std::min(run.stable_through, v.stable_through);

  Json pages = Json::array();
  for (const auto& p : run.pages) pages.push_back(page_json(p));
  out.results["pages"] = std::move(pages);
  out.results["collapse_page"] = run.collapse_page;
  out.results["e_infinity"] = dims_json(head(run.e_infinity, run.stable_through));
  out.results["cohomology"] = dims_json(head(run.cohomology, run.stable_through));
  out.results["converged"] = run.converged;
  Json methods = Json::array();
  for (const auto& m : v.methods) methods.push_back(method_json(m));
  Json verdict{{"formal", v.formal}, {"conclusive", v.conclusive}, {"method", to_string(v.method)}};
  if (v.witness_degree) verdict["witness_degree"] = *v.witness_degree;
  if (!v.witness.empty()) verdict["witness"] = v.witness;
  verdict["stable_through"] = v.stable_through;
  verdict["conflict"] = v.conflict;
  verdict["methods"] = std::move(methods);
  out.results["formality"] = std::move(verdict);

  if (!run.note.empty()) out.note(run.note);
  if (v.conflict) {
    out.note("formality methods disagree");
    out.raise(kVerdictFailure);
  }
  if (!run.converged) out.raise(kVerdictFailure);
  if (!run.conclusive || !v.conclusive) out.raise(kInconclusive);
}

// ---------------------------------------------------------------- module

Json hilbert_json(const HilbertSeriesWindow& h) {
  Json j{{"coeffs", dims_json(h.coeffs)}};
  j["closed_form"] = h.closed_form ? io::to_json(*h.closed_form) : Json(nullptr);
  j["certificate"] = h.certificate;
  return j;
}

Json tor_json(const TorTable& t) {
  Json dims = Json::array(), totals = Json::array();
  for (std::size_t i = 0; i < t.dims.size(); ++i) {
    dims.push_back(dims_json(t.dims[i]));
    totals.push_back(t.total(i));
  }
  return Json{{"totals", std::move(totals)}, {"dims", std::move(dims)}};
}

Json depth_json(const DepthDimension& d) {
  return Json{{"depth", d.depth ? Json(*d.depth) : Json("infinity")},
              {"krull_dim", d.krull_dim < 0 ? Json("-infinity") : Json(d.krull_dim)},
              {"cohen_macaulay", d.cohen_macaulay},
              {"conclusive", d.conclusive},
              {"note", d.note}};
}

void cmd_module(const io::InputDocument& doc, std::optional<int> window, Outcome& out) {
  require_kind(doc, {Kind::module_presentation, Kind::ses}, "module");
  const std::optional<int> fallback = window ? window : doc.max_degree;
  if (doc.kind == Kind::ses) {
    const auto in = io::ses_from_json(doc.payload, fallback);
    const auto* m = std::get_if<io::ModuleSes>(&in);
    if (!m) throw UsageError("module expects a sequence of modules; use 'cohomology' for complexes");
    const SesCmReport r = ses_cm_check(m->sub.presentation, m->middle.presentation, m->quotient.presentation,
                                       m->inclusion, m->projection);
    const char* status = r.status == SesCmStatus::verified            ? "verified"
                         : r.status == SesCmStatus::lemma_violated    ? "lemma violated"
                         : r.status == SesCmStatus::hypotheses_not_met ? "hypotheses not met"
                                                                        : "not short exact";
    out.stable_through = std::min({m->sub.presentation.window, m->middle.presentation.window, m->quotient.presentation.window});
    out.results["status"] = status;
    out.results["sub"] = depth_json(r.sub);
    out.results["middle"] = depth_json(r.middle);
    out.results["quotient"] = depth_json(r.quotient);
    if (!r.message.empty()) out.note(r.message);
    if (r.status == SesCmStatus::lemma_violated) out.raise(kVerdictFailure);
    if (r.status == SesCmStatus::not_short_exact) out.raise(kInvalidInput);
    return;
  }
  const auto in = io::module_from_json(doc.payload, fallback);
  const GradedModule m(in.presentation);
  out.stable_through = m.window();
  out.results["window"] = m.window();
  out.results["required_window"] = required_window(in.presentation);
  out.results["hilbert"] = hilbert_json(hilbert(m));
  out.results["tor"] = tor_json(koszul_tor(m));
  const FreenessVerdict f = freeness_test(m);
  out.results["free"] = Json{{"free", f.free}, {"ranks", ints_json(f.ranks)}, {"window_sufficient", f.window_sufficient}, {"note", f.note}};
  const DepthDimension d = depth_dim_cm(m);
  out.results["depth"] = depth_json(d);
  const LocalizedRank lr = localized_rank(m);
  out.results["localized_rank"] = Json{{"rank", lr.rank ? Json(*lr.rank) : Json(nullptr)}, {"note", lr.note}};
  if (!f.window_sufficient) {
    out.note(f.note);
    out.raise(kInconclusive);
  }
  if (!d.conclusive || !lr.rank) out.raise(kInconclusive);
  if (in.dim_h_c) {
    const LocalizationVerdict v = localization_rank_check(in.presentation, *in.dim_h_c);
    out.results["localization"] = Json{{"consistent", v.consistent ? Json(*v.consistent) : Json(nullptr)}, {"message", v.message}};
    if (v.consistent && !*v.consistent) {
      out.note(v.message);
      out.raise(kVerdictFailure);
    }
  }
}

// ---------------------------------------------------------------- strata

void cmd_strata(const io::InputDocument& doc, std::optional<int> window, Outcome& out) {
  require_kind(doc, {Kind::strata_model}, "strata");
  const int N = window_or(window, doc, kDefaultSeriesWindow);
  const auto in = io::strata_from_json(doc.payload);
  const ValidationReport report = validate_strata(in.model);
  if (!report.ok()) {
    out.results["issues"] = issues_json(report);
    for (const auto& i : report.issues) out.note(i.rule + ": " + i.message);
    out.raise(kInvalidInput);
    return;
  }
  out.stable_through = N;
  const PoincareSeries eq = equivariant_series_from_strata(in.model);
  out.results["equivariant"] = io::to_json(eq);
  out.results["equivariant_expansion"] = dims_json(eq.expand(N));
  if (in.formal.value_or(false)) {
    try {
      const FormalBasicSeries b = basic_series_formal(in.model, "asserted in input");
      out.results["basic"] = io::to_json(b.basic.polynomial());
      out.results["formality_source"] = b.formality_source;
      out.results["euler"] = b.euler;
      out.results["closed_leaf_euler"] = b.closed_leaf_euler;
      const auto expanded = eq.expand(N);
      const auto divided = PoincareSeries(b.basic.polynomial(), in.model.dim_a).expand(N);
      out.results["series_identity"] = expanded == divided;
      if (expanded != divided) {
        out.note("equivariant series differs from basic / (1-t^2)^dim_a");
        out.raise(kVerdictFailure);
      }
      if (b.euler != b.closed_leaf_euler) {
        out.note("Euler characteristic " + std::to_string(b.euler) + " differs from the closed-leaf value " +
                 std::to_string(b.closed_leaf_euler));
        out.raise(kVerdictFailure);
      }
    } catch (const InconsistentModel& e) {
      out.note(e.what());
      out.results["basic"] = nullptr;
      out.raise(kVerdictFailure);
    }
  } else {
    out.note("basic series needs equivariant formality; set \"formal\": true to assert it");
  }
  if (in.borel) {
    const BorelVerdict v = borel_check(in.borel->dim_h_m, in.borel->dim_h_c, in.borel->formal);
    out.results["borel"] = Json{{"inequality_holds", v.inequality_holds},
                                {"equality", v.equality},
                                {"formal", v.formal},
                                {"consistent", v.consistent},
                                {"message", v.message}};
    if (!v.consistent) {
      out.note(v.message);
      out.raise(kVerdictFailure);
    }
  }
}

// ---------------------------------------------------------------- morse

void cmd_morse(const io::InputDocument& doc, std::optional<int> window, Outcome& out) {
  require_kind(doc, {Kind::morse_data}, "morse");
  const int N = window_or(window, doc, kDefaultSeriesWindow);
  const auto in = io::morse_from_json(doc.payload);
  const ValidationReport report = validate_morse(in.data, in.dim_a);
  if (!report.ok()) {
    out.results["issues"] = issues_json(report);
    for (const auto& i : report.issues) out.note(i.rule + ": " + i.message);
    out.raise(kInvalidInput);
    return;
  }
  out.stable_through = N;
  const MorseSeries ms = morse_series(in.data, in.dim_a);
  out.results["basic"] = io::to_json(ms.basic.polynomial());
  out.results["equivariant"] = io::to_json(ms.equivariant);
  out.results["equivariant_expansion"] = dims_json(ms.equivariant.expand(N));
  if (!in.poincare) {
    out.note("no Poincare polynomial given; perfectness not checked");
    return;
  }
  const PerfectnessVerdict v = perfectness_check(in.data, *in.poincare, in.dim_a);
  Json gap{{"ok", v.gap.ok}, {"quotient", dims_json(v.gap.quotient)}, {"quotient_exact", v.gap.quotient_exact}};
  if (v.gap.violation_degree) gap["violation_degree"] = *v.gap.violation_degree;
  gap["message"] = v.gap.message;
  out.results["perfect"] = v.perfect;
  out.results["gap"] = std::move(gap);
  if (!v.gap.ok) {
    out.note(v.gap.message);
    out.raise(kVerdictFailure);
  }
}

// ---------------------------------------------------------------- polytope

void cmd_polytope(const io::InputDocument& doc, std::optional<int>, Outcome& out) {
  require_kind(doc, {Kind::polytope}, "polytope");
  const PolytopeData p = io::polytope_from_json(doc.payload);
  const ValidationReport report = validate_polytope(p);
  if (!report.ok()) {
    out.results["issues"] = issues_json(report);
    for (const auto& i : report.issues) out.note(i.rule + ": " + i.message);
    out.raise(kInvalidInput);
    return;
  }
  const PolytopeResult r = polytope_series(p);
  out.stable_through = r.basic.polynomial().degree();
  out.results["basic"] = io::to_json(r.basic.polynomial());
  out.results["euler"] = euler_at_minus_one(r.basic.polynomial());
  out.results["formal"] = r.formal;
  out.results["formality_source"] = r.formality_source;
  out.results["induced_strata"] = r.induced.strata.size();
  out.results["equivariant"] = io::to_json(equivariant_series_from_strata(r.induced));
}

// ---------------------------------------------------------------- fixtures

std::vector<std::filesystem::path> fixture_files(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) throw UsageError("fixture directory '" + dir + "' not found");
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw io::InputError("cannot open '" + p.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw io::InputError("'" + p.string() + "' is not valid JSON: " + e.what());
  }
}

Outcome cmd_fixtures(const CommandOptions& opt) {
  Outcome out;
  const auto files = fixture_files(opt.fixture_dir);
  if (opt.fixtures_action == "list") {
    Json list = Json::array();
    for (const auto& f : files) {
      const std::string stem = f.stem().string();
      if (!opt.filter.empty() && stem.find(opt.filter) == std::string::npos) continue;
      const Json raw = read_json(f);
      Json entry{{"file", f.filename().string()}, {"kind", raw.value("kind", "")}, {"name", raw.value("name", "")}};
      Json commands = Json::array();
      if (raw.contains("expect") && raw["expect"].is_object())
        for (const auto& [cmd, _] : raw["expect"].items()) commands.push_back(cmd);
      entry["goldens"] = std::move(commands);
      list.push_back(std::move(entry));
    }
    out.results["fixtures"] = std::move(list);
    return out;
  }
  if (opt.fixtures_action != "run") throw UsageError("fixtures action must be 'list' or 'run'");

  Json goldens = Json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& f : files) {
    const std::string stem = f.stem().string();
    if (!opt.filter.empty() && stem.find(opt.filter) == std::string::npos) continue;
    const Json raw = read_json(f);
    if (!raw.contains("expect") || !raw["expect"].is_object()) continue;
    // The expectation block is not part of the input being hashed or parsed.
    Json input = raw;
    input.erase("expect");
    for (const auto& [cmd, exp] : raw["expect"].items()) {
      const std::string id = stem + ":" + cmd;
      std::optional<int> window;
      if (exp.contains("max_degree")) window = exp["max_degree"].get<int>();
      Json result;
      int code = kOk;
      try {
        const io::InputDocument doc = io::parse_document(input);
        result = run_on_document(cmd, doc, input, window);
        code = result["exit_code"].get<int>();
      } catch (const io::InputError& e) {
        code = kInvalidInput;
        result = Json{{"exit_code", code}, {"diagnostics", Json::array({e.what()})}};
      }
      std::optional<std::string> mismatch;
      const int want = exp.value("exit_code", 0);
      if (want != code) mismatch = "exit code " + std::to_string(code) + ", expected " + std::to_string(want);
      if (!mismatch && exp.contains("results")) mismatch = subset_mismatch(exp["results"], result.value("results", Json::object()), "results");
      if (!mismatch && exp.contains("diagnostics_contain")) {
        const std::string needle = exp["diagnostics_contain"].get<std::string>();
        bool found = false;
        for (const auto& d : result.value("diagnostics", Json::array()))
          if (d.get<std::string>().find(needle) != std::string::npos) found = true;
        if (!found) mismatch = "no diagnostic mentions '" + needle + "'";
      }
      Json entry{{"id", id}, {"pass", !mismatch}};
      if (mismatch) {
        entry["diff"] = *mismatch;
        out.note(id + ": " + *mismatch);
        ++failed;
      } else {
        ++passed;
      }
      goldens.push_back(std::move(entry));
    }
  }

  Json criteria = Json::array();
  for (const auto& c : run_acceptance(opt.fixture_dir, opt.filter)) {
    Json entry{{"id", c.id}, {"title", c.title}, {"pass", c.pass}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    if (c.pass) {
      ++passed;
    } else {
      ++failed;
      out.note("criterion " + std::to_string(c.id) + ": " + c.detail);
    }
    criteria.push_back(std::move(entry));
  }
  out.results["goldens"] = std::move(goldens);
  out.results["criteria"] = std::move(criteria);
  out.results["passed"] = passed;
  out.results["failed"] = failed;
  if (failed > 0) out.raise(kVerdictFailure);
  return out;
}

Json finish(const std::string& command, const Outcome& out, const io::InputDocument* doc, const Json* raw,
            std::optional<int> max_degree) {
  Json j = Json::object();
  j["schema_version"] = io::kSchemaVersion;
  j["command"] = command;
  if (doc) {
    j["kind"] = io::to_string(doc->kind);
    j["name"] = doc->name;
  }
  if (raw) j["input_hash"] = io::input_hash(*raw);
  j["status"] = status_name(out.exit_code);
  j["exit_code"] = out.exit_code;
  if (max_degree) j["max_degree"] = *max_degree;
  j["stable_through"] = out.stable_through ? Json(*out.stable_through) : Json(nullptr);
  j["results"] = out.results;
  j["diagnostics"] = out.diagnostics;
  return j;
}

template <class F>
void guarded(Outcome& out, F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    for (const auto& i : e.report().issues) out.note(i.rule + ": " + i.message);
    out.raise(kInvalidInput);
  } catch (const HypothesisError& e) {
    out.note(std::string("refused: ") + e.what());
    out.raise(kVerdictFailure);
  } catch (const InconsistentModel& e) {
    out.note(e.what());
    out.raise(kVerdictFailure);
  } catch (const std::invalid_argument& e) {
    out.note(e.what());
    out.raise(kInvalidInput);
  } catch (const std::logic_error& e) {
    out.note(std::string("internal consistency check failed: ") + e.what());
    out.raise(kVerdictFailure);
  } catch (const std::exception& e) {
    out.note(e.what());
    out.raise(kVerdictFailure);
  }
}

void render_value(std::ostringstream& os, const Json& v, const std::string& indent) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_object() || (x.is_array() && !x.empty() && (x.front().is_object() || x.front().is_array()))) {
        os << indent << k << ":\n";
        render_value(os, x, indent + "  ");
      } else {
        os << indent << k << ": " << x.dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        os << indent << "-\n";
        render_value(os, x, indent + "  ");
      } else {
        os << indent << "- " << x.dump() << "\n";
      }
    }
  } else {
    os << indent << v.dump() << "\n";
  }
}

}  // namespace

std::string status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kVerdictFailure: return "verdict_failure";
    case kInvalidInput: return "invalid_input";
    case kInconclusive: return "inconclusive";
    default: return "unknown";
  }
}

std::optional<std::string> subset_mismatch(const Json& expected, const Json& actual, const std::string& path) {
  if (expected.is_object()) {
    if (!actual.is_object()) return path + ": expected an object, got " + actual.dump();
    for (const auto& [k, v] : expected.items()) {
      if (!actual.contains(k)) return path + "." + k + ": missing";
      if (auto m = subset_mismatch(v, actual[k], path + "." + k)) return m;
    }
    return std::nullopt;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size())
      return path + ": expected " + expected.dump() + ", got " + actual.dump();
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (auto m = subset_mismatch(expected[i], actual[i], path + "[" + std::to_string(i) + "]")) return m;
    return std::nullopt;
  }
  if (expected != actual) return path + ": expected " + expected.dump() + ", got " + actual.dump();
  return std::nullopt;
}

Json run_on_document(const std::string& command, const io::InputDocument& doc, const Json& raw,
                     std::optional<int> max_degree) {
  Outcome out;
  guarded(out, [&] {
    if (command == "validate") cmd_validate(doc, max_degree, out);
    else if (command == "cohomology") cmd_cohomology(doc, max_degree, out);
    else if (command == "equivariant") cmd_equivariant(doc, max_degree, out);
    else if (command == "spectral") cmd_spectral(doc, max_degree, out);
    else if (command == "module") cmd_module(doc, max_degree, out);
    else if (command == "strata") cmd_strata(doc, max_degree, out);
    else if (command == "morse") cmd_morse(doc, max_degree, out);
    else if (command == "polytope") cmd_polytope(doc, max_degree, out);
    else throw UsageError("unknown command '" + command + "'");
  });
  const std::optional<int> shown = max_degree ? max_degree : doc.max_degree;
  return finish(command, out, &doc, &raw, shown);
}

std::string render_text(const Json& result) {
  std::ostringstream os;
  os << result.value("command", "") << ": " << result.value("status", "") << " (exit " << result.value("exit_code", 0)
     << ")\n";
  if (result.contains("name") && !result["name"].get<std::string>().empty()) os << "name: " << result["name"].get<std::string>() << "\n";
  if (result.contains("stable_through") && !result["stable_through"].is_null())
    os << "stable through degree " << result["stable_through"].dump() << "\n";
  if (result.contains("results")) render_value(os, result["results"], "  ");
  for (const auto& d : result.value("diagnostics", Json::array())) os << "note: " << d.get<std::string>() << "\n";
  return os.str();
}

CommandResult run_command(const CommandOptions& opt) {
  CommandResult res;
  if (opt.command == "fixtures") {
    Outcome out;
    guarded(out, [&] { out = cmd_fixtures(opt); });
    res.document = finish("fixtures", out, nullptr, nullptr, std::nullopt);
  } else if (std::find(command_names().begin(), command_names().end(), opt.command) == command_names().end()) {
    Outcome out;
    out.note("unknown command '" + opt.command + "'");
    out.raise(kInvalidInput);
    res.document = finish(opt.command, out, nullptr, nullptr, std::nullopt);
  } else if (!opt.input) {
    Outcome out;
    out.note("--input is required");
    out.raise(kInvalidInput);
    res.document = finish(opt.command, out, nullptr, nullptr, std::nullopt);
  } else {
    Json raw;
    std::optional<io::InputDocument> doc;
    Outcome out;
    guarded(out, [&] {
      raw = read_json(*opt.input);
      doc = io::parse_document(raw);
    });
    if (doc) {
      res.document = run_on_document(opt.command, *doc, raw, opt.max_degree);
    } else {
      res.document = finish(opt.command, out, nullptr, raw.is_null() ? nullptr : &raw, opt.max_degree);
    }
  }
  res.exit_code = res.document["exit_code"].get<int>();
  res.text = opt.format == "text" ? render_text(res.document) : res.document.dump(2) + "\n";
  return res;
}

}  // namespace foliacoh::cli
