#include "foliacoh/acceptance.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "foliacoh/cartan.hpp"
#include "foliacoh/commands.hpp"
#include "foliacoh/fixtures.hpp"
#include "foliacoh/io.hpp"
#include "foliacoh/spectral.hpp"
#include "foliacoh/testing.hpp"

namespace foliacoh {

namespace {

using io::Json;

constexpr int kWindow = 8;

/// Collects failed checks for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool pass() const { return failures_.empty(); }
  std::string detail() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

std::string show(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<std::size_t> head(const std::vector<std::size_t>& v, int through) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= through; ++n) out.push_back(static_cast<std::size_t>(n) < v.size() ? v[static_cast<std::size_t>(n)] : 0);
  return out;
}

class Fixtures {
 public:
  explicit Fixtures(std::string dir) : dir_(std::move(dir)) {}

  Json raw(const std::string& stem) const {
    const auto path = std::filesystem::path(dir_) / (stem + ".json");
    std::ifstream in(path);
    if (!in) throw io::InputError("fixture '" + path.string() + "' is missing");
    Json j = Json::parse(in);
    j.erase("expect");
    return j;
  }

  Json run(const std::string& command, const std::string& stem, std::optional<int> window = std::nullopt) const {
    const Json j = raw(stem);
    return cli::run_on_document(command, io::parse_document(j), j, window);
  }

  io::InputDocument doc(const std::string& stem) const { return io::parse_document(raw(stem)); }

 private:
  std::string dir_;
};

struct NamedAlgebra {
  std::string name;
  GStarStructure structure;
  bool type_c = false;
};

/// Library fixtures plus the g*-algebra fixture files.
std::vector<NamedAlgebra> all_algebras(const Fixtures& fx, Checker& c) {
  std::vector<NamedAlgebra> out;
  for (auto& f : fixtures::gstar_fixtures()) out.push_back({f.name, f.structure, f.type_c});
  for (const char* stem : {"hopf_gstar", "lambda_theta", "s3_model", "trivial_h_1_0_1"}) {
    try {
      const auto in = io::gstar_from_json(fx.doc(stem).payload);
      const bool tc = !in.connection.empty() && detect_type_c(in.structure, in.connection).type_c;
      out.push_back({std::string(stem) + ".json", in.structure, tc});
    } catch (const std::exception& e) {
      c.expect(false, std::string(stem) + ": " + e.what());
    }
  }
  return out;
}

void criterion_1(const Fixtures& fx, Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  const Json strata = fx.run("strata", "hopf_strata");
  const Json segment = fx.run("polytope", "segment");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Json want = Json::array({1, 0, 1});
  c.expect(strata["exit_code"] == 0, "strata exit " + strata["exit_code"].dump());
  c.expect(strata["results"]["basic"] == want, "strata basic " + strata["results"]["basic"].dump());
  c.expect(strata["results"]["euler"] == 2, "strata euler " + strata["results"]["euler"].dump());
  c.expect(segment["exit_code"] == 0, "polytope exit " + segment["exit_code"].dump());
  c.expect(segment["results"]["basic"] == want, "segment basic " + segment["results"]["basic"].dump());
  c.expect(segment["results"]["euler"] == 2, "segment euler " + segment["results"]["euler"].dump());
  c.expect(seconds < 1.0, "took " + std::to_string(seconds) + " s");
}

void criterion_2(const Fixtures& fx, Checker& c) {
  const auto in = io::strata_from_json(fx.doc("hopf_strata").payload);
  const PoincareSeries eq = equivariant_series_from_strata(in.model);
  const PoincareSeries want(SignedPolynomial({1, 0, 1}), 1);
  c.expect(eq == want, "equivariant series " + eq.to_string());
  const FormalBasicSeries b = basic_series_formal(in.model);
  const auto lhs = eq.expand(20);
  const auto rhs = PoincareSeries(b.basic.polynomial(), in.model.dim_a).expand(20);
  c.expect(lhs == rhs, "expansion differs from basic / (1-t^2)");
  // Independent long division of (1 + t^2) by (1 - t^2): 1, 0, 2, 0, 2, ...
  std::vector<std::int64_t> division(21, 0);
  for (int n = 0; n <= 20; ++n)
    division[static_cast<std::size_t>(n)] = (n % 2 != 0) ? 0 : (n == 0 ? 1 : 2);
  c.expect(lhs == division, "expansion is not 1, 0, 2, 0, 2, ...");
}

void criterion_3(const Fixtures& fx, Checker& c) {
  const std::vector<std::pair<std::string, Json>> cases{
      {"segment", Json::array({1, 0, 1})},
      {"square", Json::array({1, 0, 2, 0, 1})},
      {"triangle", Json::array({1, 0, 1, 0, 1})}};
  for (const auto& [stem, want] : cases) {
    const Json r = fx.run("polytope", stem);
    c.expect(r["exit_code"] == 0 && r["results"]["basic"] == want, stem + " gives " + r["results"].dump());
  }
  for (const auto& [stem, rule] : std::vector<std::pair<std::string, std::string>>{{"bad_euler", "euler-relation"},
                                                                                     {"bad_q", "codimension"}}) {
    const Json r = fx.run("polytope", stem);
    bool named = false;
    for (const auto& d : r["diagnostics"])
      if (d.get<std::string>().rfind(rule, 0) == 0) named = true;
    c.expect(r["exit_code"] == 2 && named, stem + " not rejected by rule " + rule);
  }
}

void criterion_4(Checker& c) {
  for (std::size_t r : {1u, 2u}) {
    const GStarStructure w = weil_algebra(LieAlgebra::abelian(r), 10);
    const auto h = head(cohomology_dims(w.complex()), w.stable_through());
    std::vector<std::size_t> want(h.size(), 0);
    want[0] = 1;
    c.expect(w.stable_through() == 8, "stable window of W truncated at 10 is " + std::to_string(w.stable_through()));
    c.expect(h == want, "H(W) for dim " + std::to_string(r) + " is " + show(h));
    c.expect(check_gstar_axioms(w).ok(), "W for dim " + std::to_string(r) + " fails an axiom");
  }
}

void criterion_5(const Fixtures& fx, Checker& c) {
  for (const auto& a : all_algebras(fx, c)) {
    const auto e = equivariant_cohomology(a.structure, kWindow);
    const auto w = weil_model_cohomology(a.structure, kWindow);
    const int common = std::min({e.stable_through, w.stable_through, kWindow});
    c.expect(head(e.dims, common) == head(w.dims, common),
             a.name + ": Cartan " + show(head(e.dims, common)) + " vs Weil " + show(head(w.dims, common)));
    c.expect(common >= std::min(kWindow, a.structure.stable_through()), a.name + ": compared only through " + std::to_string(common));
  }
}

void criterion_6(const Fixtures& fx, Checker& c) {
  std::size_t checked = 0;
  for (const auto& a : all_algebras(fx, c)) {
    if (!a.type_c) continue;
    ++checked;
    const auto e = equivariant_cohomology(a.structure, kWindow);
    const auto basic = head(cohomology_dims(basic_subcomplex(a.structure).complex), e.stable_through);
    c.expect(basic == head(e.dims, e.stable_through),
             a.name + ": equivariant " + show(head(e.dims, e.stable_through)) + " vs basic " + show(basic));
  }
  c.expect(checked >= 3, "only " + std::to_string(checked) + " type (C) fixtures");
}

FormalityVerdict verdict_for(const GStarStructure& s, SpectralRun* run_out = nullptr) {
  const SpectralRun run = run_pages(s, kWindow);
  const auto e = equivariant_cohomology(s, kWindow);
  const auto v = formality_verdict(e, cohomology_dims(s.complex()), s.lie.dim, kWindow, &run, &s);
  if (run_out) *run_out = run;
  return v;
}

void criterion_7(const Fixtures& fx, Checker& c) {
  for (const auto& f : fixtures::gstar_fixtures()) {
    const bool trivial = f.name.rfind("trivial", 0) == 0 || f.name == "s3_trivial";
    if (!trivial) continue;
    SpectralRun run;
    const auto v = verdict_for(f.structure, &run);
    c.expect(run.collapse_page == 1, f.name + " collapses at E_" + std::to_string(run.collapse_page));
    c.expect(v.conclusive && v.formal && !v.conflict, f.name + " not declared formal");
  }
  const auto hopf = io::gstar_from_json(fx.doc("hopf_gstar").payload).structure;
  const auto v = verdict_for(hopf);
  c.expect(v.conclusive && !v.formal, "Hopf model declared formal");
  c.expect(v.method == FormalityMethod::hilbert_factorization, "Hopf witness method " + to_string(v.method));
  c.expect(v.witness_degree == 1, "Hopf witness degree " + (v.witness_degree ? std::to_string(*v.witness_degree) : "none"));
  c.expect(!v.conflict, "Hopf methods conflict");
  std::vector<std::pair<std::string, GStarStructure>> odd{{"trivial_h_1_0_1", fixtures::trivial_action(1, {1, 0, 1})},
                                                          {"trivial_h_1_0_1_0_1_r2", fixtures::trivial_action(2, {1, 0, 1, 0, 1})},
                                                          {"weil_1", weil_algebra(LieAlgebra::abelian(1), 10)}};
  for (const auto& [name, s] : odd) {
    const auto w = verdict_for(s);
    c.expect(w.formal && w.conclusive && w.method == FormalityMethod::odd_vanishing,
             name + " verdict " + (w.formal ? "formal" : "not formal") + " via " + to_string(w.method));
  }
}

void criterion_8(const Fixtures& fx, Checker& c) {
  const Json q = fx.run("module", "residue_field_2");
  c.expect(q["results"]["tor"]["totals"] == Json::array({1, 2, 1}), "Tor of Q over two variables " + q["results"]["tor"]["totals"].dump());
  const Json s = fx.run("module", "s_mod_u");
  const auto& tor1 = s["results"]["tor"]["dims"][1];
  c.expect(s["results"]["tor"]["totals"] == Json::array({1, 1}) && tor1.size() > 2 && tor1[2] == 1,
           "Tor of S/(u) " + s["results"]["tor"].dump());
  for (const char* stem : {"free_rank2"}) {
    const Json f = fx.run("module", stem);
    const auto& totals = f["results"]["tor"]["totals"];
    bool higher_zero = true;
    for (std::size_t i = 1; i < totals.size(); ++i) higher_zero = higher_zero && totals[i] == 0;
    c.expect(higher_zero && f["results"]["free"]["free"] == true, std::string(stem) + " has higher Tor");
  }
  for (const auto& g : fixtures::gstar_fixtures()) {
    const auto e = equivariant_cohomology(g.structure, kWindow);
    const auto v = formality_verdict(e, cohomology_dims(g.structure.complex()), g.structure.lie.dim, kWindow);
    const auto pres = module_presentation(e);
    const auto free = freeness_test(GradedModule(pres));
    c.expect(free.free == v.formal, g.name + ": free " + std::to_string(free.free) + " vs formal " + std::to_string(v.formal));
  }
}

void criterion_9(const Fixtures& fx, Checker& c) {
  const auto hopf = io::gstar_from_json(fx.doc("hopf_gstar").payload).structure;
  const auto hopf_module = module_presentation(equivariant_cohomology(hopf, kWindow));
  const auto lr = localized_rank(GradedModule(hopf_module));
  c.expect(lr.rank == 0, "Hopf module localized rank " + (lr.rank ? std::to_string(*lr.rank) : "inconclusive"));
  const auto file = fx.run("module", "hopf_module");
  c.expect(file["results"]["localized_rank"]["rank"] == 0, "hopf_module.json rank " + file["results"]["localized_rank"].dump());
  c.expect(file["results"]["localization"]["consistent"] == true, "hopf_module.json localization check failed");

  const auto trivial = fixtures::trivial_action(1, {1, 0, 1});
  const auto e = equivariant_cohomology(trivial, kWindow);
  const auto tr = localized_rank(GradedModule(module_presentation(e)));
  std::size_t total = 0;
  for (auto d : cohomology_dims(trivial.complex())) total += d;
  c.expect(tr.rank && *tr.rank == static_cast<std::int64_t>(total), "trivial fixture localized rank differs from dim H(A)");

  struct Triple {
    std::int64_t m, c;
    bool formal, consistent;
  };
  for (const Triple& t : {Triple{2, 2, true, true}, Triple{3, 2, false, true}, Triple{2, 2, false, false},
                          Triple{3, 2, true, false}, Triple{2, 3, true, false}, Triple{2, 3, false, false}}) {
    const auto v = borel_check(t.m, t.c, t.formal);
    c.expect(v.consistent == t.consistent, "borel_check(" + std::to_string(t.m) + ", " + std::to_string(t.c) + ", " +
                                               (t.formal ? "formal" : "not formal") + ")");
  }
}

void criterion_10(const Fixtures& fx, Checker& c) {
  const Json hopf = fx.run("morse", "hopf_morse");
  c.expect(hopf["exit_code"] == 0 && hopf["results"]["perfect"] == true, "Hopf Morse data not perfect");
  c.expect(hopf["results"]["gap"]["quotient"] == Json::array(), "Hopf Q = " + hopf["results"]["gap"]["quotient"].dump());
  const Json np = fx.run("morse", "morse_nonperfect");
  c.expect(np["exit_code"] == 0 && np["results"]["perfect"] == false, "non-perfect data misjudged");
  c.expect(np["results"]["gap"]["quotient"] == Json::array({0, 1}), "non-perfect Q = " + np["results"]["gap"]["quotient"].dump());
  const Json bad = fx.run("morse", "morse_violation");
  c.expect(bad["exit_code"] == 1 && bad["results"]["gap"]["ok"] == false, "indivisible gap not flagged");
}

void criterion_11(const Fixtures& fx, Checker& c) {
  for (const auto& a : all_algebras(fx, c)) {
    const auto r = check_gstar_axioms(a.structure);
    c.expect(r.ok(), a.name + " fails an axiom");
    c.expect(verify_complex(a.structure.complex()).ok, a.name + ": d^2 != 0");
    if (a.structure.lie.dim > 0) {
      const auto m = check_gstar_axioms(testing::mutate_lie_derivative(a.structure));
      c.expect(!m.get("L_X=di_X+i_Xd").ok, a.name + ": mutation not detected");
    }
  }
  const auto bad = CochainComplex{GradedVectorSpace{{1, 1, 1}, {}},
                                  {Matrix::identity(1), Matrix::identity(1), Matrix(0, 1)}, 2};
  const auto r = verify_complex(bad);
  c.expect(!r.ok && r.failing_degree == 0, "d_1 d_0 != 0 not detected");

  std::mt19937_64 rng(20260117);
  int les_failures = 0, euler_failures = 0;
  for (int k = 0; k < 100; ++k) {
    const auto ses = testing::random_split_ses(rng, 4, 6);
    if (les_exactness_check(ses).status != LesStatus::exact) ++les_failures;
    const auto rc = testing::random_complex(rng, 5, 6);
    const auto h = cohomology_dims(rc.complex);
    if (h != rc.expected_h || euler_characteristic(h) != euler_characteristic(rc.complex.space.dims)) ++euler_failures;
  }
  c.expect(les_failures == 0, std::to_string(les_failures) + " random split sequences fail LES exactness");
  c.expect(euler_failures == 0, std::to_string(euler_failures) + " random complexes fail the Euler check");
}

void criterion_12(const Fixtures& fx, Checker& c) {
  struct Expect {
    std::string stem;
    Json depth, krull;
    bool cm, free;
  };
  const std::vector<Expect> cases{{"free_rank2", 2, 2, true, true},
                                  {"residue_field_2", 0, 0, true, false},
                                  {"s_mod_u", 0, 0, true, false},
                                  {"mixed_sum", 1, 2, false, false},
                                  {"extension", 1, 1, true, true}};
  for (const auto& e : cases) {
    const Json r = fx.run("module", e.stem);
    const auto& d = r["results"]["depth"];
    c.expect(d["depth"] == e.depth && d["krull_dim"] == e.krull && d["cohen_macaulay"] == e.cm && d["conclusive"] == true,
             e.stem + ": " + d.dump());
    const bool free = r["results"]["free"]["free"] == true;
    const auto dim_a = fx.doc(e.stem).payload["dim_a"].get<std::int64_t>();
    const bool cm_max = d["cohen_macaulay"] == true && d["krull_dim"] == dim_a;
    c.expect(free == e.free, e.stem + ": freeness " + std::to_string(free));
    c.expect(cm_max == free, e.stem + ": CM of maximal dimension does not match freeness");
  }
  // Both directions on library modules with varied shapes.
  for (std::size_t r : {1u, 2u}) {
    for (const auto& m : {fixtures::free_module(r, {0, 2}, 2 + 2 * static_cast<int>(r) + 2), fixtures::residue_field(r, 2 * static_cast<int>(r) + 2),
                          fixtures::cyclic_quotient(r, 2, 4 + 2 * static_cast<int>(r)), fixtures::mixed_sum(r, 2 + 2 * static_cast<int>(r) + 2)}) {
      const GradedModule g(m);
      const auto d = depth_dim_cm(g);
      const bool cm_max = d.cohen_macaulay && d.krull_dim == static_cast<std::int64_t>(r);
      c.expect(cm_max == freeness_test(g).free, "CM-max vs free disagree over " + std::to_string(r) + " variables");
    }
  }
  const Json split = fx.run("module", "ses_modules_split");
  c.expect(split["results"]["status"] == "verified", "0 -> S -> S+S -> S -> 0: " + split["results"]["status"].dump());
  const Json ext = fx.run("module", "ses_modules");
  c.expect(ext["results"]["status"] == "hypotheses not met", "extension sequence: " + ext["results"]["status"].dump());
  const Json fields = fx.run("module", "ses_residue_fields");
  c.expect(fields["results"]["status"] == "verified", "0 -> Q -> Q+Q -> Q -> 0: " + fields["results"]["status"].dump());
}

struct Criterion {
  int id;
  const char* title;
  const char* tags;
  std::function<void(const Fixtures&, Checker&)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& fixture_dir, const std::string& filter) {
  const Fixtures fx(fixture_dir);
  const std::vector<Criterion> criteria{
      {1, "Hopf flow basic Betti numbers", "hopf strata polytope segment", criterion_1},
      {2, "equivariant series identity", "hopf strata series", criterion_2},
      {3, "polytope formula and validation", "polytope segment square triangle", criterion_3},
      {4, "Weil acyclicity", "weil", [](const Fixtures&, Checker& c) { criterion_4(c); }},
      {5, "Cartan and Weil models agree", "gstar cartan weil hopf trivial lambda s3", criterion_5},
      {6, "free actions: equivariant = basic cohomology", "gstar hopf lambda exterior", criterion_6},
      {7, "spectral sequence and formality verdicts", "spectral formality hopf trivial", criterion_7},
      {8, "Koszul complex and Tor", "module koszul tor", criterion_8},
      {9, "Borel localization", "borel hopf module", criterion_9},
      {10, "Morse perfectness and inequalities", "morse hopf", criterion_10},
      {11, "property suites", "property axioms les euler", criterion_11},
      {12, "depth, dimension and Cohen-Macaulay verdicts", "module depth cm ses", criterion_12}};
  std::vector<CriterionResult> out;
  for (const auto& cr : criteria) {
    const std::string title = cr.title, tags = cr.tags;
    if (!filter.empty() && title.find(filter) == std::string::npos && tags.find(filter) == std::string::npos) continue;
    Checker c;
    try {
      cr.run(fx, c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    out.push_back({cr.id, title, tags, c.pass(), c.detail()});
  }
  return out;
}

}  // namespace foliacoh
