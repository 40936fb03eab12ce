#include "foliacoh/foliation.hpp"

#include <algorithm>
#include <set>

namespace foliacoh {

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& i : issues) out += (out.empty() ? "" : "; ") + i.rule + ": " + i.message;
  return out.empty() ? "valid" : out;
}

ValidationError::ValidationError(ValidationReport report)
    : std::invalid_argument(report.summary()), report_(std::move(report)) {}

std::vector<const Stratum*> FoliationStrataModel::closed_leaves() const {
  std::vector<const Stratum*> out;
  for (const auto& s : strata) {
    const bool listed = std::find(closed_leaf_components.begin(), closed_leaf_components.end(), s.name) !=
                        closed_leaf_components.end();
    if (closed_leaf_components.empty() ? s.isotropy_dim == dim_a : listed) out.push_back(&s);
  }
  return out;
}

ValidationReport validate_strata(const FoliationStrataModel& m) {
  ValidationReport r;
  auto issue = [&](std::string rule, std::string msg) { r.issues.push_back({std::move(rule), std::move(msg)}); };
  if (m.q < 0) issue("codimension", "q must be >= 0");
  if (m.dim_a < 0) issue("algebra-dimension", "dim_a must be >= 0");
  if (m.strata.empty()) issue("strata", "at least one stratum is required");
  std::set<std::string> names;
  for (const auto& s : m.strata) {
    if (!names.insert(s.name).second) issue("stratum-names", "duplicate stratum '" + s.name + "'");
    if (s.codim < 0 || s.codim > m.q)
      issue("stratum-codim", "'" + s.name + "' has codimension " + std::to_string(s.codim) + " outside [0, q]");
    if (s.isotropy_dim < 0 || s.isotropy_dim > m.dim_a)
      issue("stratum-isotropy",
            "'" + s.name + "' has isotropy dimension " + std::to_string(s.isotropy_dim) + " outside [0, dim_a]");
  }
  for (const auto& name : m.closed_leaf_components) {
    const auto it = std::find_if(m.strata.begin(), m.strata.end(), [&](const Stratum& s) { return s.name == name; });
    if (it == m.strata.end()) {
      issue("closed-leaf-names", "closed-leaf component '" + name + "' is not a stratum");
    } else if (it->isotropy_dim != m.dim_a) {
      issue("closed-leaf-isotropy", "closed-leaf component '" + name + "' must have isotropy dimension dim_a");
    }
  }
  if (!m.closed_leaf_components.empty())
    for (const auto& s : m.strata)
      if (s.isotropy_dim == m.dim_a &&
          std::find(m.closed_leaf_components.begin(), m.closed_leaf_components.end(), s.name) ==
              m.closed_leaf_components.end())
        issue("closed-leaf-isotropy", "'" + s.name + "' has full isotropy but is not listed as a closed-leaf component");
  const auto closed = m.closed_leaves();
  for (const Stratum* s : closed)
    if (s->codim % 2 != 0)
      issue("closed-leaf-codim", "closed-leaf component '" + s->name + "' has odd codimension " + std::to_string(s->codim));
  if (!closed.empty() && 2 * m.dim_a > m.q)
    issue("closed-leaf-bound", "a closed leaf exists but 2 dim_a = " + std::to_string(2 * m.dim_a) + " exceeds q = " +
                                   std::to_string(m.q));
  for (const Stratum* s : closed)
    if (s->codim == m.q && s->quotient_poincare.coeffs() == std::vector<std::int64_t>{1} && m.q % 2 != 0)
      issue("isolated-closed-leaf", "isolated closed leaf '" + s->name + "' requires an even codimension q, got q = " +
                                        std::to_string(m.q));
  return r;
}

PoincareSeries equivariant_series_from_strata(const FoliationStrataModel& m) {
  if (auto r = validate_strata(m); !r.ok()) throw ValidationError(r);
  PoincareSeries total;
  for (const auto& s : m.strata)
    total = total + PoincareSeries(SignedPolynomial::monomial(s.codim) * s.quotient_poincare.polynomial(), s.isotropy_dim);
  return total;
}

FormalBasicSeries basic_series_formal(const FoliationStrataModel& m, std::string formality_source) {
  FormalBasicSeries out;
  out.equivariant = equivariant_series_from_strata(m);
  out.formality_source = std::move(formality_source);
  SignedPolynomial basic;
  for (const auto& s : m.strata)
    basic = basic + SignedPolynomial::monomial(s.codim) * SignedPolynomial::one_minus_t2(m.dim_a - s.isotropy_dim) *
                        s.quotient_poincare.polynomial();
  if (!basic.nonnegative())
    throw InconsistentModel("model inconsistent with formality: basic series " + basic.to_string() +
                            " has a negative coefficient");
  const PoincareSeries check = out.equivariant * PoincareSeries(SignedPolynomial::one_minus_t2(m.dim_a), 0);
  if (!check.is_polynomial() || !(check.numerator() == basic))
    throw InconsistentModel("model inconsistent with formality: equivariant series times (1-t^2)^dim_a is " +
                            check.to_string());
  out.basic = PoincarePolynomial(basic);
  out.euler = euler_at_minus_one(basic);
  for (const Stratum* s : m.closed_leaves()) out.closed_leaf_euler += s->quotient_poincare.polynomial().evaluate(-1);
  return out;
}

BorelVerdict borel_check(std::int64_t dim_h_m, std::int64_t dim_h_c, bool formal) {
  if (dim_h_m < 0 || dim_h_c < 0) throw std::invalid_argument("total dimensions must be >= 0");
  BorelVerdict v;
  v.inequality_holds = dim_h_c <= dim_h_m;
  v.equality = dim_h_c == dim_h_m;
  v.formal = formal;
  v.consistent = v.inequality_holds && (v.equality == formal);
  if (!v.inequality_holds) {
    v.message = "dim H(C/F) = " + std::to_string(dim_h_c) + " exceeds dim H(M,F) = " + std::to_string(dim_h_m);
  } else if (v.equality != formal) {
    v.message = v.equality ? "totals are equal but the action is declared not formal"
                           : "totals differ but the action is declared formal";
  } else {
    v.message = v.equality ? "equal totals, formal" : "strict inequality, not formal";
  }
  return v;
}

LocalizationVerdict localization_rank_check(const GradedModulePresentation& module, std::int64_t dim_h_c) {
  LocalizationVerdict v;
  const auto lr = localized_rank(GradedModule(module));
  v.rank = lr.rank;
  if (!lr.rank) {
    v.message = "inconclusive: " + lr.note;
    return v;
  }
  v.consistent = *lr.rank == dim_h_c;
  v.message = "localized rank " + std::to_string(*lr.rank) + (*v.consistent ? " equals " : " differs from ") +
              "dim H(C/F) = " + std::to_string(dim_h_c);
  return v;
}

ValidationReport validate_morse(const MorseData& d, int dim_a) {
  ValidationReport r;
  if (d.components.empty()) r.issues.push_back({"components", "at least one critical component is required"});
  for (const auto& c : d.components) {
    if (c.index < 0) r.issues.push_back({"index", "'" + c.name + "' has negative index"});
    if (c.isotropy_dim < 0 || c.isotropy_dim > dim_a)
      r.issues.push_back({"isotropy", "'" + c.name + "' has isotropy dimension outside [0, dim_a]"});
  }
  return r;
}

MorseSeries morse_series(const MorseData& d, int dim_a) {
  if (auto r = validate_morse(d, dim_a); !r.ok()) throw ValidationError(r);
  SignedPolynomial basic;
  PoincareSeries equivariant;
  for (const auto& c : d.components) {
    const SignedPolynomial term = SignedPolynomial::monomial(c.index) * c.quotient_poincare.polynomial();
    basic = basic + term;
    equivariant = equivariant + PoincareSeries(term, c.isotropy_dim);
  }
  return {PoincarePolynomial(basic), equivariant};
}

PerfectnessVerdict perfectness_check(const MorseData& d, const PoincarePolynomial& basic, int dim_a) {
  PerfectnessVerdict v;
  v.series = morse_series(d, dim_a);
  v.perfect = v.series.basic == basic;
  const int window = std::max(v.series.basic.polynomial().degree(), basic.polynomial().degree()) + 1;
  v.gap = morse_gap(PoincareSeries(v.series.basic.polynomial()), PoincareSeries(basic.polynomial()), window);
  return v;
}

ValidationReport validate_polytope(const PolytopeData& p) {
  ValidationReport r;
  auto issue = [&](std::string rule, std::string msg) { r.issues.push_back({std::move(rule), std::move(msg)}); };
  if (p.f_vector.empty()) {
    issue("f-vector", "f-vector is empty");
    return r;
  }
  const int n = p.dimension();
  for (std::size_t i = 0; i < p.f_vector.size(); ++i)
    if (p.f_vector[i] < 1) issue("f-vector", "lambda_" + std::to_string(i) + " must be >= 1");
  if (p.f_vector.back() != 1) issue("f-vector", "lambda_n must be 1");
  std::int64_t euler = 0;
  for (std::size_t i = 0; i < p.f_vector.size(); ++i) euler += (i % 2 == 0 ? 1 : -1) * p.f_vector[i];
  if (euler != 1) issue("euler-relation", "alternating sum of the f-vector is " + std::to_string(euler) + ", expected 1");
  if (p.q != 2 * n) issue("codimension", "q = " + std::to_string(p.q) + " but twice the dimension is " + std::to_string(2 * n));
  if (p.edges) {
    const std::int64_t vertices = p.f_vector[0];
    if (n >= 1 && static_cast<std::int64_t>(p.edges->size()) != p.f_vector[1])
      issue("simple", std::to_string(p.edges->size()) + " edges listed, lambda_1 = " + std::to_string(p.f_vector[1]));
    std::vector<int> degree(static_cast<std::size_t>(vertices), 0);
    for (const auto& [a, b] : *p.edges) {
      if (a < 0 || b < 0 || a >= vertices || b >= vertices || a == b) {
        issue("simple", "edge (" + std::to_string(a) + ", " + std::to_string(b) + ") is not between two vertices");
        continue;
      }
      ++degree[static_cast<std::size_t>(a)];
      ++degree[static_cast<std::size_t>(b)];
    }
    for (std::size_t v = 0; v < degree.size(); ++v)
      if (degree[v] != n)
        issue("simple", "vertex " + std::to_string(v) + " meets " + std::to_string(degree[v]) + " edges, expected " +
                            std::to_string(n));
  }
  return r;
}

PolytopeResult polytope_series(const PolytopeData& p) {
  if (auto r = validate_polytope(p); !r.ok()) throw ValidationError(r);
  const int n = p.dimension();
  SignedPolynomial total;
  for (int i = 0; i <= n; ++i)
    total = total + p.f_vector[static_cast<std::size_t>(i)] *
                        (SignedPolynomial::monomial(p.q - 2 * i) * SignedPolynomial::one_minus_t2(i));
  PolytopeResult out;
  out.basic = PoincarePolynomial(total);
  out.formality_source = "simple polytope quotient";
  out.induced.q = p.q;
  out.induced.dim_a = n;
  for (int i = 0; i <= n; ++i)
    for (std::int64_t k = 0; k < p.f_vector[static_cast<std::size_t>(i)]; ++k) {
      Stratum s;
      s.name = "face" + std::to_string(i) + "_" + std::to_string(k + 1);
      s.codim = p.q - 2 * i;
      s.isotropy_dim = n - i;
      s.quotient_poincare = PoincarePolynomial(std::vector<std::int64_t>{1});
      out.induced.strata.push_back(std::move(s));
    }
  const auto cross = basic_series_formal(out.induced, out.formality_source);
  if (!(cross.basic == out.basic)) throw std::logic_error("polytope formula disagrees with its induced strata model");
  return out;
}

}  // namespace foliacoh
