#ifndef FOLIACOH_FOLIATION_HPP
#define FOLIACOH_FOLIATION_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "foliacoh/module.hpp"
#include "foliacoh/series.hpp"

namespace foliacoh {

struct ValidationIssue {
  std::string rule;  // stable identifier
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

/// Input data that violates its documented invariants.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Data consistent with its invariants but not with the caller's assumptions
/// (for example formality).
class InconsistentModel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One component X of an infinitesimal orbit-type manifold.
struct Stratum {
  std::string name;
  int codim = 0;
  int isotropy_dim = 0;
  PoincarePolynomial quotient_poincare;  // P_t(X / closure of the leaves)
};

struct FoliationStrataModel {
  int q = 0;
  int dim_a = 0;
  std::vector<Stratum> strata;
  /// Names of the closed-leaf components; when empty, the strata of full
  /// isotropy are taken.
  std::vector<std::string> closed_leaf_components;

  std::vector<const Stratum*> closed_leaves() const;
};

ValidationReport validate_strata(const FoliationStrataModel& m);

/// sum_X t^codim X P_t(X) / (1 - t^2)^{isotropy X}. Throws ValidationError.
PoincareSeries equivariant_series_from_strata(const FoliationStrataModel& m);

struct FormalBasicSeries {
  PoincarePolynomial basic;
  PoincareSeries equivariant;
  std::string formality_source;
  std::int64_t euler = 0;              // basic evaluated at t = -1
  std::int64_t closed_leaf_euler = 0;  // sum of closed-leaf quotient Euler characteristics
};

/// sum_X t^codim X (1 - t^2)^{dim_a - isotropy X} P_t(X), valid when the action is
/// equivariantly formal. Throws ValidationError, or InconsistentModel when the
/// result has a negative coefficient or disagrees with the equivariant series.
FormalBasicSeries basic_series_formal(const FoliationStrataModel& m,
                                      std::string formality_source = "asserted by caller");

struct BorelVerdict {
  bool inequality_holds = false;  // dim H(C/F) <= dim H(M, F)
  bool equality = false;
  bool formal = false;
  bool consistent = false;
  std::string message;
};

BorelVerdict borel_check(std::int64_t dim_h_m, std::int64_t dim_h_c, bool formal);

struct LocalizationVerdict {
  std::optional<bool> consistent;  // nullopt: inconclusive window
  std::optional<std::int64_t> rank;
  std::string message;
};

LocalizationVerdict localization_rank_check(const GradedModulePresentation& module, std::int64_t dim_h_c);

struct MorseComponent {
  std::string name;
  int index = 0;
  int isotropy_dim = 0;
  PoincarePolynomial quotient_poincare;
};

struct MorseData {
  std::vector<MorseComponent> components;
};

ValidationReport validate_morse(const MorseData& d, int dim_a);

struct MorseSeries {
  PoincarePolynomial basic;
  PoincareSeries equivariant;
};

MorseSeries morse_series(const MorseData& d, int dim_a);

struct PerfectnessVerdict {
  bool perfect = false;
  MorseSeries series;
  MorseGap gap;
};

PerfectnessVerdict perfectness_check(const MorseData& d, const PoincarePolynomial& basic, int dim_a);

struct PolytopeData {
  std::vector<std::int64_t> f_vector;  // lambda_0..lambda_n
  int q = 0;
  /// Optional vertex-edge incidences (vertices numbered from 0).
  std::optional<std::vector<std::pair<int, int>>> edges;

  int dimension() const { return static_cast<int>(f_vector.size()) - 1; }
};

ValidationReport validate_polytope(const PolytopeData& p);

struct PolytopeResult {
  PoincarePolynomial basic;
  FoliationStrataModel induced;
  bool formal = true;
  std::string formality_source;
};

/// sum_i lambda_i t^{q - 2i} (1 - t^2)^i, cross-checked against the induced
/// strata model. Throws ValidationError.
PolytopeResult polytope_series(const PolytopeData& p);

}  // namespace foliacoh

#endif  // FOLIACOH_FOLIATION_HPP
