#ifndef FOLIACOH_MODULE_HPP
#define FOLIACOH_MODULE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "foliacoh/linalg.hpp"
#include "foliacoh/polynomial_ring.hpp"
#include "foliacoh/series.hpp"

namespace foliacoh {

/// Finitely presented graded module over S = Q[u_1..u_r], deg u_i = 2.
/// relations[k][j] is the coefficient of generator j in relation k.
struct GradedModulePresentation {
  std::size_t dim_a = 0;
  std::vector<int> generator_degrees;
  std::vector<std::vector<MultiPolynomial>> relations;
  int window = 0;

  /// Throws std::invalid_argument for inhomogeneous relations or size mismatches.
  void validate() const;
  /// Internal degree of relation k (the degree of each nonzero term).
  int relation_degree(std::size_t k) const;

  static GradedModulePresentation free(std::size_t dim_a, std::vector<int> degrees, int window);
};

/// A vector in the free module: one polynomial per generator.
using FreeElement = std::vector<MultiPolynomial>;

/// Degreewise linear-algebra model of a presented module on [0, window].
class GradedModule {
 public:
  explicit GradedModule(GradedModulePresentation presentation);

  const GradedModulePresentation& presentation() const { return pres_; }
  int window() const { return pres_.window; }
  std::size_t vars() const { return pres_.dim_a; }
  std::size_t dim(int n) const;

  /// Free-module coordinates in degree n: monomial times generator.
  struct FreeBasisElement {
    std::size_t generator;
    Exponent exponent;
  };
  const std::vector<FreeBasisElement>& free_basis(int n) const;

  /// Coordinates in degree n of a homogeneous free element.
  Vector free_coordinates(int n, const FreeElement& element) const;

  /// Class in M_n (quotient coordinates) of a free vector in F_n.
  Vector quotient_coordinates(int n, const Vector& free_vector) const;

  /// Free vector representing quotient basis element j of M_n.
  Vector lift(int n, std::size_t j) const;

  /// Multiplication by u_var as a map M_n -> M_{n+2}, n + 2 <= window.
  Matrix multiplication(int n, std::size_t var) const;

  /// Relation span R_n contains v.
  bool is_relation(int n, const Vector& free_vector) const;

 private:
  struct Slice {
    std::vector<FreeBasisElement> basis;
    EchelonBasis relations{0};
    std::vector<std::size_t> quotient_coords;  // non-pivot free coordinates
    std::vector<long> position;                // free coord -> index in quotient_coords, -1 if pivot
  };
  const Slice& slice(int n) const;
  std::size_t index_of(int n, std::size_t generator, const Exponent& e) const;

  GradedModulePresentation pres_;
  std::vector<Slice> slices_;
};

/// Hilbert function on the window, plus a closed form p(t)/(1-t^2)^k when the
/// window certifies one.
struct HilbertSeriesWindow {
  std::vector<std::int64_t> coeffs;
  std::optional<PoincareSeries> closed_form;
  /// Numerator of h(t)(1-t^2)^{dim_a} on the window (not canonicalized).
  std::vector<std::int64_t> multiplied;
  std::string certificate;
};

HilbertSeriesWindow hilbert(const GradedModulePresentation& m);
HilbertSeriesWindow hilbert(const GradedModule& m);

/// tor[i][n] = dim Tor_i(M, Q) in internal degree n, i = 0..dim_a, n = 0..window.
struct TorTable {
  std::vector<std::vector<std::size_t>> dims;
  int window = 0;

  std::size_t total(std::size_t i) const;
  /// Largest i with Tor_i != 0 on the window; nullopt if all vanish.
  std::optional<std::size_t> top_nonzero() const;
};

TorTable koszul_tor(const GradedModule& m);
TorTable koszul_tor(const GradedModulePresentation& m);

/// Alternating sum of Koszul chain dimensions per internal degree.
std::vector<std::int64_t> koszul_euler(const GradedModule& m);

struct FreenessVerdict {
  bool free = false;
  std::vector<int> ranks;  // degrees of a minimal generating set, with multiplicity
  bool window_sufficient = false;
  std::string note;
};

FreenessVerdict freeness_test(const GradedModule& m);

/// Smallest window for which Koszul-based verdicts are not scoped.
int required_window(const GradedModulePresentation& m);

/// Window used when none is given: required_window plus room for a closed-form certificate.
int default_window(const GradedModulePresentation& m);

struct LocalizedRank {
  std::optional<std::int64_t> rank;  // nullopt: inconclusive
  std::string note;
};

LocalizedRank localized_rank(const GradedModule& m);

struct DepthDimension {
  std::optional<std::int64_t> depth;  // nullopt: +infinity (zero module)
  std::int64_t krull_dim = -1;        // -1 stands for the zero module's -infinity
  bool cohen_macaulay = false;
  bool conclusive = false;
  std::string note;
};

DepthDimension depth_dim_cm(const GradedModule& m);

/// Module homomorphism given on generators: images[j] is the image of source
/// generator j in the target free module.
struct ModuleMap {
  std::vector<FreeElement> images;
};

enum class SesCmStatus { verified, lemma_violated, hypotheses_not_met, not_short_exact };

struct SesCmReport {
  SesCmStatus status = SesCmStatus::hypotheses_not_met;
  DepthDimension sub, middle, quotient;
  std::string message;
};

SesCmReport ses_cm_check(const GradedModulePresentation& sub, const GradedModulePresentation& middle,
                         const GradedModulePresentation& quotient, const ModuleMap& inclusion,
                         const ModuleMap& projection);

/// Matrix of a generator-defined map in degree n (target quotient coords x source quotient coords).
/// Throws std::invalid_argument for maps that are not homogeneous of degree 0.
Matrix induced_matrix(const GradedModule& source, const GradedModule& target, const ModuleMap& map, int n);

}  // namespace foliacoh

#endif  // FOLIACOH_MODULE_HPP
