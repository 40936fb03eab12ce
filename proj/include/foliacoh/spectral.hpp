#ifndef FOLIACOH_SPECTRAL_HPP
#define FOLIACOH_SPECTRAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "foliacoh/cartan.hpp"

namespace foliacoh {

/// E_r of the spectral sequence of the Cartan complex filtered by polynomial
/// degree p. Cell (p, q) has total degree n = p + q and form degree q - p.
struct DoubleComplexPage {
  int r = 1;
  int window = 0;
  int stable_through = 0;
  std::vector<std::vector<std::size_t>> dims;      // dims[n][p]
  std::vector<std::vector<std::size_t>> rank_out;  // rank of d_r leaving (p, n - p)

  std::size_t at(int p, int q) const;
  std::size_t total(int n) const;
  bool differentials_vanish() const;
};

/// E_1 for an abelian algebra acting with L = 0. Computed from the filtration
/// and from the vertical cohomology of each column, and checked against
/// dim S^p * dim H^{q-p}(A). Throws HypothesisError otherwise.
DoubleComplexPage e1_page(const GStarStructure& s, int max_degree);

struct SpectralRun {
  std::vector<DoubleComplexPage> pages;  // r = 1, 2, ...
  int collapse_page = 1;                 // first r with E_r = E_infinity
  std::vector<std::size_t> e_infinity;   // totals per degree
  std::vector<std::size_t> cohomology;   // H_g totals per degree
  bool converged = false;
  int stable_through = 0;
  bool conclusive = false;
  std::string note;
};

/// All pages until the filtration forces every later differential to vanish.
SpectralRun run_pages(const GStarStructure& s, int max_degree);

enum class FormalityMethod { e1_collapse, odd_vanishing, hilbert_factorization, surjectivity, free_module };

std::string to_string(FormalityMethod m);

struct MethodResult {
  FormalityMethod method = FormalityMethod::odd_vanishing;
  bool conclusive = false;
  bool formal = false;
  std::optional<int> witness_degree;
  std::string witness;
};

struct FormalityVerdict {
  bool formal = false;
  bool conclusive = false;
  FormalityMethod method = FormalityMethod::odd_vanishing;
  std::optional<int> witness_degree;
  std::string witness;
  int stable_through = 0;
  std::vector<MethodResult> methods;
  bool conflict = false;  // conclusive methods disagree
};

/// Formality of H_g against the Poincare polynomial of H(A) (basic_h) on
/// degrees 0..min(N, stable bound). Odd vanishing, Hilbert factorization and the
/// free-module test are always evaluated; E_1 collapse and surjectivity of
/// H_g -> H(A) when the optional inputs are given.
FormalityVerdict formality_verdict(const EquivariantCohomology& e, const std::vector<std::size_t>& basic_h,
                                   std::size_t dim_a, int max_degree, const SpectralRun* run = nullptr,
                                   const GStarStructure* algebra = nullptr);

/// Rank of the restriction H^n_g(A) -> H^n(A) for n = 0..window.
std::vector<std::size_t> restriction_ranks(const GStarStructure& s, const EquivariantCohomology& e);

}  // namespace foliacoh

#endif  // FOLIACOH_SPECTRAL_HPP
