#ifndef FOLIACOH_CARTAN_HPP
#define FOLIACOH_CARTAN_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foliacoh/complex.hpp"
#include "foliacoh/gstar.hpp"
#include "foliacoh/module.hpp"
#include "foliacoh/polynomial_ring.hpp"

namespace foliacoh {

/// Raised when an operation's hypotheses do not hold and it declines to answer.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// u^alpha (x) a with a the index-th basis element of A^{form_degree}.
struct CartanBasisElement {
  Exponent alpha;
  int form_degree = 0;
  std::size_t index = 0;
};

/// The piece S^p (x) A^{n-2p} of one total degree, with its invariant subspace.
struct CartanCell {
  int p = 0;
  std::size_t full_offset = 0;
  std::size_t full_size = 0;
  std::vector<Vector> invariants;  // basis in cell coordinates
  std::size_t invariant_offset = 0;
};

struct CartanSlice {
  int degree = 0;
  std::vector<CartanBasisElement> basis;  // full basis, cell-major
  std::vector<CartanCell> cells;          // p = 0..floor(n/2)

  std::size_t full_dim() const { return basis.size(); }
  std::size_t dim() const;
  /// Invariant dimension per p.
  std::vector<std::size_t> bigraded_dims() const;
};

/// (S(g*) (x) A)^g with d_g = d + sum_i u_i i_{X_i}, built on total degrees
/// 0..window+1 so that cohomology is exact through `window`.
struct CartanComplex {
  std::size_t dim_g = 0;
  int window = 0;
  std::vector<CartanSlice> slices;
  CochainComplex complex;  // in invariant coordinates
  int stable_through = 0;
  bool projected = false;  // true when some L_X is nonzero
  ComplexReport d_squared;

  /// Invariant coordinates -> full coordinates.
  Vector to_full(int n, const Vector& invariant) const;
  /// Full coordinates -> invariant coordinates, nullopt if not invariant.
  std::optional<Vector> to_invariant(int n, const Vector& full) const;
  /// Filtration degree p of invariant basis vector k in total degree n.
  int filtration(int n, std::size_t k) const;
};

CartanComplex cartan_complex(const GStarStructure& s, int max_degree);

struct EquivariantCohomology {
  CartanComplex cartan;
  Cohomology h;
  std::vector<std::size_t> dims;  // 0..window
  /// u_action[i][n] : H^n -> H^{n+2}; present for abelian g and n + 2 <= window.
  std::vector<std::vector<Matrix>> u_action;
  std::vector<int> generator_degrees;  // with multiplicity, through stable_through
  int window = 0;
  int stable_through = 0;
};

EquivariantCohomology equivariant_cohomology(const GStarStructure& s, int max_degree);

/// Minimal generators and relations of H_g as an S(g*)-module through the
/// stable window. Requires the u-action.
GradedModulePresentation module_presentation(const EquivariantCohomology& e);

enum class ReductionStatus { agree, disagree, refused };

struct ReductionReport {
  ReductionStatus status = ReductionStatus::refused;
  std::vector<std::size_t> product_dims;  // H_{h x k}(A)
  std::vector<std::size_t> reduced_dims;  // H_k(A_bas h)
  int stable_through = 0;
  std::string message;
};

/// Compares H_{h x k}(A) with H_k(A_bas h), where h is spanned by the first
/// h_dim generators and theta are connection candidates for h.
ReductionReport commuting_reduction_check(const GStarStructure& s, std::size_t h_dim,
                                          const std::vector<Vector>& theta, int max_degree);

}  // namespace foliacoh

#endif  // FOLIACOH_CARTAN_HPP
