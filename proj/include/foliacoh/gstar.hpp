#ifndef FOLIACOH_GSTAR_HPP
#define FOLIACOH_GSTAR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "foliacoh/complex.hpp"
#include "foliacoh/linalg.hpp"

namespace foliacoh {

/// Lie algebra in a fixed basis X_1..X_r with [X_i, X_j] = sum_k c^k_{ij} X_k.
struct LieAlgebra {
  std::size_t dim = 0;
  std::vector<Rational> constants;  // c^k_{ij} at (i * dim + j) * dim + k

  static LieAlgebra abelian(std::size_t r);
  static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
  /// so(3) = su(2): [X_1, X_2] = X_3 and cyclic.
  static LieAlgebra so3();

  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return constants[(i * dim + j) * dim + k]; }
  Rational& c(std::size_t i, std::size_t j, std::size_t k) { return constants[(i * dim + j) * dim + k]; }

  bool is_abelian() const;
  /// Antisymmetry and Jacobi; returns a description of the first violation.
  std::optional<std::string> check() const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;
};

/// Sparse element of one graded piece: (local basis index, coefficient).
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// Structure constants of a graded algebra on the window. Keys are global basis
/// indices (degree-major order); values live in the product degree. Products that
/// are absent are zero.
struct ProductTable {
  std::unordered_map<std::uint64_t, SparseVector> entries;
  std::size_t stride = 0;  // total basis size

  const SparseVector* find(std::size_t a, std::size_t b) const;
  void set(std::size_t a, std::size_t b, SparseVector v);
};

/// g*-algebra: graded algebra with operators d, i_X, L_X for a basis of g, stored
/// as per-degree matrices on the window [0, top].
///
/// `truncated` marks a window cut out of a larger algebra; identities that pass
/// through degree top + 1 are then not checkable and cohomology is trusted only
/// through top - 2.
struct GStarStructure {
  LieAlgebra lie;
  GradedVectorSpace space;
  std::optional<ProductTable> products;
  std::optional<std::size_t> unit;  // local index in degree 0
  std::vector<Matrix> d;                             // d[n] : A^n -> A^{n+1}
  std::vector<std::vector<Matrix>> contraction;      // contraction[j][n] : A^n -> A^{n-1}
  std::vector<std::vector<Matrix>> lie_derivative;   // lie_derivative[j][n] : A^n -> A^n
  bool truncated = false;

  int top() const { return space.top(); }
  std::size_t dim(int n) const { return space.dim(n); }
  std::size_t offset(int n) const;
  std::size_t total() const { return space.total(); }
  int stable_through() const { return truncated ? top() - 2 : top(); }
  std::string label(int n, std::size_t i) const;

  Matrix d_at(int n) const;
  Matrix i_at(std::size_t j, int n) const;
  Matrix l_at(std::size_t j, int n) const;

  bool lie_derivatives_vanish() const;

  /// (A, d) as a cochain complex.
  CochainComplex complex() const;

  /// Product of elements in degrees p and q (dense coordinates); empty vector when
  /// p + q leaves the window. Requires a product table.
  Vector multiply(int p, const Vector& x, int q, const Vector& y) const;

  /// Throws DimensionError when matrices do not fit the graded dimensions.
  void check_shapes() const;
};

/// Label-based construction used by fixtures and the file reader.
class GStarBuilder {
 public:
  using Element = std::vector<std::pair<std::string, Rational>>;

  explicit GStarBuilder(LieAlgebra lie) : lie_(std::move(lie)) {}

  GStarBuilder& basis(const std::string& label, int degree);
  GStarBuilder& unit(const std::string& label);
  /// Sets a * b; b * a is filled by graded commutativity unless set explicitly.
  GStarBuilder& product(const std::string& a, const std::string& b, Element value);
  GStarBuilder& d(const std::string& a, Element value);
  GStarBuilder& contraction(std::size_t j, const std::string& a, Element value);
  GStarBuilder& lie_derivative(std::size_t j, const std::string& a, Element value);
  /// Without products the structure carries no product table and derivation
  /// checks are skipped.
  GStarBuilder& without_products();
  GStarBuilder& truncated(bool t = true);

  /// Throws std::invalid_argument on unknown labels or degree-inconsistent images.
  GStarStructure build() const;

  /// Local coordinates of a labeled element in degree `degree`.
  static Vector coordinates(const GStarStructure& s, int degree, const Element& e);

 private:
  LieAlgebra lie_;
  std::vector<std::pair<std::string, int>> basis_;
  std::optional<std::string> unit_;
  std::vector<std::tuple<std::string, std::string, Element>> products_;
  std::vector<std::pair<std::string, Element>> d_;
  std::vector<std::tuple<std::size_t, std::string, Element>> contraction_;
  std::vector<std::tuple<std::size_t, std::string, Element>> lie_derivative_;
  bool with_products_ = true;
  bool truncated_ = false;
};

struct AxiomResult {
  std::string name;
  bool ok = true;
  bool checked = true;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;
  bool ok() const;
  const AxiomResult& get(const std::string& name) const;
};

/// The five operator identities plus the derivation property of d, i_X and L_X
/// on every basis element / pair.
AxiomReport check_gstar_axioms(const GStarStructure& s);

/// Unit, graded commutativity and associativity of the product table.
AxiomReport check_graded_algebra(const GStarStructure& s);

struct BasicSubcomplex {
  CochainComplex complex;
  std::vector<Matrix> inclusion;  // inclusion[n] : basic^n -> A^n (columns are basis vectors)
};

/// Joint kernel of all i_X and L_X in every degree, with d restricted to it.
BasicSubcomplex basic_subcomplex(const GStarStructure& s);

/// W(g) = Lambda(g*) (x) S(g*) truncated at total degree `max_degree`.
GStarStructure weil_algebra(const LieAlgebra& lie, int max_degree);

struct TypeC {
  bool free = false;
  bool type_c = false;
};

/// candidates[i] are coordinates of theta_i in degree 1.
TypeC detect_type_c(const GStarStructure& s, const std::vector<Vector>& candidates);

struct TensorResult {
  GStarStructure structure;
  bool overflow = false;  // requested window cut off nonzero products
};

/// Graded tensor product with Koszul signs; window defaults to the sum of tops.
TensorResult tensor_gstar(const GStarStructure& a, const GStarStructure& b, std::optional<int> window = std::nullopt);

/// One-dimensional algebra Q in degree 0 with zero operators.
GStarStructure trivial_line(const LieAlgebra& lie);

struct GradedDims {
  std::vector<std::size_t> dims;
  int stable_through = 0;
};

/// H((W(g) (x) A)_bas) on degrees 0..N, with W built through N + 2.
GradedDims weil_model_cohomology(const GStarStructure& s, int max_degree);

/// Restriction of a g*-structure with g = h + k (h = the first h_dim basis vectors)
/// to A_bas h, as a k*-structure. No product table is carried over.
GStarStructure restrict_to_basic(const GStarStructure& s, std::size_t h_dim);

/// Keeps only the operators of the listed Lie-algebra generators.
GStarStructure restrict_lie(const GStarStructure& s, std::size_t first, std::size_t count);

}  // namespace foliacoh

#endif  // FOLIACOH_GSTAR_HPP
