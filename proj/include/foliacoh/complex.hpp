#ifndef FOLIACOH_COMPLEX_HPP
#define FOLIACOH_COMPLEX_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foliacoh/linalg.hpp"

namespace foliacoh {

/// Raised when matrix shapes disagree with declared graded dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Graded vector space on the window [0, top]; everything outside is zero.
struct GradedVectorSpace {
  std::vector<std::size_t> dims;                  // dims[n] for n = 0..top
  std::vector<std::vector<std::string>> labels;   // optional, empty or dims[n] entries per degree

  int top() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int n) const {
    return (n < 0 || n > top()) ? 0 : dims[static_cast<std::size_t>(n)];
  }
  std::size_t total() const;
};

/// Bounded cochain complex. `differentials[n]` is the matrix of d_n : C^n -> C^{n+1}
/// (shape dim(n+1) x dim(n)); d_top maps into the zero space.
///
/// `stable_through` is the largest degree whose cohomology is not affected by the
/// window cutoff. It equals top() for complexes that are genuinely bounded.
struct CochainComplex {
  GradedVectorSpace space;
  std::vector<Matrix> differentials;
  int stable_through = 0;

  int top() const { return space.top(); }
  std::size_t dim(int n) const { return space.dim(n); }

  /// d_n with the right shape for any n, zero outside the window.
  Matrix differential(int n) const;

  /// Complex with given dims, zero differentials, stable everywhere.
  static CochainComplex zero(std::vector<std::size_t> dims);
  /// Complex from differentials; throws DimensionError on shape mismatch.
  static CochainComplex make(std::vector<std::size_t> dims, std::vector<Matrix> differentials);
};

struct ComplexReport {
  bool ok = true;
  std::optional<int> failing_degree;   // n with d_{n+1} d_n != 0
  std::optional<std::size_t> witness;  // basis index in degree n
  std::string message;
};

/// Shape check (throws DimensionError) and d^2 = 0 check (reported) on source
/// degrees n <= through.
ComplexReport verify_complex(const CochainComplex& c, std::optional<int> through = std::nullopt);

/// Cohomology with canonical representatives. Representatives are the kernel
/// vectors, in null-space order, that are independent modulo the image, each
/// reduced against the reduced echelon basis of the image.
struct Cohomology {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Vector>> representatives;
  std::vector<std::vector<Vector>> boundaries;  // echelon basis of im d_{n-1}
  std::vector<CoordinateSystem> classes;        // cocycle -> class coordinates
  int stable_through = 0;

  /// Coordinates of the class of a cocycle z in degree n; nullopt if z is not a cocycle
  /// representative (outside ker d_n).
  std::optional<Vector> class_of(int n, const Vector& z) const;
};

Cohomology cohomology(const CochainComplex& c);

/// Convenience: only the dimensions.
std::vector<std::size_t> cohomology_dims(const CochainComplex& c);

/// 0 -> sub -> middle -> quotient -> 0 with per-degree matrices.
struct ShortExactSequence {
  CochainComplex sub;
  CochainComplex middle;
  CochainComplex quotient;
  std::vector<Matrix> inclusion;   // inclusion[n]: sub^n -> middle^n
  std::vector<Matrix> projection;  // projection[n]: middle^n -> quotient^n
};

enum class LesStatus { exact, not_exact, not_short_exact };

struct LesReport {
  LesStatus status = LesStatus::exact;
  std::optional<int> failing_degree;
  std::string message;
  std::vector<std::size_t> sub_h, middle_h, quotient_h;
  std::vector<std::size_t> inclusion_rank;   // rank of H^n(sub) -> H^n(middle)
  std::vector<std::size_t> projection_rank;  // rank of H^n(middle) -> H^n(quotient)
  std::vector<std::size_t> connecting_rank;  // rank of H^n(quotient) -> H^{n+1}(sub)
};

/// Verifies that the input is a short exact sequence of complexes and that the
/// induced long sequence in cohomology is exact at every spot of the window.
LesReport les_exactness_check(const ShortExactSequence& ses);

/// Euler characteristic of a sequence of dimensions.
long long euler_characteristic(const std::vector<std::size_t>& dims);

}  // namespace foliacoh

#endif  // FOLIACOH_COMPLEX_HPP
