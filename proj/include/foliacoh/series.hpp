#ifndef FOLIACOH_SERIES_HPP
#define FOLIACOH_SERIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace foliacoh {

/// Integer polynomial in t, coefficients c_0..c_d, no trailing zeros.
/// Signed: Morse differences go negative mid-computation.
class SignedPolynomial {
 public:
  SignedPolynomial() = default;
  explicit SignedPolynomial(std::vector<std::int64_t> coeffs);

  static SignedPolynomial monomial(int degree, std::int64_t coeff = 1);
  /// (1 - t^2)^k
  static SignedPolynomial one_minus_t2(int k);

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t coeff(int n) const;
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool nonnegative() const;

  std::int64_t evaluate(std::int64_t t) const;

  friend SignedPolynomial operator+(const SignedPolynomial& a, const SignedPolynomial& b);
  friend SignedPolynomial operator-(const SignedPolynomial& a, const SignedPolynomial& b);
  friend SignedPolynomial operator*(const SignedPolynomial& a, const SignedPolynomial& b);
  friend SignedPolynomial operator*(std::int64_t s, const SignedPolynomial& a);
  friend bool operator==(const SignedPolynomial&, const SignedPolynomial&) = default;

  /// Exact division by (1 - t^2); nullopt when not divisible.
  std::optional<SignedPolynomial> divide_one_minus_t2() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<std::int64_t> coeffs_;
};

/// Dimension series: a polynomial whose coefficients are all >= 0.
class PoincarePolynomial {
 public:
  PoincarePolynomial() = default;
  /// Throws std::invalid_argument on a negative coefficient.
  explicit PoincarePolynomial(std::vector<std::int64_t> coeffs);
  explicit PoincarePolynomial(const SignedPolynomial& p);

  const SignedPolynomial& polynomial() const { return poly_; }
  const std::vector<std::int64_t>& coeffs() const { return poly_.coeffs(); }
  std::int64_t total() const;

  friend bool operator==(const PoincarePolynomial&, const PoincarePolynomial&) = default;

 private:
  SignedPolynomial poly_;
};

/// numerator / (1 - t^2)^den_exp, kept canonical: the numerator is not divisible
/// by (1 - t^2) unless den_exp is 0, and zero has den_exp 0.
class PoincareSeries {
 public:
  PoincareSeries() = default;
  PoincareSeries(SignedPolynomial numerator, int den_exp);
  explicit PoincareSeries(SignedPolynomial polynomial) : PoincareSeries(std::move(polynomial), 0) {}

  const SignedPolynomial& numerator() const { return numerator_; }
  int den_exp() const { return den_exp_; }
  bool is_polynomial() const { return den_exp_ == 0; }

  /// Coefficients 0..n of the power-series expansion.
  std::vector<std::int64_t> expand(int n) const;

  friend PoincareSeries operator+(const PoincareSeries& a, const PoincareSeries& b);
  friend PoincareSeries operator-(const PoincareSeries& a, const PoincareSeries& b);
  friend PoincareSeries operator*(const PoincareSeries& a, const PoincareSeries& b);
  friend PoincareSeries operator*(std::int64_t s, const PoincareSeries& a);
  friend bool operator==(const PoincareSeries&, const PoincareSeries&) = default;

  std::string to_string() const;

 private:
  void canonicalize();
  SignedPolynomial numerator_;
  int den_exp_ = 0;
};

/// Result of dividing a Morse gap by (1 + t).
struct MorseGap {
  bool ok = false;
  std::vector<std::int64_t> quotient;  // Q(t); exact when the gap is a polynomial, else coefficients 0..window
  bool quotient_exact = false;
  std::optional<int> violation_degree;
  std::string message;
};

/// Checks M - P = (1 + t) Q with Q >= 0, on the window [0, window].
MorseGap morse_gap(const PoincareSeries& morse, const PoincareSeries& poincare, int window);

std::int64_t euler_at_minus_one(const SignedPolynomial& p);

}  // namespace foliacoh

#endif  // FOLIACOH_SERIES_HPP
