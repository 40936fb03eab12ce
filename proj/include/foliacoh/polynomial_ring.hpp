#ifndef FOLIACOH_POLYNOMIAL_RING_HPP
#define FOLIACOH_POLYNOMIAL_RING_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "foliacoh/rational.hpp"

namespace foliacoh {

/// Exponent vector of a monomial u_1^{e_1} ... u_r^{e_r}.
using Exponent = std::vector<int>;

int exponent_degree(const Exponent& e);

/// All exponents with r entries summing to `degree`, in lexicographic order.
std::vector<Exponent> monomials_of_degree(std::size_t r, int degree);

/// Polynomial in u_1..u_r with rational coefficients. Each u_i has degree 2.
class MultiPolynomial {
 public:
  MultiPolynomial() = default;
  explicit MultiPolynomial(std::size_t vars) : vars_(vars) {}
  static MultiPolynomial constant(std::size_t vars, const Rational& c);
  static MultiPolynomial variable(std::size_t vars, std::size_t i);
  static MultiPolynomial term(const Exponent& e, const Rational& c);

  std::size_t vars() const { return vars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Rational& c);

  /// Polynomial degree (sum of exponents) if homogeneous; nullopt for zero or inhomogeneous.
  std::optional<int> homogeneous_degree() const;

  friend MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b);
  friend MultiPolynomial operator+(const MultiPolynomial& a, const MultiPolynomial& b);
  friend bool operator==(const MultiPolynomial&, const MultiPolynomial&) = default;

 private:
  std::size_t vars_ = 0;
  std::map<Exponent, Rational> terms_;
};

}  // namespace foliacoh

#endif
