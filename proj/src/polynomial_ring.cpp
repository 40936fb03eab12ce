#include "foliacoh/polynomial_ring.hpp"

#include <numeric>
#include <stdexcept>

namespace foliacoh {

int exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::vector<Exponent> monomials_of_degree(std::size_t r, int degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  if (r == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent e(r, 0);
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == r) {
      e[pos] = remaining;
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

MultiPolynomial MultiPolynomial::constant(std::size_t vars, const Rational& c) {
  MultiPolynomial p(vars);
  p.add_term(Exponent(vars, 0), c);
  return p;
}

MultiPolynomial MultiPolynomial::variable(std::size_t vars, std::size_t i) {
  Exponent e(vars, 0);
  e.at(i) = 1;
  return term(e, 1);
}

MultiPolynomial MultiPolynomial::term(const Exponent& e, const Rational& c) {
  MultiPolynomial p(e.size());
  p.add_term(e, c);
  return p;
}

void MultiPolynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != vars_) throw std::invalid_argument("monomial has the wrong number of variables");
  for (int x : e)
    if (x < 0) throw std::invalid_argument("negative exponent");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::optional<int> MultiPolynomial::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [e, c] : terms_) {
    const int d = exponent_degree(e);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b) {
  if (a.vars_ != b.vars_) throw std::invalid_argument("polynomial product: variable count mismatch");
  MultiPolynomial out(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPolynomial operator+(const MultiPolynomial& a, const MultiPolynomial& b) {
  if (a.vars_ != b.vars_) throw std::invalid_argument("polynomial sum: variable count mismatch");
  MultiPolynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

}  // namespace foliacoh
