#include "foliacoh/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace foliacoh {

SignedPolynomial::SignedPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void SignedPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

SignedPolynomial SignedPolynomial::monomial(int degree, std::int64_t coeff) {
  if (degree < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = coeff;
  return SignedPolynomial(std::move(c));
}

SignedPolynomial SignedPolynomial::one_minus_t2(int k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  SignedPolynomial factor({1, 0, -1});
  SignedPolynomial out({1});
  for (int i = 0; i < k; ++i) out = out * factor;
  return out;
}

std::int64_t SignedPolynomial::coeff(int n) const {
  if (n < 0 || n > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(n)];
}

bool SignedPolynomial::nonnegative() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c >= 0; });
}

std::int64_t SignedPolynomial::evaluate(std::int64_t t) const {
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

SignedPolynomial operator+(const SignedPolynomial& a, const SignedPolynomial& b) {
  std::vector<std::int64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return SignedPolynomial(std::move(c));
}

SignedPolynomial operator-(const SignedPolynomial& a, const SignedPolynomial& b) { return a + (-1) * b; }

SignedPolynomial operator*(const SignedPolynomial& a, const SignedPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::int64_t> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return SignedPolynomial(std::move(c));
}

SignedPolynomial operator*(std::int64_t s, const SignedPolynomial& a) {
  auto c = a.coeffs_;
  for (auto& x : c) x *= s;
  return SignedPolynomial(std::move(c));
}

std::optional<SignedPolynomial> SignedPolynomial::divide_one_minus_t2() const {
  if (is_zero()) return SignedPolynomial{};
  if (degree() < 2) return std::nullopt;
  // p = (1 - t^2) q  <=>  q_n = p_n + q_{n-2}
  std::vector<std::int64_t> q(static_cast<std::size_t>(degree() - 1), 0);
  for (std::size_t n = 0; n < q.size(); ++n) q[n] = coeffs_[n] + (n >= 2 ? q[n - 2] : 0);
  SignedPolynomial quotient(std::move(q));
  if (!(SignedPolynomial::one_minus_t2(1) * quotient == *this)) return std::nullopt;
  return quotient;
}

std::string SignedPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const auto c = coeffs_[n];
    if (c == 0) continue;
    const auto mag = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (n == 0 || mag != 1) out += std::to_string(mag);
    if (n >= 1) out += "t";
    if (n >= 2) out += "^" + std::to_string(n);
  }
  return out;
}

PoincarePolynomial::PoincarePolynomial(std::vector<std::int64_t> coeffs) : poly_(std::move(coeffs)) {
  if (!poly_.nonnegative()) throw std::invalid_argument("Poincare polynomial with a negative coefficient");
}

PoincarePolynomial::PoincarePolynomial(const SignedPolynomial& p) : poly_(p) {
  if (!poly_.nonnegative()) throw std::invalid_argument("Poincare polynomial with a negative coefficient");
}

std::int64_t PoincarePolynomial::total() const { return poly_.evaluate(1); }

PoincareSeries::PoincareSeries(SignedPolynomial numerator, int den_exp)
    : numerator_(std::move(numerator)), den_exp_(den_exp) {
  if (den_exp < 0) throw std::invalid_argument("negative denominator exponent");
  canonicalize();
}

void PoincareSeries::canonicalize() {
  if (numerator_.is_zero()) {
    den_exp_ = 0;
    return;
  }
  while (den_exp_ > 0) {
    auto q = numerator_.divide_one_minus_t2();
    if (!q) break;
    numerator_ = std::move(*q);
    --den_exp_;
  }
}

std::vector<std::int64_t> PoincareSeries::expand(int n) const {
  if (n < 0) return {};
  std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i <= std::min(n, numerator_.degree()); ++i) c[static_cast<std::size_t>(i)] = numerator_.coeff(i);
  // multiply by 1/(1 - t^2) den_exp times: c_k += c_{k-2}
  for (int e = 0; e < den_exp_; ++e)
    for (std::size_t k = 2; k < c.size(); ++k) c[k] += c[k - 2];
  return c;
}

PoincareSeries operator+(const PoincareSeries& a, const PoincareSeries& b) {
  const int k = std::max(a.den_exp_, b.den_exp_);
  return PoincareSeries(a.numerator_ * SignedPolynomial::one_minus_t2(k - a.den_exp_) +
                            b.numerator_ * SignedPolynomial::one_minus_t2(k - b.den_exp_),
                        k);
}

PoincareSeries operator-(const PoincareSeries& a, const PoincareSeries& b) { return a + (-1) * b; }

PoincareSeries operator*(const PoincareSeries& a, const PoincareSeries& b) {
  return PoincareSeries(a.numerator_ * b.numerator_, a.den_exp_ + b.den_exp_);
}

PoincareSeries operator*(std::int64_t s, const PoincareSeries& a) { return PoincareSeries(s * a.numerator_, a.den_exp_); }

std::string PoincareSeries::to_string() const {
  if (den_exp_ == 0) return numerator_.to_string();
  std::string den = den_exp_ == 1 ? "(1 - t^2)" : "(1 - t^2)^" + std::to_string(den_exp_);
  return "(" + numerator_.to_string() + ") / " + den;
}

MorseGap morse_gap(const PoincareSeries& morse, const PoincareSeries& poincare, int window) {
  MorseGap gap;
  const PoincareSeries diff = morse - poincare;
  const auto d = diff.expand(window);
  for (int n = 0; n <= window; ++n) {
    if (d[static_cast<std::size_t>(n)] < 0) {
      gap.violation_degree = n;
      gap.message = "M_t - P_t has a negative coefficient at degree " + std::to_string(n);
      return gap;
    }
  }
  // (1 + t) Q = D  <=>  q_n = d_n - q_{n-1}
  if (diff.is_polynomial()) {
    const auto& p = diff.numerator();
    std::vector<std::int64_t> q(static_cast<std::size_t>(std::max(p.degree(), 0)), 0);
    for (std::size_t n = 0; n < q.size(); ++n) q[n] = p.coeff(static_cast<int>(n)) - (n > 0 ? q[n - 1] : 0);
    const std::int64_t remainder = p.is_zero() ? 0 : p.coeff(p.degree()) - (q.empty() ? 0 : q.back());
    for (std::size_t n = 0; n < q.size(); ++n) {
      if (q[n] < 0) {
        gap.violation_degree = static_cast<int>(n);
        gap.message = "quotient by (1 + t) has a negative coefficient at degree " + std::to_string(n);
        return gap;
      }
    }
    if (remainder != 0) {
      gap.violation_degree = p.degree();
      gap.message = "M_t - P_t is not divisible by (1 + t); remainder at degree " + std::to_string(p.degree());
      return gap;
    }
    gap.quotient = SignedPolynomial(q).coeffs();
    gap.quotient_exact = true;
  } else {
    std::vector<std::int64_t> q(d.size(), 0);
    for (std::size_t n = 0; n < q.size(); ++n) {
      q[n] = d[n] - (n > 0 ? q[n - 1] : 0);
      if (q[n] < 0) {
        gap.violation_degree = static_cast<int>(n);
        gap.message = "quotient by (1 + t) has a negative coefficient at degree " + std::to_string(n);
        return gap;
      }
    }
    gap.quotient = std::move(q);
  }
  gap.ok = true;
  gap.message = gap.quotient.empty() ? "perfect: M_t = P_t" : "M_t - P_t = (1 + t) Q(t) with Q >= 0";
  return gap;
}

std::int64_t euler_at_minus_one(const SignedPolynomial& p) { return p.evaluate(-1); }

}  // namespace foliacoh
