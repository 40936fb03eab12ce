#include <bit>
#include <map>
#include <stdexcept>

#include "foliacoh/gstar.hpp"
#include "foliacoh/polynomial_ring.hpp"

namespace foliacoh {

namespace {

// Monomial theta^S u^alpha in the free graded-commutative algebra on r odd
// generators of degree 1 and r even generators of degree 2.
struct Mono {
  std::uint32_t odd = 0;
  Exponent even;

  int degree() const { return std::popcount(odd) + 2 * exponent_degree(even); }
  auto operator<=>(const Mono&) const = default;
};

using Elem = std::map<Mono, Rational>;

void add_to(Elem& acc, const Mono& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto& slot = acc[m];
  slot += c;
  if (sgn(slot) == 0) acc.erase(m);
}

// a * b, or nothing when a repeated odd generator kills the product.
std::optional<std::pair<int, Mono>> mono_mul(const Mono& a, const Mono& b) {
  if (a.odd & b.odd) return std::nullopt;
  int swaps = 0;
  for (std::uint32_t rest = b.odd; rest != 0; rest &= rest - 1) {
    const int t = std::countr_zero(rest);
    swaps += std::popcount(a.odd >> (t + 1));
  }
  Mono m{a.odd | b.odd, a.even};
  for (std::size_t i = 0; i < m.even.size(); ++i) m.even[i] += b.even[i];
  return std::pair{swaps % 2 == 0 ? 1 : -1, m};
}

Elem mul(const Elem& x, const Elem& y) {
  Elem out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y)
      if (auto p = mono_mul(a, b)) add_to(out, p->second, p->first * ca * cb);
  return out;
}

class FreeAlgebra {
 public:
  FreeAlgebra(const LieAlgebra& lie) : g_(lie), r_(lie.dim) {}

  Mono one() const { return Mono{0, Exponent(r_, 0)}; }
  Mono theta(std::size_t a) const { return Mono{1u << a, Exponent(r_, 0)}; }
  Mono u(std::size_t a) const {
    Mono m = one();
    m.even[a] = 1;
    return m;
  }

  // Generators of m in the order odd (ascending), then even with multiplicity.
  std::vector<Mono> factors(const Mono& m) const {
    std::vector<Mono> out;
    for (std::size_t a = 0; a < r_; ++a)
      if (m.odd & (1u << a)) out.push_back(theta(a));
    for (std::size_t a = 0; a < r_; ++a)
      for (int k = 0; k < m.even[a]; ++k) out.push_back(u(a));
    return out;
  }

  // Extends an operator of the given degree parity from generators to m.
  template <class OnGenerator>
  Elem derive(const Mono& m, bool odd_operator, OnGenerator on_generator) const {
    const auto fs = factors(m);
    Elem out;
    for (std::size_t pos = 0; pos < fs.size(); ++pos) {
      Elem prefix{{one(), Rational(1)}};
      int prefix_degree = 0;
      for (std::size_t k = 0; k < pos; ++k) {
        prefix = mul(prefix, Elem{{fs[k], Rational(1)}});
        prefix_degree += fs[k].degree();
      }
      Elem suffix{{one(), Rational(1)}};
      for (std::size_t k = pos + 1; k < fs.size(); ++k) suffix = mul(suffix, Elem{{fs[k], Rational(1)}});
      Elem term = mul(mul(prefix, on_generator(fs[pos])), suffix);
      const int sign = (odd_operator && prefix_degree % 2 != 0) ? -1 : 1;
      for (const auto& [mono, c] : term) add_to(out, mono, sign * c);
    }
    return out;
  }

  std::size_t index_of_theta(const Mono& gen) const { return static_cast<std::size_t>(std::countr_zero(gen.odd)); }
  std::size_t index_of_u(const Mono& gen) const {
    for (std::size_t a = 0; a < r_; ++a)
      if (gen.even[a] != 0) return a;
    throw std::logic_error("not an even generator");
  }

  Elem d_gen(const Mono& gen) const {
    Elem out;
    if (gen.odd) {
      const std::size_t a = index_of_theta(gen);
      add_to(out, u(a), 1);
      for (std::size_t b = 0; b < r_; ++b)
        for (std::size_t c = 0; c < r_; ++c) {
          if (sgn(g_.c(b, c, a)) == 0) continue;
          if (auto p = mono_mul(theta(b), theta(c))) add_to(out, p->second, Rational(-1, 2) * p->first * g_.c(b, c, a));
        }
    } else {
      const std::size_t a = index_of_u(gen);
      for (std::size_t b = 0; b < r_; ++b)
        for (std::size_t c = 0; c < r_; ++c) {
          if (sgn(g_.c(b, c, a)) == 0) continue;
          if (auto p = mono_mul(theta(b), u(c))) add_to(out, p->second, -p->first * g_.c(b, c, a));
        }
    }
    return out;
  }

  Elem i_gen(std::size_t b, const Mono& gen) const {
    Elem out;
    if (gen.odd && index_of_theta(gen) == b) add_to(out, one(), 1);
    return out;
  }

  Elem l_gen(std::size_t b, const Mono& gen) const {
    Elem out;
    const bool odd = gen.odd != 0;
    const std::size_t a = odd ? index_of_theta(gen) : index_of_u(gen);
    for (std::size_t c = 0; c < r_; ++c)
      if (sgn(g_.c(b, c, a)) != 0) add_to(out, odd ? theta(c) : u(c), -g_.c(b, c, a));
    return out;
  }

 private:
  const LieAlgebra& g_;
  std::size_t r_;
};

std::string mono_label(const Mono& m) {
  std::string s;
  auto append = [&](const std::string& part) {
    if (!s.empty()) s += "*";
    s += part;
  };
  for (std::size_t a = 0; a < 32; ++a)
    if (m.odd & (1u << a)) append("x" + std::to_string(a + 1));
  for (std::size_t a = 0; a < m.even.size(); ++a) {
    if (m.even[a] == 0) continue;
    append("u" + std::to_string(a + 1) + (m.even[a] > 1 ? "^" + std::to_string(m.even[a]) : ""));
  }
  return s.empty() ? "1" : s;
}

}  // namespace

GStarStructure weil_algebra(const LieAlgebra& lie, int max_degree) {
  if (auto err = lie.check()) throw std::invalid_argument("Lie algebra: " + *err);
  if (max_degree < 0) throw std::invalid_argument("Weil algebra window must be >= 0");
  if (lie.dim > 16) throw std::invalid_argument("Weil algebra supports at most 16 generators");
  const std::size_t r = lie.dim;
  const FreeAlgebra alg(lie);

  std::vector<std::vector<Mono>> basis(static_cast<std::size_t>(max_degree) + 1);
  std::map<Mono, std::pair<int, std::size_t>> where;
  for (int n = 0; n <= max_degree; ++n) {
    auto& list = basis[static_cast<std::size_t>(n)];
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
      const int k = std::popcount(mask);
      if (k > n || (n - k) % 2 != 0) continue;
      for (auto& e : monomials_of_degree(r, (n - k) / 2)) {
        where[Mono{mask, e}] = {n, list.size()};
        list.push_back(Mono{mask, std::move(e)});
      }
    }
  }

  GStarStructure s;
  s.lie = lie;
  s.truncated = true;
  for (const auto& list : basis) {
    s.space.dims.push_back(list.size());
    std::vector<std::string> labels;
    for (const auto& m : list) labels.push_back(mono_label(m));
    s.space.labels.push_back(std::move(labels));
  }
  const int top = max_degree;
  s.unit = 0;
  for (int n = 0; n <= top; ++n) s.d.emplace_back(n == top ? 0 : s.dim(n + 1), s.dim(n));
  s.contraction.assign(r, {});
  s.lie_derivative.assign(r, {});
  for (std::size_t j = 0; j < r; ++j)
    for (int n = 0; n <= top; ++n) {
      s.contraction[j].emplace_back(n == 0 ? 0 : s.dim(n - 1), s.dim(n));
      s.lie_derivative[j].emplace_back(s.dim(n), s.dim(n));
    }

  auto fill = [&](Matrix& m, std::size_t col, const Elem& image) {
    for (const auto& [mono, c] : image) {
      const auto it = where.find(mono);
      if (it == where.end()) continue;  // beyond the window
      m(it->second.second, col) = c;
    }
  };
  for (int n = 0; n <= top; ++n) {
    const auto deg = static_cast<std::size_t>(n);
    for (std::size_t col = 0; col < basis[deg].size(); ++col) {
      const Mono& m = basis[deg][col];
      if (n < top) fill(s.d[deg], col, alg.derive(m, true, [&](const Mono& g) { return alg.d_gen(g); }));
      for (std::size_t j = 0; j < r; ++j) {
        if (n > 0) fill(s.contraction[j][deg], col, alg.derive(m, true, [&](const Mono& g) { return alg.i_gen(j, g); }));
        fill(s.lie_derivative[j][deg], col, alg.derive(m, false, [&](const Mono& g) { return alg.l_gen(j, g); }));
      }
    }
  }

  ProductTable table;
  table.stride = s.total();
  for (int p = 0; p <= top; ++p)
    for (int q = 0; p + q <= top; ++q)
      for (std::size_t a = 0; a < s.dim(p); ++a)
        for (std::size_t b = 0; b < s.dim(q); ++b) {
          const auto prod = mono_mul(basis[static_cast<std::size_t>(p)][a], basis[static_cast<std::size_t>(q)][b]);
          if (!prod) continue;
          table.set(s.offset(p) + a, s.offset(q) + b, {{where.at(prod->second).second, Rational(prod->first)}});
        }
  s.products = std::move(table);
  s.check_shapes();
  return s;
}

}  // namespace foliacoh
