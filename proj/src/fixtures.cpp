#include "foliacoh/fixtures.hpp"

#include <bit>
#include <stdexcept>

namespace foliacoh::fixtures {

namespace {

using E = GStarBuilder::Element;

E one(const std::string& label) { return {{label, Rational(1)}}; }

}  // namespace

GStarStructure trivial_action(std::size_t r, const std::vector<std::size_t>& dims) {
  if (dims.empty() || dims[0] == 0) throw std::invalid_argument("trivial_action needs a degree-0 unit");
  GStarBuilder b(LieAlgebra::abelian(r));
  std::vector<std::string> labels;
  for (std::size_t n = 0; n < dims.size(); ++n)
    for (std::size_t k = 0; k < dims[n]; ++k) {
      const std::string label = (n == 0 && k == 0) ? "1" : "a" + std::to_string(n) + "_" + std::to_string(k + 1);
      b.basis(label, static_cast<int>(n));
    }
  b.unit("1");
  return b.build();
}

GStarStructure exterior_free(std::size_t r) {
  GStarBuilder b(LieAlgebra::abelian(r));
  // Basis: all subsets of {1..r}, labelled by their members.
  std::vector<std::pair<std::uint32_t, std::string>> subsets;
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    std::string label;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1u << i)) label += (label.empty() ? "" : "*") + std::string("t") + std::to_string(i + 1);
    subsets.emplace_back(mask, label.empty() ? "1" : label);
  }
  auto label_of = [&](std::uint32_t mask) { return subsets[mask].second; };
  for (const auto& [mask, label] : subsets) b.basis(label, std::popcount(mask));
  b.unit("1");
  for (const auto& [m1, l1] : subsets)
    for (const auto& [m2, l2] : subsets) {
      if (m1 == 0 || m2 == 0 || (m1 & m2)) continue;
      int swaps = 0;
      for (std::size_t t = 0; t < r; ++t)
        if (m2 & (1u << t)) swaps += std::popcount(m1 >> (t + 1));
      b.product(l1, l2, {{label_of(m1 | m2), Rational(swaps % 2 == 0 ? 1 : -1)}});
    }
  for (const auto& [mask, label] : subsets)
    for (std::size_t j = 0; j < r; ++j) {
      if (!(mask & (1u << j))) continue;
      const int before = std::popcount(mask & ((1u << j) - 1));
      b.contraction(j, label, {{label_of(mask & ~(1u << j)), Rational(before % 2 == 0 ? 1 : -1)}});
    }
  return b.build();
}

namespace {

GStarBuilder hopf_builder(LieAlgebra lie) {
  GStarBuilder b(std::move(lie));
  b.basis("1", 0).basis("theta", 1).basis("omega", 2).basis("theta*omega", 3).unit("1");
  b.product("theta", "omega", one("theta*omega"));
  b.contraction(0, "theta", one("1"));
  b.contraction(0, "theta*omega", one("omega"));
  return b;
}

}  // namespace

GStarStructure hopf_basic_model() { return hopf_builder(LieAlgebra::abelian(1)).build(); }

GStarStructure hopf_with_trivial_factor() { return hopf_builder(LieAlgebra::abelian(2)).build(); }

GStarStructure s3_model() {
  GStarBuilder b(LieAlgebra::abelian(1));
  b.basis("1", 0).basis("theta", 1).basis("omega", 2).basis("theta*omega", 3).unit("1");
  b.product("theta", "omega", one("theta*omega"));
  b.d("theta", one("omega"));
  return b.build();
}

std::vector<Vector> hopf_connection() { return {Vector{Rational(1)}}; }

std::vector<NamedGStar> gstar_fixtures() {
  std::vector<NamedGStar> out;
  out.push_back({"trivial_point", trivial_action(1, {1}), false, {}});
  out.push_back({"trivial_h_1_0_1", trivial_action(1, {1, 0, 1}), false, {}});
  out.push_back({"trivial_h_1_0_1_1", trivial_action(1, {1, 0, 1, 1}), false, {}});
  out.push_back({"exterior_free_1", exterior_free(1), true, {Vector{Rational(1)}}});
  out.push_back({"exterior_free_2", exterior_free(2), true,
                 {Vector{Rational(1), Rational(0)}, Vector{Rational(0), Rational(1)}}});
  out.push_back({"hopf_basic", hopf_basic_model(), true, hopf_connection()});
  out.push_back({"s3_trivial", s3_model(), false, {}});
  return out;
}

GradedModulePresentation free_module(std::size_t r, std::vector<int> degrees, int window) {
  return GradedModulePresentation::free(r, std::move(degrees), window);
}

GradedModulePresentation residue_field(std::size_t r, int window) {
  GradedModulePresentation m = GradedModulePresentation::free(r, {0}, window);
  for (std::size_t i = 0; i < r; ++i) m.relations.push_back({MultiPolynomial::variable(r, i)});
  return m;
}

GradedModulePresentation cyclic_quotient(std::size_t r, int power, int window) {
  GradedModulePresentation m = GradedModulePresentation::free(r, {0}, window);
  Exponent e(r, 0);
  e[0] = power;
  m.relations.push_back({MultiPolynomial::term(e, 1)});
  return m;
}

GradedModulePresentation mixed_sum(std::size_t r, int window) {
  GradedModulePresentation m = GradedModulePresentation::free(r, {0, 0}, window);
  m.relations.push_back({MultiPolynomial::variable(r, 0), MultiPolynomial(r)});
  return m;
}

GradedModulePresentation hopf_module(int window) {
  GradedModulePresentation m = GradedModulePresentation::free(1, {0, 2}, window);
  m.relations.push_back({MultiPolynomial::variable(1, 0), MultiPolynomial(1)});
  m.relations.push_back({MultiPolynomial(1), MultiPolynomial::variable(1, 0)});
  return m;
}

}  // namespace foliacoh::fixtures
