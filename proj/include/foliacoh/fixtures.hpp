#ifndef FOLIACOH_FIXTURES_HPP
#define FOLIACOH_FIXTURES_HPP

#include <string>
#include <vector>

#include "foliacoh/gstar.hpp"
#include "foliacoh/module.hpp"

namespace foliacoh::fixtures {

/// Graded-commutative algebra with zero products (besides the unit), zero d and
/// the trivial action of the abelian algebra of dimension r. dims[n] basis
/// elements in degree n.
GStarStructure trivial_action(std::size_t r, const std::vector<std::size_t>& dims);

/// Lambda(theta_1..theta_r) with i_{X_j} theta_i = delta_ij, d = 0, L = 0.
GStarStructure exterior_free(std::size_t r);

/// Basis 1, theta, omega, theta*omega; d = 0; i theta = 1, i(theta omega) = omega.
GStarStructure hopf_basic_model();

/// Basis 1, theta, omega, theta*omega; d theta = omega; trivial action, r = 1.
GStarStructure s3_model();

/// Hopf basic model for the first generator of a 2-dimensional abelian algebra,
/// trivial for the second.
GStarStructure hopf_with_trivial_factor();

/// Connection candidate theta in degree 1 of the models above.
std::vector<Vector> hopf_connection();

struct NamedGStar {
  std::string name;
  GStarStructure structure;
  bool type_c = false;
  std::vector<Vector> connection;
};

/// Every bundled g*-algebra fixture, in a fixed order.
std::vector<NamedGStar> gstar_fixtures();

/// Module fixtures over S = Q[u_1..u_r] on an explicit window.
GradedModulePresentation free_module(std::size_t r, std::vector<int> degrees, int window);
GradedModulePresentation residue_field(std::size_t r, int window);
/// S / (u_1^power).
GradedModulePresentation cyclic_quotient(std::size_t r, int power, int window);
/// S/(u_1) (+) S.
GradedModulePresentation mixed_sum(std::size_t r, int window);
/// Generators in degrees 0 and 2 with relations u g_0 = 0, u g_2 = 0.
GradedModulePresentation hopf_module(int window);

}  // namespace foliacoh::fixtures

#endif  // FOLIACOH_FIXTURES_HPP
