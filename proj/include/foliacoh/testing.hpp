#ifndef FOLIACOH_TESTING_HPP
#define FOLIACOH_TESTING_HPP

#include <cstddef>
#include <random>
#include <vector>

#include "foliacoh/complex.hpp"
#include "foliacoh/gstar.hpp"

namespace foliacoh::testing {

/// Complex built in normal form (image | harmonic | source blocks per degree)
/// and then hidden by random invertible changes of basis. `expected_h` is the
/// harmonic block size, known from the construction.
struct RandomComplex {
  CochainComplex complex;
  std::vector<std::size_t> expected_h;
};

RandomComplex random_complex(std::mt19937_64& rng, int top, std::size_t max_dim);

/// 0 -> A -> A (+) C -> C -> 0 with the middle differential twisted by d_A h - h d_C
/// for a random h, and middle dims at most max_dim.
ShortExactSequence random_split_ses(std::mt19937_64& rng, int top, std::size_t max_dim);

/// Copy of s with one Lie-derivative entry shifted by 1; breaks L_X = d i_X + i_X d.
/// Requires a nonzero Lie algebra and a nonzero degree.
GStarStructure mutate_lie_derivative(const GStarStructure& s);

}  // namespace foliacoh::testing

#endif  // FOLIACOH_TESTING_HPP
