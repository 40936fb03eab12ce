#ifndef FOLIACOH_ACCEPTANCE_HPP
#define FOLIACOH_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace foliacoh {

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string tags;  // fixture families the criterion touches, matched by --filter
  bool pass = false;
  std::string detail;
};

/// The twelve acceptance criteria, in order. With a non-empty filter only the
/// criteria whose title or tags contain it are run.
std::vector<CriterionResult> run_acceptance(const std::string& fixture_dir, const std::string& filter = "");

}  // namespace foliacoh

#endif  // FOLIACOH_ACCEPTANCE_HPP
