#include <iostream>
#include <string>

#include "foliacoh/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : FOLIACOH_FIXTURE_DIR;
  int failed = 0;
  for (const auto& c : foliacoh::run_acceptance(dir)) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.title;
    if (!c.pass) std::cout << "  [" << c.detail << "]";
    std::cout << '\n';
    if (!c.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
