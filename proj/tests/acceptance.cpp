// One line per numbered criterion; exits nonzero if any fails.

#include "hc/verify.hpp"

#include <iostream>

int main() {
  int failed = 0;
  int n = 0;
  for (const auto& c : hc::verify::criteria()) {
    const hc::verify::Check r = hc::verify::run(c);
    failed += !r.passed;
    std::cout << "criterion " << ++n << ": " << hc::verify::format_line(r) << std::endl;
  }
  std::cout << "# " << n - failed << " passed, " << failed << " failed\n";
  return failed ? 1 : 0;
}
