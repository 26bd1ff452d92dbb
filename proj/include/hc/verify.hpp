#pragma once

// Self-checks shared by `hc verify` and the acceptance test: the numbered
// reproduction criteria plus the library invariants, grouped into suites.

#include <functional>
#include <string>
#include <vector>

namespace hc::verify {

struct Check {
  std::string id;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

Check linear_exactness();          // 1
Check oscillatory_extrema();       // 2
Check resonance_k7_envelope();      // 3
Check amann_hess_minimum();        // 4
Check cubic_shapes();              // 5
Check resonant_sign_change();      // 6
Check oracle_equivalence();        // 7
Check stationary_phase_order();    // 8
Check universal_profile_match();   // 9

struct NamedCheck {
  std::string id;
  std::function<Check()> run;
};

/// The nine numbered criteria in order.
std::vector<NamedCheck> criteria();

/// linear, oracle, asymptotics, invariants or all.
std::vector<std::string> suite_names();
std::vector<NamedCheck> suite(const std::string& name);

/// Runs a check, converting exceptions into failures and recording wall time.
Check run(const NamedCheck& c);

/// One line per check: `PASS|FAIL <id> <seconds>s <detail>`.
std::string format_line(const Check& c);

}  // namespace hc::verify
