#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qclock::selftest {

struct Report {
  bool passed = true;
  std::size_t cases = 0;
  double max_rho_error = 0.0;     // brute-force channel vs. closed-form rho_AB
  double max_prob_error = 0.0;    // numeric pipeline vs. closed-form probability
  double max_family_error = 0.0;  // n = 2 coincidence of Z, W, bipartite(pi/4)
  double seconds = 0.0;
  std::vector<std::string> failures;
};

// Oracle-equivalence sweep over n in [2, 6], every k, and `points_per_case`
// random (q, nu) in [0, 0.95] x [0, 0.5].
Report run(std::uint64_t seed, int points_per_case = 50);

}  // namespace qclock::selftest
