#include "qclock/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numbers>
#include <random>
#include <sstream>

#include "qclock/protocol.hpp"
#include "qclock/states.hpp"
#include "qclock/unruh.hpp"

namespace qclock::selftest {

namespace {

constexpr double kFamilyTolerance = 1e-12;

}  // namespace

Report run(std::uint64_t seed, int points_per_case) {
  const auto started = std::chrono::steady_clock::now();
  Report report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> q_dist(0.0, 0.95);
  std::uniform_real_distribution<double> nu_dist(0.0, 0.5);
  std::uniform_real_distribution<double> phase_dist(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi / 2);

  auto record = [&](double err, double tol, double& worst, const std::string& label) {
    ++report.cases;
    worst = std::max(worst, err);
    if (!(err <= tol)) {
      report.passed = false;
      std::ostringstream os;
      os << label << ": error " << err << " exceeds " << tol;
      report.failures.push_back(os.str());
    }
  };

  const std::array<std::size_t, 2> alice_bob{0, 1};
  for (int n = 2; n <= 6; ++n) {
    const std::vector<std::size_t> dims(static_cast<std::size_t>(n), 2);
    for (int k = 1; k <= n - 1; ++k) {
      const auto psi = states::build_z_state(n, k);
      for (int i = 0; i < points_per_case; ++i) {
        const double q = q_dist(rng);
        const double nu = nu_dist(rng);
        const double phase = phase_dist(rng);
        std::ostringstream label;
        label << "n=" << n << " k=" << k << " q=" << q << " nu=" << nu;

        const auto channel = unruh::apply_unruh_map(psi, 1, q, nu);
        const auto brute = qlin::partial_trace(channel.rho_atoms, dims, alice_bob);
        const auto closed = unruh::closed_form_rho_ab(n, k, q, nu);
        record(qlin::max_abs_diff(brute, closed), protocol::kPipelineTolerance,
               report.max_rho_error, "rho_AB " + label.str());

        const auto pipe = protocol::pipeline_probability(psi, q, nu, phase);
        const auto formula = protocol::prob_pos_z(n, k, q, nu, phase);
        record(std::abs(pipe.p_pos - formula.p_pos), protocol::kPipelineTolerance,
               report.max_prob_error, "P_Z " + label.str());
        if (k == 1) {
          const auto w = protocol::prob_pos_w(n, q, nu, phase);
          const auto w_pipe = protocol::pipeline_probability(states::build_w_state(n), q, nu, phase);
          record(std::abs(w_pipe.p_pos - w.p_pos), protocol::kPipelineTolerance,
                 report.max_prob_error, "P_W " + label.str());
        }
      }
    }
  }

  for (int i = 0; i < points_per_case * 4; ++i) {
    const double q = q_dist(rng);
    const double nu = nu_dist(rng);
    const double phase = phase_dist(rng);
    const double theta = theta_dist(rng);
    std::ostringstream label;
    label << "theta=" << theta << " q=" << q << " nu=" << nu;
    const auto pipe = protocol::pipeline_probability(states::build_bipartite_theta(theta), q, nu, phase);
    const auto formula = protocol::prob_pos_bipartite(theta, q, nu, phase);
    record(std::abs(pipe.p_pos - formula.p_pos), protocol::kPipelineTolerance,
           report.max_prob_error, "P_2 " + label.str());

    const double z = protocol::prob_pos_z(2, 1, q, nu, phase).p_pos;
    const double w = protocol::prob_pos_w(2, q, nu, phase).p_pos;
    const double b = protocol::prob_pos_bipartite(std::numbers::pi / 4, q, nu, phase).p_pos;
    record(std::max(std::abs(z - w), std::abs(z - b)), kFamilyTolerance, report.max_family_error,
           "n=2 coincidence " + label.str());
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace qclock::selftest
