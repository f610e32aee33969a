#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qclock/error.hpp"
#include "qclock/protocol.hpp"
#include "qclock/states.hpp"
#include "qclock/unruh.hpp"

using namespace qclock;
using namespace qclock::protocol;
using qlin::ComplexMatrix;
using oracle::near;

namespace {

constexpr double kPi = std::numbers::pi;

// Dual-basis |Phi+> = (|pos pos> + |neg neg>)/sqrt 2.
TwoQubitState dual_phi_plus() {
  return {ComplexMatrix{{0.5, 0, 0, 0.5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0.5}}, BasisLabel::Dual};
}

TwoQubitState psi_plus() {
  return {ComplexMatrix{{0, 0, 0, 0}, {0, 0.5, 0.5, 0}, {0, 0.5, 0.5, 0}, {0, 0, 0, 0}},
          BasisLabel::Computational};
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("conditional Bob state") {
  SUBCASE("perfect correlation collapses Bob onto |pos>") {
    const auto b = conditional_bob_state(dual_phi_plus());
    CHECK(qlin::max_abs_diff(b.matrix, ComplexMatrix{{1, 0}, {0, 0}}) < 1e-15);
    CHECK(near(b.gamma, 0.25, 1e-15));
  }
  SUBCASE("maximally mixed input stays mixed") {
    const auto b = conditional_bob_state({ComplexMatrix::identity(4) * 0.25, BasisLabel::Dual});
    CHECK(qlin::max_abs_diff(b.matrix, ComplexMatrix::identity(2) * 0.5) < 1e-15);
    CHECK(b.gamma == 0.0);
  }
  SUBCASE("Z-family gamma is 1/(4 + 2 alpha_+)") {
    for (int n = 3; n <= 8; ++n) {
      for (int k = 1; k < n; ++k) {
        const double q = 0.7, nu = 0.3, nu2 = nu * nu;
        const double t1 = ((1 - q + q * nu2) * (n - k - 1) + nu2 * k) / ((1 - q) * k);
        const double t2 = (1 - q + nu2) * (k - 1) / ((1 - q) * (n - k));
        const double t3 = q * nu2 / (1 - q);
        const double alpha_plus = t1 + t2 + t3;
        const auto b = conditional_bob_state(
            to_dual({unruh::closed_form_rho_ab(n, k, q, nu), BasisLabel::Computational}));
        CHECK(near(b.gamma, 1.0 / (4.0 + 2.0 * alpha_plus), 1e-12));
        CHECK(near(b.matrix.trace().real(), 1.0, 1e-12));
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(conditional_bob_state({ComplexMatrix::identity(4) * 0.25, BasisLabel::Computational}),
                    Error);
    const TwoQubitState alice_neg{
        ComplexMatrix{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}}, BasisLabel::Dual};
    CHECK_THROWS_WITH_AS(conditional_bob_state(alice_neg), doctest::Contains("probability"), Error);
    try {
      conditional_bob_state(alice_neg);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NullEvent);
    }
    CHECK_THROWS_AS(conditional_bob_state({ComplexMatrix::identity(2), BasisLabel::Dual}), Error);
  }
}

TEST_CASE("Bob evolution") {
  const auto b = conditional_bob_state(
      to_dual({unruh::closed_form_rho_ab(5, 2, 0.4, 0.2), BasisLabel::Computational}));

  CHECK(qlin::max_abs_diff(evolve_bob_state(b, 0.0).matrix, b.matrix) < 1e-15);
  CHECK(qlin::max_abs_diff(evolve_bob_state(b, 2 * kPi).matrix, b.matrix) < 1e-14);

  // Quarter period: populations equalise and the coherence turns imaginary.
  const auto quarter = evolve_bob_state(b, kPi / 2);
  CHECK(near(measure_pos(quarter), 0.5, 1e-14));
  CHECK(near(quarter.matrix(0, 1).imag(), 2.0 * b.gamma, 1e-14));
  CHECK(near(quarter.matrix(0, 1).real(), b.matrix(0, 1).real(), 1e-14));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> phase(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double od = phase(rng);
    const auto e = evolve_bob_state(b, od);
    CHECK(near(measure_pos(e), 0.5 + 2.0 * b.gamma * std::cos(od), 1e-13));
    CHECK(near(e.matrix.trace().real(), 1.0, 1e-13));
    CHECK(qlin::max_abs_diff(e.matrix, qlin::dagger(e.matrix)) < 1e-14);
  }
  CHECK_THROWS_AS(evolve_bob_state(b, INFINITY), Error);
}

TEST_CASE("closed-form probability spot values") {
  const double two_pi = 2 * kPi;
  CHECK(near(prob_pos_z(20, 10, 0.9, 0.1, two_pi).p_pos, 0.740326844508531603, 1e-12));
  CHECK(near(prob_pos_w(20, 0.9, 0.1, two_pi).p_pos, 0.545850527281063732, 1e-12));
  CHECK(near(prob_pos_bipartite(kPi / 4, 0.9, 0.1, two_pi).p_pos, 0.956621004566210046, 1e-12));
  CHECK(near(prob_pos_bipartite(kPi / 4, 0.0, 0.1, two_pi).p_pos, 0.997512437810945274, 1e-12));
  CHECK(near(prob_pos_z(20, 10, 0.8, 0.5, two_pi).p_pos, 0.623839009287925697, 1e-12));

  const auto r = prob_pos_z(7, 3, 0.5, 0.3, 1.1);
  CHECK(near(r.p_pos + r.p_neg, 1.0, 1e-15));
  CHECK(r.family == Family::Z);
  CHECK(prob_pos_w(7, 0.5, 0.3, 1.1).family == Family::W);
  CHECK(prob_pos_bipartite(0.3, 0.5, 0.3, 1.1).family == Family::Bipartite);
  CHECK(near(r.p_pos, 0.5 + r.amplitude * std::cos(1.1), 1e-15));
}

TEST_CASE("families coincide at n = 2") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uq(0.0, 0.99), un(0.0, 1.0), uo(-7.0, 7.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double q = uq(rng), nu = un(rng), od = uo(rng);
    const double z = prob_pos_z(2, 1, q, nu, od).p_pos;
    CHECK(near(z, prob_pos_w(2, q, nu, od).p_pos, 1e-12));
    CHECK(near(z, prob_pos_bipartite(kPi / 4, q, nu, od).p_pos, 1e-12));
    CHECK(near(z, prob_pos_bipartite_printed(kPi / 4, q, nu, od).p_pos, 1e-12));
  }
}

TEST_CASE("printed and consistent bipartite forms differ away from pi/4") {
  CHECK(std::abs(prob_pos_bipartite(0.3, 0.9, 0.1, 0.0).p_pos -
                 prob_pos_bipartite_printed(0.3, 0.9, 0.1, 0.0).p_pos) > 1e-3);
  CHECK(near(prob_pos_bipartite(0.3, 0.9, 0.0, 0.0).p_pos,
             prob_pos_bipartite_printed(0.3, 0.9, 0.0, 0.0).p_pos, 1e-15));
}

TEST_CASE("pipeline reproduces the closed forms") {
  CHECK(near(pipeline_probability(states::build_z_state(5, 2), 0.6, 0.2, 0.7).p_pos,
             prob_pos_z(5, 2, 0.6, 0.2, 0.7).p_pos, kPipelineTolerance));
  CHECK(near(pipeline_probability(states::build_w_state(4), 0.3, 0.4, 2.0).p_pos,
             prob_pos_w(4, 0.3, 0.4, 2.0).p_pos, kPipelineTolerance));
  CHECK(near(pipeline_probability(states::build_bipartite_theta(kPi / 3), 0.5, 0.3, 1.0).p_pos,
             prob_pos_bipartite(kPi / 3, 0.5, 0.3, 1.0).p_pos, kPipelineTolerance));
  CHECK(near(pipeline_probability(states::build_z_state(6, 3), 0.8, 0.1, 0.0).amplitude,
             z_amplitude(6, 3, 0.8, 0.1), kPipelineTolerance));

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ut(0.0, kPi / 2), uq(0.0, 0.95), un(0.0, 0.6);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = ut(rng), q = uq(rng), nu = un(rng);
    CHECK(near(pipeline_probability(states::build_bipartite_theta(t), q, nu, 0.4).p_pos,
               prob_pos_bipartite(t, q, nu, 0.4).p_pos, kPipelineTolerance));
  }
  CHECK_FALSE(pipeline_probability(states::build_w_state(3), 0.1, 0.1, 0.0).family.has_value());
}

TEST_CASE("probabilities stay in the unit interval and decrease with q and nu") {
  for (int n = 2; n <= 30; n += 4) {
    for (int k = 1; k < n; k += 3) {
      double prev_q = 2.0;
      for (double q = 0.0; q < 0.99; q += 0.07) {
        const double p = prob_pos_z(n, k, q, 0.2, 0.0).p_pos;
        CHECK(p >= 0.5);
        CHECK(p <= 1.0);
        CHECK(p < prev_q);
        prev_q = p;
      }
      double prev_nu = 2.0;
      for (double nu = 0.0; nu <= 1.0; nu += 0.1) {
        const double p = prob_pos_z(n, k, 0.5, nu, 0.0).p_pos;
        CHECK(p <= prev_nu);
        prev_nu = p;
      }
    }
  }
}

TEST_CASE("amplitude vanishes as q approaches 1") {
  CHECK(z_amplitude(10, 5, 1.0 - 1e-9, 0.1) < 1e-6);
  CHECK(prob_pos_w(10, 1.0 - 1e-9, 0.1, 0.0).amplitude < 1e-6);
  CHECK(prob_pos_bipartite(kPi / 4, 1.0 - 1e-9, 0.1, 0.0).amplitude < 1e-6);
}

TEST_CASE("ideal limit") {
  CHECK(near(prob_pos_bipartite(kPi / 4, 0.0, 0.0, 0.0).p_pos, 1.0, 1e-15));
  CHECK(near(prob_pos_z(2, 1, 0.0, 0.0, 0.0).p_pos, 1.0, 1e-15));
  // k(n-k)/(n(n-1)) at nu = 0.
  CHECK(near(z_amplitude(6, 2, 0.3, 0.0), 8.0 / 30.0, 1e-15));
}

TEST_CASE("optimal k") {
  const auto o = optimal_k(20, 0.9, 0.1);
  CHECK(o.k_opt == 10);
  CHECK(near(o.amplitude, z_amplitude(20, 10, 0.9, 0.1), 1e-15));

  CHECK(optimal_k(20, 0.8, 0.5).k_opt == 10);
  CHECK(optimal_k(2, 0.5, 0.5).k_opt == 1);

  const auto big = optimal_k(200, 0.9, 0.1);
  CHECK(big.k_opt == 100);
  CHECK(near(big.amplitude, 0.229457791239301530, 1e-12));
  CHECK(near(prob_pos_w(200, 0.9, 0.1, 0.0).amplitude, 0.004586945552956286, 1e-12));

  // Large-n plateau (1-q)/(4(1-q) + 2 nu^2 (1+q)).
  CHECK(near(optimal_k(4000, 0.9, 0.1).amplitude, 0.228310502283105023, 1e-4));

  // Exhaustive argmax is never beaten by any other k.
  for (int n = 2; n <= 40; ++n) {
    const auto best = optimal_k(n, 0.95, 0.8);
    for (int k = 1; k < n; ++k) CHECK(z_amplitude(n, k, 0.95, 0.8) <= best.amplitude);
  }

  // Undefined Y at nu = 0.
  const auto ideal = optimal_k(9, 0.5, 0.0);
  CHECK_FALSE(ideal.y_formula_k.has_value());
  CHECK_FALSE(ideal.agreement);
  CHECK(ideal.k_opt == 4);
}

TEST_CASE("stationary point tracks the exhaustive optimum") {
  for (int n = 2; n <= 50; ++n) {
    for (double q : {0.1, 0.5, 0.9}) {
      for (double nu : {0.05, 0.3, 1.0}) {
        CHECK(std::abs(stationary_k(n, q, nu) - optimal_k(n, q, nu).k_opt) <= 1.0);
      }
    }
  }
  CHECK(near(stationary_k(10, 0.5, 0.0), 5.0, 1e-15));
}

TEST_CASE("estimate delta") {
  const double amp = 0.3, omega = 2.0;
  SUBCASE("peak probability gives zero offset and the full-period images") {
    const auto d = estimate_delta(0.5 + amp, amp, omega);
    REQUIRE(d.size() == 3);
    CHECK(near(d[0], -kPi, 1e-12));
    CHECK(near(d[1], 0.0, 1e-12));
    CHECK(near(d[2], kPi, 1e-12));
  }
  SUBCASE("half probability gives quarter periods") {
    const auto d = estimate_delta(0.5, amp, omega);
    REQUIRE(d.size() == 4);
    CHECK(near(d[0], -3 * kPi / 4, 1e-12));
    CHECK(near(d[1], -kPi / 4, 1e-12));
    CHECK(near(d[2], kPi / 4, 1e-12));
    CHECK(near(d[3], 3 * kPi / 4, 1e-12));
  }
  SUBCASE("round trip") {
    for (double delta : {0.1, 0.5, 1.2, 1.5}) {
      const double p = 0.5 + amp * std::cos(omega * delta);
      const auto d = estimate_delta(p, amp, omega);
      bool found = false;
      for (double c : d) found = found || near(c, delta, 1e-9);
      CHECK(found);
      for (double c : d) CHECK(near(0.5 + amp * std::cos(omega * c), p, 1e-12));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(estimate_delta(0.5, 0.0, 1.0), Error);
    try {
      estimate_delta(0.5, 0.0, 1.0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoTimingInformation);
    }
    CHECK_THROWS_AS(estimate_delta(0.9, 0.3, 1.0), Error);
    CHECK_THROWS_AS(estimate_delta(1.5, 0.3, 1.0), Error);
    CHECK_THROWS_AS(estimate_delta(0.5, 0.3, 0.0), Error);
  }
}

TEST_CASE("concurrence") {
  CHECK(near(concurrence_x_state(psi_plus()), 1.0, 1e-15));
  CHECK(concurrence_x_state({ComplexMatrix::identity(4) * 0.25, BasisLabel::Computational}) == 0.0);
  CHECK_THROWS_AS(concurrence_x_state(dual_phi_plus()), Error);

  const TwoQubitState non_x{ComplexMatrix{{0.5, 0.5, 0, 0}, {0.5, 0.5, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}},
                            BasisLabel::Computational};
  try {
    concurrence_x_state(non_x);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonXState);
  }

  // Channel outputs agree with the general spin-flip formula. Its square roots of
  // vanishing eigenvalues turn 1e-17 rounding into ~1e-8, hence the tolerance.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ut(0.0, kPi / 2), uq(0.0, 0.95), un(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = ut(rng), q = uq(rng), nu = un(rng);
    const auto rho = unruh::apply_unruh_map(states::build_bipartite_theta(t), 1, q, nu).rho_atoms;
    CHECK(near(bipartite_concurrence(t, q, nu), oracle::wootters_concurrence(rho), 1e-7));
  }
  for (int n = 3; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto rho = unruh::closed_form_rho_ab(n, k, 0.5, 0.3);
      CHECK(near(concurrence_x_state({rho, BasisLabel::Computational}), oracle::wootters_concurrence(rho), 1e-7));
    }
  }
  CHECK(near(bipartite_concurrence(kPi / 4, 0.0, 0.0), 1.0, 1e-15));
}

}  // TEST_SUITE
