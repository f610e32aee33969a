#pragma once

// Clock-synchronization mathematics: conditional collapse of Bob's atom,
// its phase evolution by the clock offset, closed-form time probabilities
// for the three initial-state families, optimal excitation number,
// concurrence and inversion of the observed probability.

#include <optional>
#include <vector>

#include "qclock/qlin.hpp"
#include "qclock/states.hpp"

namespace qclock::protocol {

enum class Family { Z, W, Bipartite };

const char* to_string(Family f) noexcept;

// Closed-form vs. numeric pipeline agreement.
inline constexpr double kPipelineTolerance = 1e-10;
// Magnitude below which off-X entries count as zero.
inline constexpr double kXStructureTolerance = 1e-10;
// Alice's |pos> probability below which conditioning is refused.
inline constexpr double kNullEventThreshold = 1e-15;

struct TwoQubitState {
  qlin::ComplexMatrix matrix;  // 4x4
  BasisLabel basis = BasisLabel::Computational;
};

// Bob's conditional state in the dual basis (|pos>, |neg>).
struct BobState {
  qlin::ComplexMatrix matrix;  // 2x2
  BasisLabel basis = BasisLabel::Dual;
  double gamma = 0.0;          // 1/(4 + 2 alpha_+) on the Z/W family
};

struct ProbabilityResult {
  double p_pos = 0.5;
  double p_neg = 0.5;
  double amplitude = 0.0;  // coefficient of cos(omega_delta)
  std::optional<Family> family;
};

TwoQubitState to_dual(const TwoQubitState& rho);

// Projects Alice onto |pos>, traces her out and renormalises.
BobState conditional_bob_state(const TwoQubitState& rho_ab_dual);

// Free evolution of Bob's atom by the phase omega_delta, expressed in the
// dual basis: the computational coherence picks up exp(-i omega_delta).
BobState evolve_bob_state(const BobState& b, double omega_delta);

// Probability that Bob measures |pos>.
double measure_pos(const BobState& b);

ProbabilityResult prob_pos_z(int n, int k, double q, double nu, double omega_delta);
ProbabilityResult prob_pos_w(int n, double q, double nu, double omega_delta);

// Bipartite sin(theta)|01> + cos(theta)|10> with Bob (second atom)
// accelerated: amplitude (1-q) sin 2theta / (2(1-q) + 2 nu^2 (sin^2 theta + q cos^2 theta)).
ProbabilityResult prob_pos_bipartite(double theta, double q, double nu, double omega_delta);

// Same expression with sin^2 and cos^2 exchanged in the coupling term, as
// the closed form is sometimes quoted. Agrees with prob_pos_bipartite only
// at theta = pi/4 or nu = 0; kept for comparison.
ProbabilityResult prob_pos_bipartite_printed(double theta, double q, double nu, double omega_delta);

// Coefficient of cos(omega_delta) in the Z-family probability.
double z_amplitude(int n, int k, double q, double nu);

struct OptimalK {
  int k_opt = 1;                  // exhaustive argmax, ties to the smaller k
  double amplitude = 0.0;         // amplitude at k_opt
  std::optional<int> y_formula_k; // clamp(floor(Y), 1, n-1); empty where Y is undefined
  bool agreement = false;         // |k_opt - y_formula_k| <= 1
};

OptimalK optimal_k(int n, double q, double nu);

// The closed-form Y expression for the optimal excitation number exactly as
// usually quoted; NaN or inf where it is undefined.
double y_formula(int n, double q, double nu);

// Real stationary point of k(n-k)/(A + B k) in k; diagnostic companion of
// y_formula. Returns n/2 at nu = 0.
double stationary_k(int n, double q, double nu);

// All offsets delta with |omega delta| <= 2 pi reproducing p_obs, ascending
// and deduplicated. Throws NoTimingInformation when amplitude <= 0.
std::vector<double> estimate_delta(double p_obs, double amplitude, double omega);

// X-state concurrence 2 max{0, sqrt(r14 r41) - sqrt(r22 r33), sqrt(r23 r32) - sqrt(r11 r44)}.
double concurrence_x_state(const TwoQubitState& rho);

// Concurrence of the Alice-Bob state after the channel for the bipartite
// theta family.
double bipartite_concurrence(double theta, double q, double nu);

// Channel on atom 1, reduce to atoms {0,1}, dual basis, condition on Alice
// |pos>, evolve, measure Bob |pos>.
ProbabilityResult pipeline_probability(const qlin::PureState& initial, double q, double nu,
                                       double omega_delta);

}  // namespace qclock::protocol
