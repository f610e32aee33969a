#include "qclock/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qclock/error.hpp"
#include "qclock/unruh.hpp"

namespace qclock::protocol {

namespace {

using qlin::Complex;
using qlin::ComplexMatrix;

void check_channel_params(double q, double nu) {
  if (!std::isfinite(q) || q < 0.0 || q >= 1.0) {
    throw Error(ErrorCode::InvalidParameter, "q must lie in [0, 1)");
  }
  if (!std::isfinite(nu) || nu < 0.0) {
    throw Error(ErrorCode::InvalidParameter, "nu must be finite and non-negative");
  }
}

void check_phase(double omega_delta) {
  if (!std::isfinite(omega_delta)) throw Error(ErrorCode::InvalidParameter, "omega_delta must be finite");
}

ProbabilityResult from_amplitude(double amplitude, double omega_delta, Family f) {
  const double shift = amplitude * std::cos(omega_delta);
  return {0.5 + shift, 0.5 - shift, amplitude, f};
}

void require_two_qubit(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "expected a 4x4 matrix");
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::Z: return "Z";
    case Family::W: return "W";
    case Family::Bipartite: return "Bipartite";
  }
  return "?";
}

TwoQubitState to_dual(const TwoQubitState& rho) {
  require_two_qubit(rho.matrix);
  if (rho.basis == BasisLabel::Dual) return rho;
  return {states::dual_basis_transform(rho.matrix, 2), BasisLabel::Dual};
}

BobState conditional_bob_state(const TwoQubitState& rho_ab_dual) {
  require_two_qubit(rho_ab_dual.matrix);
  if (rho_ab_dual.basis != BasisLabel::Dual) {
    throw Error(ErrorCode::InvalidParameter, "conditioning expects a dual-basis state");
  }
  // Alice |pos> is dual index 0 of the leading factor: the top-left block.
  ComplexMatrix block(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) block(i, j) = rho_ab_dual.matrix(i, j);
  }
  const double p_alice = block.trace().real();
  if (!(p_alice >= kNullEventThreshold)) {
    std::ostringstream os;
    os << "Alice's |pos> outcome has probability " << p_alice << "; cannot condition on it";
    throw Error(ErrorCode::NullEvent, os.str());
  }
  block *= 1.0 / p_alice;
  const double gamma = (block(0, 0).real() - block(1, 1).real()) / 4.0;
  return {std::move(block), BasisLabel::Dual, gamma};
}

BobState evolve_bob_state(const BobState& b, double omega_delta) {
  check_phase(omega_delta);
  if (b.matrix.rows() != 2 || b.matrix.cols() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "Bob state must be 2x2");
  }
  ComplexMatrix comp = states::dual_basis_transform(b.matrix, 1);
  const Complex phase = std::polar(1.0, -omega_delta);
  comp(0, 1) *= phase;
  comp(1, 0) *= std::conj(phase);
  return {states::dual_basis_transform(comp, 1), BasisLabel::Dual, b.gamma};
}

double measure_pos(const BobState& b) {
  if (b.basis != BasisLabel::Dual) throw Error(ErrorCode::InvalidParameter, "measurement expects the dual basis");
  return b.matrix(0, 0).real();
}

double z_amplitude(int n, int k, double q, double nu) {
  ProtocolParams{.n = n, .k = k, .q = q, .nu = nu}.validate();
  const double nu2 = nu * nu;
  const double num = static_cast<double>(k) * (n - k) * (1.0 - q);
  const double den = (n - 1.0) * ((1.0 - q) * n + nu2 * k + q * nu2 * (n - k));
  return num / den;
}

ProbabilityResult prob_pos_z(int n, int k, double q, double nu, double omega_delta) {
  check_phase(omega_delta);
  return from_amplitude(z_amplitude(n, k, q, nu), omega_delta, Family::Z);
}

ProbabilityResult prob_pos_w(int n, double q, double nu, double omega_delta) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "n must be at least 2");
  check_channel_params(q, nu);
  check_phase(omega_delta);
  const double nu2 = nu * nu;
  const double amplitude = (1.0 - q) / ((1.0 - q) * n + nu2 + q * nu2 * (n - 1));
  return from_amplitude(amplitude, omega_delta, Family::W);
}

ProbabilityResult prob_pos_bipartite(double theta, double q, double nu, double omega_delta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidParameter, "theta must be finite");
  check_channel_params(q, nu);
  check_phase(omega_delta);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double amplitude =
      (1.0 - q) * std::sin(2.0 * theta) / (2.0 * (1.0 - q) + 2.0 * nu * nu * (s * s + q * c * c));
  return from_amplitude(amplitude, omega_delta, Family::Bipartite);
}

ProbabilityResult prob_pos_bipartite_printed(double theta, double q, double nu, double omega_delta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidParameter, "theta must be finite");
  check_channel_params(q, nu);
  check_phase(omega_delta);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double amplitude =
      (1.0 - q) * std::sin(2.0 * theta) / (2.0 * (1.0 - q) + 2.0 * nu * nu * (c * c + q * s * s));
  return from_amplitude(amplitude, omega_delta, Family::Bipartite);
}

double y_formula(int n, double q, double nu) {
  const double nu2 = nu * nu;
  const double nn = n;
  const double head = (nn * (-1.0 - q * (-2.0 + nu2)) + q * q * (-1.0 + nu2)) /
                      ((-1.0 + q) * (-1.0 + q) * nu2);
  const double radicand =
      -nn * nn * (-1.0 + q) * (-1.0 + q) * (-1.0 - nu2 + q * q * (-1.0 + nu2) - q * (-2.0 + nu2));
  return head + std::sqrt(radicand);
}

double stationary_k(int n, double q, double nu) {
  check_channel_params(q, nu);
  // Root of B k^2 + 2 A k - n A = 0 written without cancellation.
  const double a = n * (1.0 - q + q * nu * nu);
  const double b = nu * nu * (1.0 - q);
  return n * a / (a + std::sqrt(a * a + n * a * b));
}

OptimalK optimal_k(int n, double q, double nu) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "n must be at least 2");
  check_channel_params(q, nu);
  OptimalK out;
  out.amplitude = -1.0;
  for (int k = 1; k <= n - 1; ++k) {
    const double a = z_amplitude(n, k, q, nu);
    if (a > out.amplitude) {
      out.amplitude = a;
      out.k_opt = k;
    }
  }
  const double y = y_formula(n, q, nu);
  if (std::isfinite(y)) {
    const double clamped = std::clamp(std::floor(y), 1.0, static_cast<double>(n - 1));
    out.y_formula_k = static_cast<int>(clamped);
    out.agreement = std::abs(out.k_opt - *out.y_formula_k) <= 1;
  }
  return out;
}

std::vector<double> estimate_delta(double p_obs, double amplitude, double omega) {
  if (!std::isfinite(omega) || omega <= 0.0) throw Error(ErrorCode::InvalidParameter, "omega must be positive");
  if (!std::isfinite(p_obs) || p_obs < 0.0 || p_obs > 1.0) {
    throw Error(ErrorCode::InvalidParameter, "observed probability must lie in [0, 1]");
  }
  if (!std::isfinite(amplitude) || amplitude <= 0.0) {
    throw Error(ErrorCode::NoTimingInformation, "amplitude is zero: the probability carries no timing information");
  }
  const double offset = p_obs - 0.5;
  if (std::abs(offset) > amplitude + 1e-12) {
    std::ostringstream os;
    os << "observed probability " << p_obs << " is outside the reachable band 1/2 +- " << amplitude;
    throw Error(ErrorCode::InvalidParameter, os.str());
  }
  const double x = std::acos(std::clamp(offset / amplitude, -1.0, 1.0));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::array<double, 4> phases{x, -x, two_pi - x, -(two_pi - x)};
  std::sort(phases.begin(), phases.end());

  std::vector<double> out;
  for (double phase : phases) {
    const double delta = phase / omega;
    if (out.empty() || std::abs(delta - out.back()) > 1e-12 / omega) out.push_back(delta);
  }
  return out;
}

double concurrence_x_state(const TwoQubitState& rho) {
  const auto& m = rho.matrix;
  require_two_qubit(m);
  if (rho.basis != BasisLabel::Computational) {
    throw Error(ErrorCode::InvalidParameter, "concurrence expects the computational basis");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const bool on_x = i == j || i + j == 3;
      if (!on_x && std::abs(m(i, j)) > kXStructureTolerance) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << std::abs(m(i, j)) << " breaks the X structure";
        throw Error(ErrorCode::NonXState, os.str());
      }
    }
  }
  const double c1 = std::sqrt(std::abs(m(0, 3) * m(3, 0))) - std::sqrt(std::abs(m(1, 1) * m(2, 2)));
  const double c2 = std::sqrt(std::abs(m(1, 2) * m(2, 1))) - std::sqrt(std::abs(m(0, 0) * m(3, 3)));
  return 2.0 * std::max({0.0, c1, c2});
}

double bipartite_concurrence(double theta, double q, double nu) {
  const auto out = unruh::apply_unruh_map(states::build_bipartite_theta(theta), 1, q, nu);
  return concurrence_x_state({out.rho_atoms, BasisLabel::Computational});
}

ProbabilityResult pipeline_probability(const qlin::PureState& initial, double q, double nu,
                                       double omega_delta) {
  check_phase(omega_delta);
  if (initial.num_qubits() < 2) throw Error(ErrorCode::InvalidParameter, "need at least two atoms");
  const auto channel = unruh::apply_unruh_map(initial, 1, q, nu);
  const std::vector<std::size_t> dims(initial.num_qubits(), 2);
  const std::array<std::size_t, 2> alice_bob{0, 1};
  const TwoQubitState rho_ab{qlin::partial_trace(channel.rho_atoms, dims, alice_bob),
                             BasisLabel::Computational};
  const BobState conditioned = conditional_bob_state(to_dual(rho_ab));
  const double p = measure_pos(evolve_bob_state(conditioned, omega_delta));
  return {p, 1.0 - p, 2.0 * conditioned.gamma, std::nullopt};
}

}  // namespace qclock::protocol
