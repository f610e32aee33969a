#include "qclock/states.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qclock/error.hpp"

namespace qclock {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

}  // namespace

void ProtocolParams::validate() const {
  require(n >= 2, "n must be at least 2");
  require(k >= 1 && k <= n - 1, "k must lie in [1, n-1]");
  require(std::isfinite(q) && q >= 0.0 && q < 1.0, "q must lie in [0, 1)");
  require(std::isfinite(nu) && nu >= 0.0, "nu must be finite and non-negative");
  require(std::isfinite(omega_delta), "omega_delta must be finite");
  require(std::isfinite(theta) && theta >= 0.0 && theta <= std::numbers::pi / 2,
          "theta must lie in [0, pi/2]");
}

void PhysicalInputs::validate() const {
  require(std::isfinite(omega) && omega > 0.0, "omega must be positive");
  require(std::isfinite(accel) && accel > 0.0, "acceleration must be positive");
  require(std::isfinite(duration) && duration > 0.0, "duration must be positive");
  require(std::isfinite(eps) && eps >= 0.0, "eps must be non-negative");
  require(std::isfinite(kappa) && kappa >= 0.0, "kappa must be non-negative");
  require(std::isfinite(delta), "delta must be finite");
}

}  // namespace qclock

namespace qclock::states {

namespace {

constexpr int kMaxQubits = 12;

void require_register(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "need at least two atoms");
  if (n > kMaxQubits) {
    std::ostringstream os;
    os << "n = " << n << " exceeds the full-state cap of " << kMaxQubits << " atoms";
    throw Error(ErrorCode::SizeLimit, os.str());
  }
}

}  // namespace

std::vector<std::size_t> weight_k_indices(int n, int k) {
  std::vector<std::size_t> out;
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::popcount(i) == k) out.push_back(i);
  }
  return out;
}

qlin::PureState build_w_state(int n) {
  require_register(n);
  return build_z_state(n, 1);
}

qlin::PureState build_z_state(int n, int k) {
  require_register(n);
  if (k < 1 || k > n - 1) throw Error(ErrorCode::InvalidParameter, "k must lie in [1, n-1]");
  const auto support = weight_k_indices(n, k);
  const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
  std::vector<qlin::Complex> amps(std::size_t{1} << n);
  for (std::size_t idx : support) amps[idx] = amp;
  return {static_cast<std::size_t>(n), 1, std::move(amps)};
}

qlin::PureState build_bipartite_theta(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidParameter, "theta must be finite");
  return {2, 1, {0.0, std::sin(theta), std::cos(theta), 0.0}};
}

qlin::ComplexMatrix dual_basis_transform(const qlin::ComplexMatrix& rho, int qubit_count) {
  if (qubit_count < 0 || qubit_count > kMaxQubits) {
    throw Error(ErrorCode::InvalidParameter, "qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << qubit_count;
  if (!rho.is_square() || rho.rows() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be 2^qubit_count");
  }
  // H^{(x)n} has entries (-1)^{popcount(i & j)} / sqrt(2^n) and is its own
  // inverse, so the conjugation is a signed sum.
  auto sign = [](std::size_t i, std::size_t j) { return (std::popcount(i & j) & 1) ? -1.0 : 1.0; };
  qlin::ComplexMatrix half(dim, dim);  // H rho
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      qlin::Complex acc{};
      for (std::size_t m = 0; m < dim; ++m) acc += sign(i, m) * rho(m, j);
      half(i, j) = acc;
    }
  }
  qlin::ComplexMatrix out(dim, dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      qlin::Complex acc{};
      for (std::size_t m = 0; m < dim; ++m) acc += half(i, m) * sign(m, j);
      out(i, j) = acc * scale;
    }
  }
  return out;
}

double effective_coupling(const PhysicalInputs& p) {
  p.validate();
  const double nu2 = p.eps * p.eps * p.omega * p.duration / (2.0 * std::numbers::pi) *
                     std::exp(-p.omega * p.omega * p.kappa * p.kappa);
  return std::sqrt(nu2);
}

double acceleration_to_q(double omega, double accel) {
  if (!(omega > 0.0) || !(accel > 0.0) || !std::isfinite(omega) || !std::isfinite(accel)) {
    throw Error(ErrorCode::InvalidParameter, "omega and acceleration must be positive");
  }
  return std::exp(-2.0 * std::numbers::pi * omega / accel);
}

}  // namespace qclock::states
