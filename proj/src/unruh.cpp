#include "qclock/unruh.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qclock/error.hpp"
#include "qclock/states.hpp"

namespace qclock::unruh {

namespace {

void check_channel_params(double q, double nu) {
  if (!std::isfinite(q) || q < 0.0 || q >= 1.0) {
    throw Error(ErrorCode::InvalidParameter, "q must lie in [0, 1)");
  }
  if (!std::isfinite(nu) || nu < 0.0) {
    throw Error(ErrorCode::InvalidParameter, "nu must be finite and non-negative");
  }
}

void check_family(int n, int k) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "n must be at least 2");
  if (k < 1 || k > n - 1) throw Error(ErrorCode::InvalidParameter, "k must lie in [1, n-1]");
}

}  // namespace

ChannelOutput apply_unruh_map(const qlin::PureState& psi, std::size_t target, double q, double nu) {
  check_channel_params(q, nu);
  if (psi.ancilla_dim() != 1) {
    throw Error(ErrorCode::InvalidParameter, "input already carries a field ancilla");
  }
  const std::size_t n = psi.num_qubits();
  if (target >= n) {
    std::ostringstream os;
    os << "target qubit " << target << " out of range for " << n << " qubits";
    throw Error(ErrorCode::InvalidParameter, os.str());
  }
  if (n > static_cast<std::size_t>(kMaxFullStateAtoms)) {
    throw Error(ErrorCode::SizeLimit, "too many atoms for a full-state channel");
  }

  const double branch = nu / std::sqrt(1.0 - q);
  const double raise_weight = branch * std::sqrt(q);
  const double lower_weight = branch;
  const std::size_t bit = std::size_t{1} << (n - 1 - target);
  const auto in = psi.amplitudes();

  std::vector<qlin::Complex> joint(in.size() * kFieldSectors);
  auto slot = [](std::size_t atoms, FieldSector s) {
    return atoms * kFieldSectors + static_cast<std::size_t>(s);
  };
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == qlin::Complex{}) continue;
    joint[slot(i, FieldSector::Vacuum)] += in[i];
    if (i & bit) {
      joint[slot(i ^ bit, FieldSector::F1)] += lower_weight * in[i];
    } else {
      joint[slot(i | bit, FieldSector::F2)] += raise_weight * in[i];
    }
  }

  qlin::PureState raw(n, kFieldSectors, std::move(joint));
  ChannelOutput out;
  out.norm_const = raw.norm();
  out.joint_state = raw.normalized();
  std::vector<std::size_t> atoms(n);
  for (std::size_t i = 0; i < n; ++i) atoms[i] = i;
  out.rho_atoms = qlin::reduced_density_matrix(out.joint_state, atoms);
  return out;
}

double normalization_constant(int n, int k, double q, double nu) {
  check_family(n, k);
  check_channel_params(q, nu);
  const double nu2 = nu * nu;
  return std::sqrt(1.0 + (q * nu2 * (n - k) + nu2 * k) / ((1.0 - q) * n));
}

qlin::ComplexMatrix closed_form_rho_ab(int n, int k, double q, double nu) {
  check_family(n, k);
  check_channel_params(q, nu);
  const double nu2 = nu * nu;
  const double c2 = 1.0 + (q * nu2 * (n - k) + nu2 * k) / ((1.0 - q) * n);
  const double pre = static_cast<double>(k) * (n - k) / (c2 * n * (n - 1));
  const double s1 = static_cast<double>(n - k - 1) / k + nu2 / (1.0 - q);
  const double s2 = 1.0 + q * nu2 * (n - k - 1) / ((1.0 - q) * k);
  const double s3 = 1.0 + nu2 * (k - 1) / ((1.0 - q) * (n - k));
  const double s4 = static_cast<double>(k - 1) / (n - k) + q * nu2 / (1.0 - q);
  qlin::ComplexMatrix rho(4, 4);
  rho(0, 0) = pre * s1;
  rho(1, 1) = pre * s2;
  rho(2, 2) = pre * s3;
  rho(3, 3) = pre * s4;
  rho(1, 2) = pre;
  rho(2, 1) = pre;
  return rho;
}

qlin::ComplexMatrix closed_form_rho_full(int n, int k, double q, double nu) {
  check_family(n, k);
  check_channel_params(q, nu);
  if (n > kMaxFullStateAtoms) throw Error(ErrorCode::SizeLimit, "too many atoms for a full state");

  // The initial projector plus the raised (weight k+1, Bob excited) and
  // lowered (weight k-1, Bob ground) branch projectors, each built from the
  // unnormalised sum of its kets.
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t bob = std::size_t{1} << (n - 2);
  const double nu2 = nu * nu;
  const double norm2 = 1.0 / static_cast<double>(states::weight_k_indices(n, k).size());

  std::vector<double> initial(dim), raised(dim), lowered(dim);
  for (std::size_t i : states::weight_k_indices(n, k)) {
    initial[i] = 1.0;
    if (i & bob) {
      lowered[i ^ bob] = 1.0;
    } else {
      raised[i | bob] = 1.0;
    }
  }

  const double w_raised = q * nu2 / (1.0 - q);
  const double w_lowered = nu2 / (1.0 - q);
  const double c2 = 1.0 + (q * nu2 * (n - k) + nu2 * k) / ((1.0 - q) * n);
  qlin::ComplexMatrix rho(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = initial[i] * initial[j] + w_raised * raised[i] * raised[j] +
                       w_lowered * lowered[i] * lowered[j];
      if (v != 0.0) rho(i, j) = v * norm2 / c2;
    }
  }
  return rho;
}

}  // namespace qclock::unruh
