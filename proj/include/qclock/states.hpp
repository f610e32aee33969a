#pragma once

// Initial states of the synchronization protocol, the Hadamard (dual) basis
// change, and conversions from physical inputs to the two channel parameters.
//
// Basis index convention: |b1 b2 ... bn> maps to the integer whose most
// significant bit is b1 (atom 0 = Alice, atom 1 = Bob).

#include <cstddef>
#include <vector>

#include "qclock/qlin.hpp"

namespace qclock {

enum class BasisLabel { Computational, Dual };

// Dimensionless protocol knobs. omega_delta is the phase product Ωδ.
struct ProtocolParams {
  int n = 2;
  int k = 1;
  double q = 0.0;
  double nu = 0.0;
  double omega_delta = 0.0;
  double theta = 0.0;

  // Throws InvalidParameter unless n >= 2, 1 <= k <= n-1, 0 <= q < 1, nu >= 0,
  // theta in [0, pi/2] and every real is finite.
  void validate() const;
};

struct PhysicalInputs {
  double omega = 1.0;     // energy gap
  double accel = 1.0;     // proper acceleration of the moving detector
  double eps = 0.0;       // coupling constant
  double duration = 1.0;  // interaction time
  double kappa = 0.0;     // width of the Gaussian switching factor
  double delta = 0.0;     // clock offset tau_A - tau_B

  void validate() const;
};

}  // namespace qclock

namespace qclock::states {

// Basis indices of Hamming weight k over n qubits, ascending (lexicographic
// in the bit-string reading).
std::vector<std::size_t> weight_k_indices(int n, int k);

qlin::PureState build_w_state(int n);
qlin::PureState build_z_state(int n, int k);

// sin(theta)|01> + cos(theta)|10>; any real theta is accepted.
qlin::PureState build_bipartite_theta(double theta);

// Conjugation by the Hadamard transform on every qubit. Involutive.
qlin::ComplexMatrix dual_basis_transform(const qlin::ComplexMatrix& rho, int qubit_count);

// nu = sqrt(eps^2 Omega Delta / (2 pi) * exp(-Omega^2 kappa^2)).
double effective_coupling(const PhysicalInputs& p);

// q = exp(-2 pi Omega / a).
double acceleration_to_q(double omega, double accel);

}  // namespace qclock::states
