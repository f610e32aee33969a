#pragma once

// First-order Unruh channel on one uniformly accelerated detector.
//
// Two independent routes are provided. apply_unruh_map attaches a
// three-sector field ancilla, applies the perturbative map to the joint ket,
// normalises and traces the field out. closed_form_rho_ab / closed_form_rho_full
// write the resulting density matrices for Dicke-type inputs directly.

#include <cstddef>

#include "qclock/qlin.hpp"

namespace qclock::unruh {

// Orthonormal field sectors; the ancilla digit takes these values.
enum class FieldSector : std::size_t { Vacuum = 0, F1 = 1, F2 = 2 };

inline constexpr std::size_t kFieldSectors = 3;
inline constexpr int kMaxFullStateAtoms = 12;

struct ChannelOutput {
  qlin::PureState joint_state;   // atoms (x) field, normalised
  double norm_const = 1.0;       // norm of the unnormalised joint ket
  qlin::ComplexMatrix rho_atoms; // field traced out
};

// |psi>|0_M> + nu/sqrt(1-q) [ sqrt(q) (D+_t|psi>)|F2> + (D_t|psi>)|F1> ],
// where D_t lowers qubit `target` (|1> -> |0>) and D+_t raises it.
ChannelOutput apply_unruh_map(const qlin::PureState& psi, std::size_t target, double q, double nu);

// C = (1 + (q nu^2 (n-k) + nu^2 k) / ((1-q) n))^{1/2}.
double normalization_constant(int n, int k, double q, double nu);

// Alice (atom 0) and Bob (atom 1) reduced state for a Z(n,k) input with Bob
// accelerated, basis |00>,|01>,|10>,|11>.
qlin::ComplexMatrix closed_form_rho_ab(int n, int k, double q, double nu);

// Full n-atom state after the channel for a Z(n,k) input.
qlin::ComplexMatrix closed_form_rho_full(int n, int k, double q, double nu);

}  // namespace qclock::unruh
