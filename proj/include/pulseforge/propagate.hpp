#pragma once

#include <optional>

#include "pulseforge/core.hpp"

// Propagator production: a fixed-step RK4 integrator for the matrix
// Schrodinger equation i dU/dt = H(t) U, plus closed-form propagators for
// constant Hamiltonians. The integrator works on the unitary (not the
// state) so one integration serves all initial states.

namespace pulseforge {

struct IntegratorConfig {
  int steps_per_T = 4000;            // RK4 steps per unit of T
  double unitarity_tolerance = 1e-8;  // post-integration defect guard
};

// Exact propagator of the constant two-level Hamiltonian
//   H = 1/2 [[-delta, omega/sqrt2], [omega/sqrt2, delta]]
// over the given duration, as Cayley-Klein parameters:
//   a = cos(G/2) + i (d'/G) sin(G/2),  b = -i (W/G) sin(G/2),
// with W = omega*duration/sqrt2, d' = delta*duration, G = sqrt(W^2+d'^2).
// G = 0 returns the identity.
CayleyKlein propagate_constant_two_level(double omega, double delta, double duration);

// Exact propagator exp(-i H2 d) of the constant one-photon-resonance
// Hamiltonian H2 = 1/2 [[0, Wp, 0], [Wp, 0, Ws], [0, Ws, 0]].
Mat3 propagate_constant_three_level(double omega_p, double omega_s, double duration);

// RK4 propagator of the reduced two-level Hamiltonian of a case1 pulse.
Mat2 propagate_case1_numeric(const Pulse& p, const IntegratorConfig& cfg);

// RK4 propagator of the full three-level H1 of a case1 pulse (used to
// cross-check the Majorana reduction).
Mat3 propagate_case1_unreduced(const Pulse& p, const IntegratorConfig& cfg);

// RK4 propagator of the three-level H2 of a case2 pulse.
Mat3 propagate_case2_numeric(const Pulse& p, const IntegratorConfig& cfg);

// General numeric propagator: the reduced 2x2 for case1 pulses, the 3x3
// H2 for case2 pulses. The optional error is applied at pulse index 1.
// Throws if the unitarity defect exceeds cfg.unitarity_tolerance.
Eigen::MatrixXcd propagate_numeric(const Pulse& p, const std::optional<ErrorModel>& e,
                                   const IntegratorConfig& cfg);

// Single-pulse propagator with analytic dispatch: constant pulses use the
// closed forms above, everything else goes through RK4. This is the
// entry point sequence composition uses.
Eigen::MatrixXcd pulse_propagator(const Pulse& p, const IntegratorConfig& cfg);

}  // namespace pulseforge
