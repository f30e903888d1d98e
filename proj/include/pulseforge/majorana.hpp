#pragma once

#include "pulseforge/core.hpp"

// The SU(2) reduction of the case1 family and the lifting of two-level
// propagators and populations back to the three-level system.

namespace pulseforge {

// The effective two-level pulse of a case1 pulse: shared envelope
// omega(t) and detuning delta(t). The sqrt2 coupling reduction lives in
// the Hamiltonian builder, not the envelope.
struct ReducedPulse {
  double t0 = 0.0;
  double tf = 1.0;
  std::function<double(double)> omega;
  std::function<double(double)> delta;
};

// Rejects non-case1 pulses.
ReducedPulse reduce(const Pulse& p);

// Lifts an SU(2) propagator to the three-level system via the spin-1
// representation:
//   U1 = [[a^2, sqrt2 ab, b^2],
//         [-sqrt2 a b*, |a|^2-|b|^2, sqrt2 a* b],
//         [b*^2, -sqrt2 a* b*, a*^2]].
// Rejects non-normalized input.
Mat3 lift(const CayleyKlein& ck, double tol = 1e-8);

// Level populations reached from state |1>: P1 = |a|^4, P3 = |b|^4,
// P2 = 2 |a|^2 |b|^2.
std::array<double, 3> populations_from_ck(const CayleyKlein& ck);

}  // namespace pulseforge
