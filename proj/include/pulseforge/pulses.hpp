#pragma once

#include "pulseforge/core.hpp"

// Constructors for every pulse family the library supports, including the
// invariant-based shortcut-to-adiabaticity synthesis.

namespace pulseforge {

enum class Case1Kind { pi, chirped_gaussian, allen_eberly, sta, flat_pi, resonant_gaussian };
enum class Case2Kind { cds, stirap_gaussian, stirap_sech, stirap_sin, stirap_sin2 };

// Envelopes (T = 1 throughout):
//   pi / flat_pi       Delta = 0,            Omega = sqrt2 pi        on [0, 1]
//   chirped_gaussian   Delta = sqrt2 t,      Omega = 2 sqrt2 e^{-t^2} on [-5, 5]
//   allen_eberly       Delta = sqrt2 tanh t, Omega = sqrt6 sech t     on [-10, 10]
//   resonant_gaussian  Delta = 0,            Omega = sqrt(2pi) e^{-t^2} on [-5, 5]
//   sta                from invert_sta(n)                             on [0, 1]
Pulse make_case1(Case1Kind kind, double sta_n = 0.5);

// Same families with an overridden half-width for the symmetric-window
// kinds (chirped_gaussian, allen_eberly, resonant_gaussian). Other kinds
// ignore the override.
Pulse make_case1_windowed(Case1Kind kind, double half_width, double sta_n = 0.5);

// The Lewis-Riesenfeld invariant angles behind the STA pulse. With
// theta = pi t / T the transport phase is epsilon_plus = -theta - n sin(2 theta)
// and gamma = -arccot[2 (1 + 2 n cos 2 theta) sin theta] on the (0, pi)
// arccot branch; gamma_dot is the closed-form derivative.
struct StaAngles {
  double n = 0.0;
  double theta(double t) const;
  double theta_dot() const;
  double gamma(double t) const;
  double gamma_dot(double t) const;
  double epsilon_plus(double t) const;
};

// Inverts the invariant constraints into a case1 pulse on [0, 1]:
//   Omega = -sqrt2 theta_dot / sin(gamma),
//   Delta = -Omega cot(theta) cos(gamma)/sqrt2 - gamma_dot,
// both reduced to closed forms with the endpoint limits built in. The
// grid is scanned to reject any n that would make Omega singular.
Pulse invert_sta(double n, int grid = 2000);

// Envelopes, with W0 = sqrt2 pi:
//   cds             Wp = Ws = W0                            on [0, 1]
//   stirap_gaussian Wp = W0 e^{-t^2},   Ws = W0 e^{-(t-2)^2} on [-4, 6]
//   stirap_sech     Wp = W0 sech t,     Ws = W0 sech(t-5)    on [-8, 13]
//   stirap_sin      Wp = W0 sin(pi t),  Ws = W0 cos(pi t)    on [0, 1]
//   stirap_sin2     Wp = W0 sin^2(pi t), Ws = W0 cos^2(pi t) on [0, 1]
Pulse make_case2(Case2Kind kind);

// Mirrors a case2 pulse in time about its window midpoint, so the
// S-before-P ordering becomes P-before-S. For every family above the
// mirrored pulse has the two envelope functions exchanged. Involutive.
Pulse time_reverse_pair(const Pulse& p);

}  // namespace pulseforge
