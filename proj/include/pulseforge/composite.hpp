#pragma once

#include <vector>

#include "pulseforge/propagate.hpp"

// N-pulse sequence composition under the phase/order/error policies, and
// the closed-form sequence populations that serve as independent oracles
// for the numeric path.

namespace pulseforge {

struct SequenceResult {
  Eigen::MatrixXcd total;                     // ordered product U_N ... U_1
  std::vector<Eigen::MatrixXcd> per_pulse;    // U_1 .. U_N
  std::array<double, 3> populations_from_1{};  // three-level populations from |1>
};

// Propagator of pulse k (1-based) of a sequence: (i) both Rabi envelopes
// negated when the phase alternates and k is even, (ii) time reversal
// when the order alternates and k is even, (iii) the error applied at
// index k. Constant pulses use the analytic propagators, everything else
// RK4.
Eigen::MatrixXcd sequence_pulse_propagator(const Pulse& p, const SequenceSpec& spec,
                                           const std::optional<ErrorModel>& e, int k,
                                           const IntegratorConfig& cfg);

// Three-level populations reached from |1> under the sequence total (a
// 2x2 total is lifted through the Majorana mapping).
std::array<double, 3> populations_from_total(PulseKind kind, const Eigen::MatrixXcd& total);

// Multiplies the per-pulse propagators built by sequence_pulse_propagator
// into the sequence total. Propagators repeat with the parity of the
// pulse index, so at most two integrations run per call.
SequenceResult compose(const Pulse& p, const SequenceSpec& spec,
                       const std::optional<ErrorModel>& e, const IntegratorConfig& cfg);

// Same-phase pi-pulse sequence closed form: cos^4(N lambda pi / 2).
// This is P3 for odd N (transfer) and P1 for even N (return).
double pi_sequence_population(int n_pulses, double lambda);

// Sequence-population parameters derived from a single-pulse (a, b):
//   Theta = arccos(1 - 2 a_i^2), vartheta = arccos(a_r),
//   E = sin(n Theta)/sin(Theta), D = sin(N vartheta)/sin(vartheta),
//   F = cos((n + 1/2) Theta)/cos(Theta / 2),
// with n = floor(N/2) and the removable singularities filled by limits.
struct ClosedFormParams {
  double theta_big = 0.0;   // Theta
  double vartheta = 0.0;
  double e_factor = 0.0;    // E
  double d_factor = 0.0;    // D
  double f_factor = 0.0;    // F
  ClosedFormParams(const CayleyKlein& ck, int n_pulses);
};

// Exact N-pulse population from the single-pulse Cayley-Klein pair:
// P3 for odd N, P1 for even N.
//
// same phases:  p_e = |b|^2 sin^2(N vartheta)/sin^2(vartheta);
//               P3 = p_e^2 (N odd), P1 = (1 - p_e)^2 (N even).
// alternating:  N odd:  P3 = [|b|^2 cos^2(N Theta/2) / cos^2(Theta/2)]^2;
//               N even: P1 = [(|b|^2 cos^2(N Theta/2) + a_r^2) / cos^2(Theta/2)]^2.
// The even-N alternating form keeps the a_r^2 term the series expansion
// drops; it is the exact modulus of the product propagator.
double detuning_sequence_population(const CayleyKlein& ck, int n_pulses, PhasePolicy policy);

// Second-order expansions of the above, clamped to [0, 1]:
//   alternating:          1 - 2 N^2 a_i^2
//   same phases, N even:  1 - 2 N^2 a_r^2
//   same phases, N odd:   1 - 2 N^2 a_r^2 - 2 a_i^2
double perturbative_population(const CayleyKlein& ck, int n_pulses, PhasePolicy policy);

}  // namespace pulseforge
