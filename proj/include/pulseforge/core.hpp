#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

// Domain types shared by the whole library.
//
// Units convention: the pulse width T is the global time unit and is fixed
// to T = 1. All Rabi frequencies and detunings are dimensionless multiples
// of 1/T, and hbar = 1. Carrier phases are zero; a "pi phase" pulse is
// realized by negating both Rabi envelopes.

namespace pulseforge {

using complexd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;

// Max-norm of U^dagger U - I. Zero for an exact unitary.
double unitarity_defect(const Eigen::MatrixXcd& u);

// The two complex numbers (a, b) parameterizing an SU(2) propagator
//   U = [[a, b], [-conj(b), conj(a)]],   |a|^2 + |b|^2 = 1.
struct CayleyKlein {
  complexd a{1.0, 0.0};
  complexd b{0.0, 0.0};

  double ar() const { return a.real(); }
  double ai() const { return a.imag(); }

  double norm_defect() const { return std::abs(std::norm(a) + std::norm(b) - 1.0); }

  // Builds the SU(2) matrix back from (a, b).
  Mat2 matrix() const;
};

// Extracts (a, b) from a 2x2 unitary, rejecting matrices that are not of
// the SU(2) form above (which signals that a non-traceless or
// non-Hermitian Hamiltonian was integrated).
CayleyKlein cayley_klein_of(const Mat2& u, double tol = 1e-8);

enum class PulseKind { case1, case2 };

// A single control segment: a time window plus evaluable Rabi envelopes.
//
// case1 pulses (off-resonance family) carry one shared envelope
// omega(t) = omega_p = omega_s and one detuning delta(t); the three-level
// Hamiltonian is H1 = 1/2 [[-2D, W, 0], [W, 0, W], [0, W, 2D]] and reduces
// to the two-level H = 1/2 [[-D, W/sqrt2], [W/sqrt2, D]].
//
// case2 pulses (one-photon resonance) carry independent pump/Stokes
// envelopes and zero detunings: H2 = 1/2 [[0, Wp, 0], [Wp, 0, Ws], [0, Ws, 0]].
//
// Pulses are immutable values; envelope functions must be pure. Consumers
// may sample the envelopes at any t inside the window.
struct Pulse {
  PulseKind kind = PulseKind::case1;
  double t0 = 0.0;
  double tf = 1.0;
  std::function<double(double)> omega_p;
  std::function<double(double)> omega_s;
  std::function<double(double)> delta;  // case1 only; case2 keeps it at zero

  // Set when all envelopes are time independent: {omega_p, omega_s, delta}.
  // Enables the analytic constant-Hamiltonian propagators.
  std::optional<std::array<double, 3>> constant;

  double duration() const { return tf - t0; }

  static Pulse constant_case1(double omega, double delta, double t0, double tf);
  static Pulse constant_case2(double omega_p, double omega_s, double t0, double tf);
};

enum class ErrorChannel {
  rabi_global,      // Omega -> (1+lambda) Omega on both arms
  detuning_static,  // Delta -> Delta + delta
  rabi_arm,         // Omega_i -> (1+eta) Omega_i on exactly one arm per pulse
};

enum class ArmAssignment {
  fixed_p,
  fixed_s,
  alternating_start_s,  // S arm on odd pulse indices, P arm on even ones
};

struct ErrorModel {
  ErrorChannel channel = ErrorChannel::rabi_global;
  double magnitude = 0.0;
  ArmAssignment assignment = ArmAssignment::fixed_s;

  static ErrorModel rabi_global(double lambda) {
    return {ErrorChannel::rabi_global, lambda, ArmAssignment::fixed_s};
  }
  static ErrorModel detuning_static(double delta) {
    return {ErrorChannel::detuning_static, delta, ArmAssignment::fixed_s};
  }
  static ErrorModel rabi_arm(double eta, ArmAssignment assign) {
    return {ErrorChannel::rabi_arm, eta, assign};
  }

  // Same-magnitude model with the magnitude replaced (used by sweeps).
  ErrorModel with_magnitude(double m) const { return {channel, m, assignment}; }
};

// Returns a new pulse with the perturbation applied. pulse_index is the
// 1-based position within the sequence; it only matters for the
// alternating arm assignment. rabi_arm on a case1 pulse is rejected
// (case1 defines a single shared Omega).
Pulse apply_error(const Pulse& p, const ErrorModel& e, int pulse_index);

enum class PhasePolicy { same, alternating };
enum class OrderPolicy { fixed, alternate_time_reversal };

// Pulse count plus the per-pulse policies. Pulses are contiguous (zero
// gap). Alternating phase negates both Rabi envelopes of every
// even-numbered pulse; alternating order time-reverses every
// even-numbered pulse (case2 only).
struct SequenceSpec {
  int n_pulses = 1;
  PhasePolicy phase = PhasePolicy::same;
  OrderPolicy order = OrderPolicy::fixed;
};

}  // namespace pulseforge
