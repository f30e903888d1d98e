#include "pulseforge/core.hpp"

#include <cmath>

namespace pulseforge {

double unitarity_defect(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols() || (u.rows() != 2 && u.rows() != 3))
    throw std::invalid_argument("unitarity_defect: matrix must be square, dim 2 or 3");
  Eigen::MatrixXcd g = u.adjoint() * u;
  g -= Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff();
}

Mat2 CayleyKlein::matrix() const {
  Mat2 u;
  u << a, b, -std::conj(b), std::conj(a);
  return u;
}

CayleyKlein cayley_klein_of(const Mat2& u, double tol) {
  if (unitarity_defect(u) > tol)
    throw std::invalid_argument("cayley_klein_of: matrix is not unitary within tolerance");
  const complexd a = u(0, 0);
  const complexd b = u(0, 1);
  if (std::abs(u(1, 0) + std::conj(b)) > tol || std::abs(u(1, 1) - std::conj(a)) > tol)
    throw std::invalid_argument("cayley_klein_of: matrix does not have the SU(2) form");
  // Unitarity puts |a|^2+|b|^2 within tol of 1; rescale so the invariant
  // holds exactly for downstream closed forms.
  const double s = 1.0 / std::sqrt(std::norm(a) + std::norm(b));
  return {a * s, b * s};
}

Pulse Pulse::constant_case1(double omega, double delta, double t0, double tf) {
  Pulse p;
  p.kind = PulseKind::case1;
  p.t0 = t0;
  p.tf = tf;
  p.omega_p = [omega](double) { return omega; };
  p.omega_s = p.omega_p;
  p.delta = [delta](double) { return delta; };
  p.constant = {{omega, omega, delta}};
  return p;
}

Pulse Pulse::constant_case2(double omega_p, double omega_s, double t0, double tf) {
  Pulse p;
  p.kind = PulseKind::case2;
  p.t0 = t0;
  p.tf = tf;
  p.omega_p = [omega_p](double) { return omega_p; };
  p.omega_s = [omega_s](double) { return omega_s; };
  p.delta = [](double) { return 0.0; };
  p.constant = {{omega_p, omega_s, 0.0}};
  return p;
}

namespace {

// Which arm the error multiplies for a given pulse position.
bool scales_p_arm(ArmAssignment a, int pulse_index) {
  switch (a) {
    case ArmAssignment::fixed_p: return true;
    case ArmAssignment::fixed_s: return false;
    case ArmAssignment::alternating_start_s: return pulse_index % 2 == 0;
  }
  return false;
}

}  // namespace

Pulse apply_error(const Pulse& p, const ErrorModel& e, int pulse_index) {
  if (pulse_index < 1) throw std::invalid_argument("apply_error: pulse_index is 1-based");
  Pulse out = p;
  switch (e.channel) {
    case ErrorChannel::rabi_global: {
      const double s = 1.0 + e.magnitude;
      const auto wp = p.omega_p;
      const auto ws = p.omega_s;
      out.omega_p = [wp, s](double t) { return s * wp(t); };
      out.omega_s = [ws, s](double t) { return s * ws(t); };
      if (p.constant) out.constant = {{s * (*p.constant)[0], s * (*p.constant)[1], (*p.constant)[2]}};
      break;
    }
    case ErrorChannel::detuning_static: {
      if (p.kind != PulseKind::case1)
        throw std::invalid_argument("apply_error: detuning_static applies to case1 pulses only");
      const double d = e.magnitude;
      const auto dl = p.delta;
      out.delta = [dl, d](double t) { return dl(t) + d; };
      if (p.constant) out.constant = {{(*p.constant)[0], (*p.constant)[1], (*p.constant)[2] + d}};
      break;
    }
    case ErrorChannel::rabi_arm: {
      if (p.kind != PulseKind::case2)
        throw std::invalid_argument("apply_error: rabi_arm needs a case2 pulse (case1 has one shared Omega)");
      const double s = 1.0 + e.magnitude;
      if (scales_p_arm(e.assignment, pulse_index)) {
        const auto wp = p.omega_p;
        out.omega_p = [wp, s](double t) { return s * wp(t); };
        if (p.constant) out.constant = {{s * (*p.constant)[0], (*p.constant)[1], (*p.constant)[2]}};
      } else {
        const auto ws = p.omega_s;
        out.omega_s = [ws, s](double t) { return s * ws(t); };
        if (p.constant) out.constant = {{(*p.constant)[0], s * (*p.constant)[1], (*p.constant)[2]}};
      }
      break;
    }
  }
  return out;
}

}  // namespace pulseforge
