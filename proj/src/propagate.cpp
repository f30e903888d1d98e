#include "pulseforge/propagate.hpp"

#include <cmath>

namespace pulseforge {

namespace {

constexpr complexd kMinusI{0.0, -1.0};

// sin(x)/x with the removable singularity filled in.
double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// Fixed-step RK4 on dU/dt = -i H(t) U, U(t0) = I.
template <typename MatT, typename HamF>
MatT rk4_unitary(const HamF& ham, double t0, double tf, int steps) {
  MatT u = MatT::Identity();
  const double h = (tf - t0) / steps;
  MatT h_next = ham(t0);
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const MatT h0 = h_next;
    const MatT hm = ham(t + 0.5 * h);
    h_next = ham(t + h);
    const MatT k1 = kMinusI * (h0 * u);
    const MatT k2 = kMinusI * (hm * (u + (0.5 * h) * k1));
    const MatT k3 = kMinusI * (hm * (u + (0.5 * h) * k2));
    const MatT k4 = kMinusI * (h_next * (u + h * k3));
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

int step_count(const Pulse& p, const IntegratorConfig& cfg) {
  if (cfg.steps_per_T < 1) throw std::invalid_argument("IntegratorConfig: steps_per_T must be positive");
  const int n = static_cast<int>(std::ceil(p.duration() * cfg.steps_per_T));
  return std::max(n, 1);
}

void check_defect(const Eigen::MatrixXcd& u, const IntegratorConfig& cfg) {
  if (unitarity_defect(u) > cfg.unitarity_tolerance)
    throw std::runtime_error(
        "propagate: unitarity defect above tolerance (step count too low or envelope singular)");
}

}  // namespace

CayleyKlein propagate_constant_two_level(double omega, double delta, double duration) {
  const double w = omega * duration / std::sqrt(2.0);
  const double dp = delta * duration;
  const double g = std::hypot(w, dp);
  const double c = std::cos(0.5 * g);
  const double s = sinc(0.5 * g) * 0.5;  // sin(g/2)/g
  return {complexd{c, dp * s}, complexd{0.0, -w * s}};
}

Mat3 propagate_constant_three_level(double omega_p, double omega_s, double duration) {
  const double rms = std::hypot(omega_p, omega_s);
  if (rms == 0.0) return Mat3::Identity();
  const double p = omega_p / rms;
  const double q = omega_s / rms;
  const double area = 0.5 * rms * duration;
  // H2 = (rms/2) M with M^3 = M, so exp(-i area M) = I - i sin(area) M + (cos(area)-1) M^2.
  Mat3 m;
  m << 0, p, 0, p, 0, q, 0, q, 0;
  Mat3 m2;
  m2 << p * p, 0, p * q, 0, 1, 0, p * q, 0, q * q;
  return Mat3::Identity() + kMinusI * std::sin(area) * m + complexd(std::cos(area) - 1.0) * m2;
}

Mat2 propagate_case1_numeric(const Pulse& p, const IntegratorConfig& cfg) {
  if (p.kind != PulseKind::case1)
    throw std::invalid_argument("propagate_case1_numeric: case1 pulse required");
  const auto ham = [&p](double t) {
    const double w = p.omega_p(t) / std::sqrt(2.0);
    const double d = p.delta(t);
    Mat2 h;
    h << -0.5 * d, 0.5 * w, 0.5 * w, 0.5 * d;
    return h;
  };
  return rk4_unitary<Mat2>(ham, p.t0, p.tf, step_count(p, cfg));
}

Mat3 propagate_case1_unreduced(const Pulse& p, const IntegratorConfig& cfg) {
  if (p.kind != PulseKind::case1)
    throw std::invalid_argument("propagate_case1_unreduced: case1 pulse required");
  const auto ham = [&p](double t) {
    const double w = 0.5 * p.omega_p(t);
    const double d = p.delta(t);
    Mat3 h;
    h << -d, w, 0, w, 0, w, 0, w, d;
    return h;
  };
  return rk4_unitary<Mat3>(ham, p.t0, p.tf, step_count(p, cfg));
}

Mat3 propagate_case2_numeric(const Pulse& p, const IntegratorConfig& cfg) {
  if (p.kind != PulseKind::case2)
    throw std::invalid_argument("propagate_case2_numeric: case2 pulse required");
  const auto ham = [&p](double t) {
    const double wp = 0.5 * p.omega_p(t);
    const double ws = 0.5 * p.omega_s(t);
    Mat3 h;
    h << 0, wp, 0, wp, 0, ws, 0, ws, 0;
    return h;
  };
  return rk4_unitary<Mat3>(ham, p.t0, p.tf, step_count(p, cfg));
}

Eigen::MatrixXcd propagate_numeric(const Pulse& p, const std::optional<ErrorModel>& e,
                                   const IntegratorConfig& cfg) {
  const Pulse q = e ? apply_error(p, *e, 1) : p;
  Eigen::MatrixXcd u;
  if (q.kind == PulseKind::case1)
    u = propagate_case1_numeric(q, cfg);
  else
    u = propagate_case2_numeric(q, cfg);
  check_defect(u, cfg);
  return u;
}

Eigen::MatrixXcd pulse_propagator(const Pulse& p, const IntegratorConfig& cfg) {
  if (p.constant) {
    const auto& c = *p.constant;
    if (p.kind == PulseKind::case1)
      return propagate_constant_two_level(c[0], c[2], p.duration()).matrix();
    return propagate_constant_three_level(c[0], c[1], p.duration());
  }
  Eigen::MatrixXcd u = p.kind == PulseKind::case1
                           ? Eigen::MatrixXcd(propagate_case1_numeric(p, cfg))
                           : Eigen::MatrixXcd(propagate_case2_numeric(p, cfg));
  check_defect(u, cfg);
  return u;
}

}  // namespace pulseforge
