#include "pulseforge/pulses.hpp"

#include <cmath>

namespace pulseforge {

namespace {

const double kPi = std::acos(-1.0);
const double kSqrt2Pi = std::sqrt(2.0) * kPi;  // flat pi-pulse amplitude

double sech(double x) { return 1.0 / std::cosh(x); }

Pulse symmetric_case1(std::function<double(double)> omega, std::function<double(double)> delta,
                      double half_width) {
  Pulse p;
  p.kind = PulseKind::case1;
  p.t0 = -half_width;
  p.tf = half_width;
  p.omega_p = omega;
  p.omega_s = std::move(omega);
  p.delta = std::move(delta);
  return p;
}

// x(theta) and its theta-derivative for the STA gamma Ansatz.
double sta_x(double n, double th) { return 2.0 * (1.0 + 2.0 * n * std::cos(2.0 * th)) * std::sin(th); }
double sta_dx(double n, double th) {
  return 2.0 * (1.0 + 2.0 * n * std::cos(2.0 * th)) * std::cos(th) -
         8.0 * n * std::sin(2.0 * th) * std::sin(th);
}

}  // namespace

double StaAngles::theta(double t) const { return kPi * t; }
double StaAngles::theta_dot() const { return kPi; }

double StaAngles::gamma(double t) const {
  // -arccot(x) on the (0, pi) branch, i.e. arctan(x) - pi/2: continuous,
  // with sin(gamma) = -1/sqrt(1+x^2) strictly negative.
  return std::atan(sta_x(n, theta(t))) - 0.5 * kPi;
}

double StaAngles::gamma_dot(double t) const {
  const double th = theta(t);
  const double x = sta_x(n, th);
  return theta_dot() * sta_dx(n, th) / (1.0 + x * x);
}

double StaAngles::epsilon_plus(double t) const {
  const double th = theta(t);
  return -th - n * std::sin(2.0 * th);
}

Pulse invert_sta(double n, int grid) {
  if (!std::isfinite(n)) throw std::invalid_argument("invert_sta: n must be finite");
  if (grid < 1000) throw std::invalid_argument("invert_sta: grid must be at least 1000");
  const StaAngles ang{n};
  // Omega = -sqrt2 theta_dot / sin(gamma) = sqrt2 theta_dot sqrt(1+x^2);
  // the cot(theta) cos(gamma) product collapses to -2 theta_dot cos(theta) (1 + 2n cos 2theta),
  // finite at both endpoints.
  const auto omega = [n](double t) {
    const double x = sta_x(n, kPi * t);
    return std::sqrt(2.0) * kPi * std::sqrt(1.0 + x * x);
  };
  const auto delta = [n, ang](double t) {
    const double th = kPi * t;
    return -2.0 * kPi * std::cos(th) * (1.0 + 2.0 * n * std::cos(2.0 * th)) - ang.gamma_dot(t);
  };
  // Guard against a singular Omega: sin(gamma) = -1/sqrt(1+x^2).
  for (int i = 1; i < grid; ++i) {
    const double x = sta_x(n, kPi * i / grid);
    if (1.0 / std::sqrt(1.0 + x * x) < 1e-12)
      throw std::invalid_argument("invert_sta: sin(gamma) vanishes inside the window");
  }
  Pulse p;
  p.kind = PulseKind::case1;
  p.t0 = 0.0;
  p.tf = 1.0;
  p.omega_p = omega;
  p.omega_s = omega;
  p.delta = delta;
  return p;
}

Pulse make_case1(Case1Kind kind, double sta_n) {
  switch (kind) {
    case Case1Kind::pi:
    case Case1Kind::flat_pi:
      return Pulse::constant_case1(kSqrt2Pi, 0.0, 0.0, 1.0);
    case Case1Kind::chirped_gaussian:
      return symmetric_case1([](double t) { return 2.0 * std::sqrt(2.0) * std::exp(-t * t); },
                             [](double t) { return std::sqrt(2.0) * t; }, 5.0);
    case Case1Kind::allen_eberly:
      return symmetric_case1([](double t) { return std::sqrt(6.0) * sech(t); },
                             [](double t) { return std::sqrt(2.0) * std::tanh(t); }, 10.0);
    case Case1Kind::resonant_gaussian:
      return symmetric_case1([](double t) { return std::sqrt(2.0 * kPi) * std::exp(-t * t); },
                             [](double) { return 0.0; }, 5.0);
    case Case1Kind::sta:
      return invert_sta(sta_n);
  }
  throw std::invalid_argument("make_case1: unknown kind");
}

Pulse make_case1_windowed(Case1Kind kind, double half_width, double sta_n) {
  Pulse p = make_case1(kind, sta_n);
  if (kind == Case1Kind::chirped_gaussian || kind == Case1Kind::allen_eberly ||
      kind == Case1Kind::resonant_gaussian) {
    if (!(half_width > 0.0)) throw std::invalid_argument("make_case1_windowed: half_width must be positive");
    p.t0 = -half_width;
    p.tf = half_width;
  }
  return p;
}

Pulse make_case2(Case2Kind kind) {
  const double w0 = kSqrt2Pi;
  Pulse p;
  p.kind = PulseKind::case2;
  p.delta = [](double) { return 0.0; };
  switch (kind) {
    case Case2Kind::cds:
      return Pulse::constant_case2(w0, w0, 0.0, 1.0);
    case Case2Kind::stirap_gaussian:
      p.t0 = -4.0;
      p.tf = 6.0;
      p.omega_p = [w0](double t) { return w0 * std::exp(-t * t); };
      p.omega_s = [w0](double t) { return w0 * std::exp(-(t - 2.0) * (t - 2.0)); };
      return p;
    case Case2Kind::stirap_sech:
      p.t0 = -8.0;
      p.tf = 13.0;
      p.omega_p = [w0](double t) { return w0 * sech(t); };
      p.omega_s = [w0](double t) { return w0 * sech(t - 5.0); };
      return p;
    case Case2Kind::stirap_sin:
      p.t0 = 0.0;
      p.tf = 1.0;
      p.omega_p = [w0](double t) { return w0 * std::sin(kPi * t); };
      p.omega_s = [w0](double t) { return w0 * std::cos(kPi * t); };
      return p;
    case Case2Kind::stirap_sin2:
      p.t0 = 0.0;
      p.tf = 1.0;
      p.omega_p = [w0](double t) {
        const double s = std::sin(kPi * t);
        return w0 * s * s;
      };
      p.omega_s = [w0](double t) {
        const double c = std::cos(kPi * t);
        return w0 * c * c;
      };
      return p;
  }
  throw std::invalid_argument("make_case2: unknown kind");
}

Pulse time_reverse_pair(const Pulse& p) {
  if (p.kind != PulseKind::case2)
    throw std::invalid_argument("time_reverse_pair: case2 pulse required");
  const double mid = p.t0 + p.tf;
  Pulse out = p;
  const auto wp = p.omega_p;
  const auto ws = p.omega_s;
  out.omega_p = [wp, mid](double t) { return wp(mid - t); };
  out.omega_s = [ws, mid](double t) { return ws(mid - t); };
  // Mirrored constants are the same constants.
  return out;
}

}  // namespace pulseforge
