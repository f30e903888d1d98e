#include "pulseforge/composite.hpp"

#include <cmath>

#include "pulseforge/pulses.hpp"

namespace pulseforge {

namespace {

Pulse flip_phase(const Pulse& p) {
  Pulse out = p;
  const auto wp = p.omega_p;
  const auto ws = p.omega_s;
  out.omega_p = [wp](double t) { return -wp(t); };
  out.omega_s = [ws](double t) { return -ws(t); };
  if (p.constant) out.constant = {{-(*p.constant)[0], -(*p.constant)[1], (*p.constant)[2]}};
  return out;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// sin(n x)/sin(x) with the x -> 0 and x -> pi limits.
double dirichlet_ratio(int n, double x) {
  const double s = std::sin(x);
  if (std::abs(s) < 1e-7) {
    const double sign = std::cos(x) > 0.0 ? 1.0 : (n % 2 == 0 ? -1.0 : 1.0);
    return sign * n;  // sin(n x)/sin(x) -> n at 0, (-1)^{n+1} n at pi
  }
  return std::sin(n * x) / s;
}

}  // namespace

Eigen::MatrixXcd sequence_pulse_propagator(const Pulse& p, const SequenceSpec& spec,
                                           const std::optional<ErrorModel>& e, int k,
                                           const IntegratorConfig& cfg) {
  if (spec.order == OrderPolicy::alternate_time_reversal && p.kind != PulseKind::case2)
    throw std::invalid_argument("compose: time-reversal ordering applies to case2 pulses only");
  Pulse q = p;
  if (spec.phase == PhasePolicy::alternating && k % 2 == 0) q = flip_phase(q);
  if (spec.order == OrderPolicy::alternate_time_reversal && k % 2 == 0) q = time_reverse_pair(q);
  if (e) q = apply_error(q, *e, k);
  return pulse_propagator(q, cfg);
}

std::array<double, 3> populations_from_total(PulseKind kind, const Eigen::MatrixXcd& total) {
  if (kind == PulseKind::case1) {
    const double pg = std::norm(total(0, 0));
    const double pe = std::norm(total(1, 0));
    return {pg * pg, 2.0 * pg * pe, pe * pe};
  }
  return {std::norm(total(0, 0)), std::norm(total(1, 0)), std::norm(total(2, 0))};
}

SequenceResult compose(const Pulse& p, const SequenceSpec& spec,
                       const std::optional<ErrorModel>& e, const IntegratorConfig& cfg) {
  if (spec.n_pulses < 1) throw std::invalid_argument("compose: n_pulses must be at least 1");

  // All three policies act on even-numbered pulses, so propagators depend
  // only on the parity of the pulse index.
  const Eigen::MatrixXcd u_odd = sequence_pulse_propagator(p, spec, e, 1, cfg);
  const Eigen::MatrixXcd u_even =
      spec.n_pulses > 1 ? sequence_pulse_propagator(p, spec, e, 2, cfg) : Eigen::MatrixXcd();

  SequenceResult r;
  r.per_pulse.reserve(spec.n_pulses);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(u_odd.rows(), u_odd.cols());
  for (int k = 1; k <= spec.n_pulses; ++k) {
    const Eigen::MatrixXcd& u = (k % 2 == 1) ? u_odd : u_even;
    r.per_pulse.push_back(u);
    total = u * total;
  }
  r.total = std::move(total);
  r.populations_from_1 = populations_from_total(p.kind, r.total);
  return r;
}

double pi_sequence_population(int n_pulses, double lambda) {
  if (n_pulses < 1) throw std::invalid_argument("pi_sequence_population: n_pulses must be at least 1");
  const double c = std::cos(0.5 * n_pulses * lambda * std::acos(-1.0));
  return clamp01(c * c * c * c);
}

ClosedFormParams::ClosedFormParams(const CayleyKlein& ck, int n_pulses) {
  const double ai = ck.ai();
  const double ar = ck.ar();
  const int n = n_pulses / 2;
  theta_big = std::acos(std::clamp(1.0 - 2.0 * ai * ai, -1.0, 1.0));
  vartheta = std::acos(std::clamp(ar, -1.0, 1.0));
  e_factor = dirichlet_ratio(n, theta_big);
  d_factor = dirichlet_ratio(n_pulses, vartheta);
  const double ch = std::cos(0.5 * theta_big);
  f_factor = std::abs(ch) < 1e-7 ? (n % 2 == 0 ? 1.0 : -1.0) * (2 * n + 1)
                                 : std::cos((n + 0.5) * theta_big) / ch;
}

double detuning_sequence_population(const CayleyKlein& ck, int n_pulses, PhasePolicy policy) {
  if (n_pulses < 1) throw std::invalid_argument("detuning_sequence_population: n_pulses >= 1");
  const double ar = ck.ar();
  const double ai = ck.ai();
  const double b2 = std::norm(ck.b);

  if (policy == PhasePolicy::same) {
    const double sin2 = 1.0 - ar * ar;  // sin^2(vartheta)
    double pe;
    if (sin2 < 1e-14) {
      pe = b2 * n_pulses * n_pulses;  // D -> +-N
    } else {
      const double vth = std::acos(std::clamp(ar, -1.0, 1.0));
      const double s = std::sin(n_pulses * vth);
      pe = b2 * s * s / sin2;
    }
    pe = clamp01(pe);
    return n_pulses % 2 == 1 ? pe * pe : (1.0 - pe) * (1.0 - pe);
  }

  const double cos_half2 = 1.0 - ai * ai;  // cos^2(Theta/2)
  const double theta = std::acos(std::clamp(1.0 - 2.0 * ai * ai, -1.0, 1.0));
  const double c = std::cos(0.5 * n_pulses * theta);
  if (n_pulses % 2 == 1) {
    double pe;
    if (cos_half2 < 1e-14)
      pe = b2 * n_pulses * n_pulses;
    else
      pe = b2 * c * c / cos_half2;
    pe = clamp01(pe);
    return pe * pe;
  }
  double pg;
  if (cos_half2 < 1e-14)
    pg = 1.0;
  else
    pg = (b2 * c * c + ar * ar) / cos_half2;
  pg = clamp01(pg);
  return pg * pg;
}

double perturbative_population(const CayleyKlein& ck, int n_pulses, PhasePolicy policy) {
  const double n2 = static_cast<double>(n_pulses) * n_pulses;
  const double ar2 = ck.ar() * ck.ar();
  const double ai2 = ck.ai() * ck.ai();
  double p;
  if (policy == PhasePolicy::alternating)
    p = 1.0 - 2.0 * n2 * ai2;
  else if (n_pulses % 2 == 0)
    p = 1.0 - 2.0 * n2 * ar2;
  else
    p = 1.0 - 2.0 * n2 * ar2 - 2.0 * ai2;
  return clamp01(p);
}

}  // namespace pulseforge
