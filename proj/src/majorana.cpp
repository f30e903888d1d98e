#include "pulseforge/majorana.hpp"

#include <cmath>

namespace pulseforge {

ReducedPulse reduce(const Pulse& p) {
  if (p.kind != PulseKind::case1)
    throw std::invalid_argument("reduce: only case1 pulses have the SU(2) reduction");
  return {p.t0, p.tf, p.omega_p, p.delta};
}

Mat3 lift(const CayleyKlein& ck, double tol) {
  if (ck.norm_defect() > tol)
    throw std::invalid_argument("lift: Cayley-Klein pair is not normalized");
  const complexd a = ck.a;
  const complexd b = ck.b;
  const complexd ac = std::conj(a);
  const complexd bc = std::conj(b);
  const double r2 = std::sqrt(2.0);
  // Spin-1 representation of [[a, b], [-b*, a*]]. The (3,1) entry is
  // +conj(b)^2: anything else breaks unitarity and the group product.
  Mat3 u;
  u << a * a, r2 * a * b, b * b,
      -r2 * a * bc, std::norm(a) - std::norm(b), r2 * ac * b,
      bc * bc, -r2 * ac * bc, ac * ac;
  return u;
}

std::array<double, 3> populations_from_ck(const CayleyKlein& ck) {
  const double pg = std::norm(ck.a);
  const double pe = std::norm(ck.b);
  return {pg * pg, 2.0 * pg * pe, pe * pe};
}

}  // namespace pulseforge
