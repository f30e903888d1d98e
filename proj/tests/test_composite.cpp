#include <doctest.h>

#include <cmath>
#include <random>

#include "pulseforge/composite.hpp"
#include "pulseforge/pulses.hpp"

using namespace pulseforge;

namespace {
const double kPi = std::acos(-1.0);
const double kSqrt2Pi = std::sqrt(2.0) * kPi;

Pulse untagged(Pulse p) {
  p.constant.reset();
  return p;
}

double max_diff_from_identity(const Eigen::MatrixXcd& u) {
  return (u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("alternating-phase pi sequences") {
  const IntegratorConfig cfg{};
  const Pulse p = make_case1(Case1Kind::pi);
  for (const double lambda : {0.0, 0.17, -0.42}) {
    const auto even = compose(p, {4, PhasePolicy::alternating, OrderPolicy::fixed},
                              ErrorModel::rabi_global(lambda), cfg);
    CHECK(max_diff_from_identity(even.total) <= 1e-12);
    CHECK(even.populations_from_1[0] == doctest::Approx(1.0).epsilon(1e-12));

    const auto odd = compose(p, {5, PhasePolicy::alternating, OrderPolicy::fixed},
                             ErrorModel::rabi_global(lambda), cfg);
    const auto single = compose(p, {1, PhasePolicy::same, OrderPolicy::fixed},
                                ErrorModel::rabi_global(lambda), cfg);
    CHECK((odd.total - single.total).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("phase-flip identity holds for the numeric path too") {
  const IntegratorConfig cfg{};
  for (const Case1Kind kind : {Case1Kind::chirped_gaussian, Case1Kind::sta}) {
    const auto r = compose(make_case1(kind, 0.5), {2, PhasePolicy::alternating, OrderPolicy::fixed},
                           ErrorModel::rabi_global(0.37), cfg);
    CHECK(max_diff_from_identity(r.total) <= 1e-7);
  }
}

TEST_CASE("cds pairs with alternating phase and fixed error compose to identity") {
  const IntegratorConfig cfg{};
  const Pulse p = make_case2(Case2Kind::cds);
  for (const auto arm : {ArmAssignment::fixed_p, ArmAssignment::fixed_s}) {
    for (const double eta : {-0.5, -0.2, 0.31, 0.5}) {
      const auto r = compose(p, {2, PhasePolicy::alternating, OrderPolicy::fixed},
                             ErrorModel::rabi_arm(eta, arm), cfg);
      CHECK(max_diff_from_identity(r.total) <= 1e-12);
    }
  }
}

TEST_CASE("sequence total is the ordered product of the per-pulse propagators") {
  const IntegratorConfig cfg{};
  const auto r = compose(make_case2(Case2Kind::stirap_sin),
                         {3, PhasePolicy::alternating, OrderPolicy::alternate_time_reversal},
                         ErrorModel::rabi_arm(0.2, ArmAssignment::alternating_start_s), cfg);
  REQUIRE(r.per_pulse.size() == 3);
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(3, 3);
  for (const auto& u : r.per_pulse) prod = u * prod;
  CHECK((prod - r.total).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("compose argument guards") {
  CHECK_THROWS_AS(compose(make_case1(Case1Kind::pi), {0, PhasePolicy::same, OrderPolicy::fixed},
                          std::nullopt, IntegratorConfig{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(compose(make_case1(Case1Kind::pi),
                          {2, PhasePolicy::same, OrderPolicy::alternate_time_reversal}, std::nullopt,
                          IntegratorConfig{}),
                  std::invalid_argument);
}

TEST_CASE("pi sequence closed form") {
  CHECK(pi_sequence_population(5, 0.0) == doctest::Approx(1.0));
  CHECK(pi_sequence_population(5, 0.2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(pi_sequence_population(5, 0.0728) - 0.5) <= 2e-3);
  CHECK(std::abs(pi_sequence_population(5, -0.0728) - 0.5) <= 2e-3);
  CHECK_THROWS_AS(pi_sequence_population(0, 0.1), std::invalid_argument);
}

TEST_CASE("pi sequence closed form matches numeric composition") {
  const IntegratorConfig cfg{};
  const Pulse p = untagged(make_case1(Case1Kind::pi));
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> lam(-0.5, 0.5);
  std::uniform_int_distribution<int> n_dist(1, 9);
  for (int i = 0; i < 20; ++i) {
    const double lambda = lam(rng);
    const int n = n_dist(rng);
    const auto r = compose(p, {n, PhasePolicy::same, OrderPolicy::fixed},
                           ErrorModel::rabi_global(lambda), cfg);
    const double want = pi_sequence_population(n, lambda);
    const double got = n % 2 == 1 ? r.populations_from_1[2] : r.populations_from_1[0];
    CHECK(std::abs(got - want) <= 1e-8);
  }
}

TEST_CASE("closed-form sequence parameters") {
  const ClosedFormParams ideal{{complexd(0, 0), complexd(0, -1)}, 6};
  CHECK(ideal.theta_big == doctest::Approx(0.0));
  CHECK(ideal.e_factor == doctest::Approx(3.0));  // E -> n at Theta = 0
  CHECK(ideal.vartheta == doctest::Approx(kPi / 2));

  const CayleyKlein ck = propagate_constant_two_level(kSqrt2Pi, 0.4, 1.0);
  const ClosedFormParams p{ck, 7};
  CHECK(p.theta_big == doctest::Approx(std::acos(1.0 - 2.0 * ck.ai() * ck.ai())).epsilon(1e-12));
  CHECK(p.vartheta == doctest::Approx(std::acos(ck.ar())).epsilon(1e-12));
  CHECK(p.e_factor == doctest::Approx(std::sin(3 * p.theta_big) / std::sin(p.theta_big)));
  CHECK(p.d_factor == doctest::Approx(std::sin(7 * p.vartheta) / std::sin(p.vartheta)));
  CHECK(p.f_factor ==
        doctest::Approx(std::cos(3.5 * p.theta_big) / std::cos(0.5 * p.theta_big)));
}

TEST_CASE("ideal pi pulse closed forms") {
  // a = 0 means vartheta = pi/2, so every odd same-phase sequence transfers fully
  const CayleyKlein ideal{complexd(0, 0), complexd(0, -1)};
  for (const int n : {1, 3, 7, 9})
    CHECK(detuning_sequence_population(ideal, n, PhasePolicy::same) == doctest::Approx(1.0));
  for (const int n : {2, 4, 8})
    CHECK(detuning_sequence_population(ideal, n, PhasePolicy::alternating) == doctest::Approx(1.0));
}

TEST_CASE("detuning closed forms match numeric composition for the flat pi pulse") {
  const IntegratorConfig cfg{};
  const Pulse p = untagged(make_case1(Case1Kind::flat_pi));
  const CayleyKlein ck = propagate_constant_two_level(kSqrt2Pi, 0.3, 1.0);
  for (const auto policy : {PhasePolicy::alternating, PhasePolicy::same}) {
    const auto r = compose(p, {5, policy, OrderPolicy::fixed}, ErrorModel::detuning_static(0.3), cfg);
    const double want = detuning_sequence_population(ck, 5, policy);
    CHECK(std::abs(r.populations_from_1[2] - want) <= 1e-7);
  }
}

TEST_CASE("detuning closed forms match numeric composition over random settings") {
  const IntegratorConfig cfg{};
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> det(-1.0, 1.0);
  std::uniform_int_distribution<int> n_dist(1, 9);
  std::bernoulli_distribution which(0.5);

  const Pulse flat = untagged(make_case1(Case1Kind::flat_pi));
  for (int i = 0; i < 24; ++i) {
    const double delta = det(rng);
    const int n = n_dist(rng);
    const auto policy = which(rng) ? PhasePolicy::alternating : PhasePolicy::same;
    const CayleyKlein ck = propagate_constant_two_level(kSqrt2Pi, delta, 1.0);
    const auto r = compose(flat, {n, policy, OrderPolicy::fixed},
                           ErrorModel::detuning_static(delta), cfg);
    const double got = n % 2 == 1 ? r.populations_from_1[2] : r.populations_from_1[0];
    CHECK(std::abs(got - detuning_sequence_population(ck, n, policy)) <= 1e-6);
  }

  const Pulse gauss = make_case1(Case1Kind::resonant_gaussian);
  for (int i = 0; i < 6; ++i) {
    const double delta = det(rng);
    const int n = n_dist(rng);
    const auto policy = which(rng) ? PhasePolicy::alternating : PhasePolicy::same;
    const CayleyKlein ck = cayley_klein_of(propagate_case1_numeric(
        apply_error(gauss, ErrorModel::detuning_static(delta), 1), cfg));
    const auto r = compose(gauss, {n, policy, OrderPolicy::fixed},
                           ErrorModel::detuning_static(delta), cfg);
    const double got = n % 2 == 1 ? r.populations_from_1[2] : r.populations_from_1[0];
    CHECK(std::abs(got - detuning_sequence_population(ck, n, policy)) <= 1e-6);
  }
}

TEST_CASE("perturbative expansions sit close to the exact closed forms") {
  const CayleyKlein ck = propagate_constant_two_level(kSqrt2Pi, 0.05, 1.0);
  const double alt = perturbative_population(ck, 5, PhasePolicy::alternating);
  CHECK(alt == doctest::Approx(1.0 - 2.0 * 25.0 * std::pow(0.05 / kPi, 2)).epsilon(1e-3));
  CHECK(std::abs(alt - detuning_sequence_population(ck, 5, PhasePolicy::alternating)) <= 2e-3);

  const double same = perturbative_population(ck, 5, PhasePolicy::same);
  CHECK(std::abs(same - detuning_sequence_population(ck, 5, PhasePolicy::same)) <= 1e-4);

  CHECK(perturbative_population({complexd(0, 0), complexd(0, 1)}, 9, PhasePolicy::same) == 1.0);
  CHECK(perturbative_population({complexd(0, 0), complexd(0, 1)}, 6, PhasePolicy::alternating) ==
        1.0);
}

TEST_CASE("stirap return identity for alternating phase and order at zero error") {
  const IntegratorConfig cfg{};
  for (const Case2Kind kind : {Case2Kind::stirap_gaussian, Case2Kind::stirap_sech,
                               Case2Kind::stirap_sin, Case2Kind::stirap_sin2}) {
    for (const int n : {2, 4}) {
      const auto r = compose(make_case2(kind),
                             {n, PhasePolicy::alternating, OrderPolicy::alternate_time_reversal},
                             ErrorModel::rabi_arm(0.0, ArmAssignment::alternating_start_s), cfg);
      CHECK(r.populations_from_1[0] == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}
