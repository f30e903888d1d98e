#include "pulseforge/analysis.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "pulseforge/pulses.hpp"

namespace pulseforge {

namespace {

void parallel_for(int n, const std::function<void(int)>& fn) {
  const unsigned workers =
      std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1 || n < 16) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double observe(const std::array<double, 3>& pops, Observable obs) {
  return clamp01(obs == Observable::p1 ? pops[0] : pops[2]);
}

// Innermost crossing of `half` on one side of the center, as an error value.
std::optional<double> half_crossing(const SweepResult& r, double half, int dir) {
  const int n = static_cast<int>(r.errors.size());
  const int center = n / 2;
  for (int i = center + dir; i >= 0 && i < n; i += dir) {
    if (r.populations[i] < half) {
      double x_in = r.errors[i - dir], x_out = r.errors[i];
      const double p_in = r.populations[i - dir], p_out = r.populations[i];
      // Bisect the linear interpolant between the bracketing grid points.
      const auto interp = [&](double x) {
        return p_in + (p_out - p_in) * (x - x_in) / (x_out - x_in);
      };
      double lo = x_in, hi = x_out;
      while (std::abs(hi - lo) > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (interp(mid) >= half ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  return std::nullopt;
}

}  // namespace

double GridSpec::value(int i) const {
  if (points == 1) return min;
  return min + (max - min) * i / (points - 1);
}

void GridSpec::validate() const {
  if (points < 1 || points % 2 == 0)
    throw std::invalid_argument("GridSpec: point count must be odd and positive");
  if (std::abs(min + max) > 1e-12)
    throw std::invalid_argument("GridSpec: grid must be symmetric about 0");
  if (points == 1 && min != 0.0)
    throw std::invalid_argument("GridSpec: a single-point grid must sit at 0");
  if (points > 1 && !(max > min)) throw std::invalid_argument("GridSpec: max must exceed min");
}

SweepResult sweep(const SweepConfig& cfg) {
  cfg.grid.validate();
  SweepResult r;
  r.errors.resize(cfg.grid.points);
  r.populations.resize(cfg.grid.points);

  parallel_for(cfg.grid.points, [&](int i) {
    const double x = cfg.grid.value(i);
    r.errors[i] = x;
    try {
      const auto res = compose(cfg.pulse, cfg.sequence, cfg.error.with_magnitude(x), cfg.integrator);
      r.populations[i] = observe(res.populations_from_1, cfg.observable);
    } catch (const std::exception& ex) {
      throw std::runtime_error("sweep: failure at error value " + std::to_string(x) + ": " +
                               ex.what());
    }
  });

  r.peak = r.populations[cfg.grid.center_index()];
  return r;
}

FwhmResult fwhm(const SweepResult& r) {
  if (r.errors.empty() || r.errors.size() != r.populations.size())
    throw std::invalid_argument("fwhm: malformed sweep result");
  const int center = static_cast<int>(r.errors.size()) / 2;
  const double peak = r.populations[center];
  if (peak < 0.5) return {FwhmResult::Status::degenerate, 0.0};
  const double half = 0.5 * peak;
  const auto right = half_crossing(r, half, +1);
  const auto left = half_crossing(r, half, -1);
  if (!right || !left) return {FwhmResult::Status::absent, 0.0};
  return {FwhmResult::Status::ok, *right - *left};
}

double q_sensitivity(const Pulse& p, double h, const IntegratorConfig& cfg) {
  if (p.kind != PulseKind::case1)
    throw std::invalid_argument("q_sensitivity: case1 pulse required");
  const auto transfer = [&](double lambda) {
    const Pulse q = apply_error(p, ErrorModel::rabi_global(lambda), 1);
    const Mat2 u = propagate_case1_numeric(q, cfg);
    return std::norm(u(1, 0));
  };
  const double p0 = transfer(0.0);
  const auto second_diff = [&](double step) {
    return -(transfer(step) - 2.0 * p0 + transfer(-step)) / (2.0 * step * step);
  };
  for (int attempt = 0; attempt <= 4; ++attempt) {
    const double q_h = second_diff(h);
    const double q_h2 = second_diff(0.5 * h);
    if (std::abs(q_h - q_h2) <= std::max(0.01 * std::abs(q_h2), 1e-4)) return q_h2;
    h *= 0.5;
  }
  throw std::runtime_error("q_sensitivity: finite-difference step did not stabilize");
}

double TableCell::abs_dev() const { return std::abs(computed - paper); }
double TableCell::rel_dev() const { return (computed - paper) / paper; }

namespace {

// Half-width the resonant-Gaussian table columns integrate over. The
// detuning tables depend on it through the inter-pulse detuning phase;
// [-2T, 2T] reproduces the reference values, wider windows do not.
constexpr double kGaussianTableHalfWidth = 2.0;

struct ColumnSpec {
  std::string name;
  Pulse pulse;
  PhasePolicy phase;
  OrderPolicy order;
  ErrorModel error;
  std::array<double, 3> paper;
};

// Populations for all requested pulse counts in one pass over the grid:
// the two parity propagators are built once per grid point and the
// cumulative product is sampled at each N.
std::vector<SweepResult> column_profiles(const ColumnSpec& col, const std::vector<int>& ns,
                                         const GridSpec& grid, Observable obs,
                                         const IntegratorConfig& cfg) {
  std::vector<SweepResult> out(ns.size());
  for (auto& r : out) {
    r.errors.resize(grid.points);
    r.populations.resize(grid.points);
  }
  const int max_n = ns.back();
  parallel_for(grid.points, [&](int i) {
    const double x = grid.value(i);
    const SequenceSpec spec{max_n, col.phase, col.order};
    const auto e = col.error.with_magnitude(x);
    const Eigen::MatrixXcd u_odd = sequence_pulse_propagator(col.pulse, spec, e, 1, cfg);
    const Eigen::MatrixXcd u_even =
        max_n > 1 ? sequence_pulse_propagator(col.pulse, spec, e, 2, cfg) : Eigen::MatrixXcd();
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(u_odd.rows(), u_odd.cols());
    size_t slot = 0;
    for (int k = 1; k <= max_n; ++k) {
      total = ((k % 2 == 1) ? u_odd : u_even) * total;
      if (slot < ns.size() && k == ns[slot]) {
        out[slot].errors[i] = x;
        out[slot].populations[i] = observe(populations_from_total(col.pulse.kind, total), obs);
        ++slot;
      }
    }
  });
  for (auto& r : out) r.peak = r.populations[grid.center_index()];
  return out;
}

TableResult run_table(int id, const std::vector<ColumnSpec>& cols, const std::vector<int>& ns,
                      const GridSpec& grid, Observable obs, const IntegratorConfig& cfg,
                      std::string note) {
  TableResult t;
  t.id = id;
  t.note = std::move(note);
  for (const auto& col : cols) {
    const auto profiles = column_profiles(col, ns, grid, obs, cfg);
    for (size_t j = 0; j < ns.size(); ++j) {
      TableCell cell;
      cell.scheme = col.name;
      cell.n_pulses = ns[j];
      cell.paper = col.paper[j];
      const FwhmResult f = fwhm(profiles[j]);
      if (f.ok()) {
        cell.computed = f.width;
      } else {
        cell.computed = std::numeric_limits<double>::quiet_NaN();
        cell.degenerate = true;
      }
      t.cells.push_back(std::move(cell));
    }
  }
  return t;
}

}  // namespace

TableResult reproduce_table(int id, const IntegratorConfig& cfg) {
  const auto arm_alt = ArmAssignment::alternating_start_s;
  switch (id) {
    case 1: {
      const std::vector<ColumnSpec> cols = {
          {"pi-S", make_case1(Case1Kind::pi), PhasePolicy::same, OrderPolicy::fixed,
           ErrorModel::rabi_global(0.0), {0.146, 0.104, 0.082}},
          {"Gaussian-S", make_case1(Case1Kind::chirped_gaussian), PhasePolicy::same,
           OrderPolicy::fixed, ErrorModel::rabi_global(0.0), {0.153, 0.109, 0.084}},
          {"AE-S", make_case1(Case1Kind::allen_eberly), PhasePolicy::same, OrderPolicy::fixed,
           ErrorModel::rabi_global(0.0), {0.233, 0.162, 0.123}},
          {"STA-S", make_case1(Case1Kind::sta, 0.5), PhasePolicy::same, OrderPolicy::fixed,
           ErrorModel::rabi_global(0.0), {0.165, 0.117, 0.091}},
      };
      return run_table(1, cols, {5, 7, 9}, GridSpec::rabi_default(), Observable::p3, cfg, "");
    }
    case 2: {
      const Pulse gauss =
          make_case1_windowed(Case1Kind::resonant_gaussian, kGaussianTableHalfWidth);
      const std::vector<ColumnSpec> cols = {
          {"Flat pi-A", make_case1(Case1Kind::flat_pi), PhasePolicy::alternating,
           OrderPolicy::fixed, ErrorModel::detuning_static(0.0), {0.72, 0.52, 0.40}},
          {"Flat pi-S", make_case1(Case1Kind::flat_pi), PhasePolicy::same, OrderPolicy::fixed,
           ErrorModel::detuning_static(0.0), {2.21, 1.91, 1.71}},
          {"Gaussian-A", gauss, PhasePolicy::alternating, OrderPolicy::fixed,
           ErrorModel::detuning_static(0.0), {0.32, 0.22, 0.17}},
          {"Gaussian-S", gauss, PhasePolicy::same, OrderPolicy::fixed,
           ErrorModel::detuning_static(0.0), {0.68, 0.58, 0.52}},
      };
      return run_table(2, cols, {5, 7, 9}, GridSpec::detuning_default(), Observable::p3, cfg,
                       "resonant Gaussian columns use the window [-2T, 2T]");
    }
    case 3: {
      const std::vector<ColumnSpec> cols = {
          {"CDS-SF", make_case2(Case2Kind::cds), PhasePolicy::same, OrderPolicy::fixed,
           ErrorModel::rabi_arm(0.0, ArmAssignment::fixed_s), {0.369, 0.225, 0.184}},
          {"CDS-AA", make_case2(Case2Kind::cds), PhasePolicy::alternating, OrderPolicy::fixed,
           ErrorModel::rabi_arm(0.0, arm_alt), {0.406, 0.264, 0.198}},
          {"CDS-SA", make_case2(Case2Kind::cds), PhasePolicy::same, OrderPolicy::fixed,
           ErrorModel::rabi_arm(0.0, arm_alt), {0.267, 0.178, 0.184}},
          {"Gaussian-AA", make_case2(Case2Kind::stirap_gaussian), PhasePolicy::alternating,
           OrderPolicy::alternate_time_reversal, ErrorModel::rabi_arm(0.0, arm_alt),
           {0.206, 0.137, 0.103}},
          {"sech-AA", make_case2(Case2Kind::stirap_sech), PhasePolicy::alternating,
           OrderPolicy::alternate_time_reversal, ErrorModel::rabi_arm(0.0, arm_alt),
           {0.120, 0.080, 0.060}},
          {"sin-AA", make_case2(Case2Kind::stirap_sin), PhasePolicy::alternating,
           OrderPolicy::alternate_time_reversal, ErrorModel::rabi_arm(0.0, arm_alt),
           {0.561, 0.375, 0.282}},
          {"sin2-AA", make_case2(Case2Kind::stirap_sin2), PhasePolicy::alternating,
           OrderPolicy::alternate_time_reversal, ErrorModel::rabi_arm(0.0, arm_alt),
           {0.720, 0.482, 0.362}},
      };
      return run_table(3, cols, {4, 6, 8}, GridSpec::rabi_default(), Observable::p1, cfg, "");
    }
    default:
      throw std::invalid_argument("reproduce_table: id must be 1, 2 or 3");
  }
}

ColumnTolerance table_tolerance(int id, const std::string& scheme) {
  if (id == 1) {
    if (scheme == "pi-S") return {false, 0.002};
    return {true, 0.10};
  }
  if (id == 2) {
    if (scheme == "Flat pi-A" || scheme == "Flat pi-S") return {false, 0.02};
    if (scheme == "Gaussian-S") return {true, 0.15};
    return {true, 0.10};
  }
  if (id == 3) {
    if (scheme.rfind("CDS", 0) == 0) return {false, 0.01};
    return {true, 0.10};
  }
  throw std::invalid_argument("table_tolerance: id must be 1, 2 or 3");
}

}  // namespace pulseforge
