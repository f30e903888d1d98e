#pragma once

#include <string>

#include "pulseforge/composite.hpp"

// Error-parameter sweeps, FWHM extraction, the q_s sensitivity
// coefficient, and reproduction of the three FWHM summary tables.

namespace pulseforge {

struct GridSpec {
  double min = -0.5;
  double max = 0.5;
  int points = 2001;

  static GridSpec rabi_default() { return {-0.5, 0.5, 2001}; }
  static GridSpec detuning_default() { return {-3.0, 3.0, 3001}; }

  double value(int i) const;
  int center_index() const { return points / 2; }
  // Symmetric about 0 with an odd point count, so 0 is on-grid.
  void validate() const;
};

enum class Observable { p1, p3 };

struct SweepConfig {
  Pulse pulse;
  SequenceSpec sequence;
  ErrorModel error;  // channel and assignment; magnitude comes from the grid
  GridSpec grid;
  Observable observable = Observable::p3;
  IntegratorConfig integrator;
};

struct SweepResult {
  std::vector<double> errors;
  std::vector<double> populations;
  double peak = 0.0;  // population at error 0
};

// Populations over the error grid, evaluated in parallel. Each grid point
// composes the sequence from at most two single-pulse propagators.
// An integration failure anywhere aborts with the offending error value.
SweepResult sweep(const SweepConfig& cfg);

struct FwhmResult {
  enum class Status { ok, absent, degenerate };
  Status status = Status::absent;
  double width = 0.0;
  bool ok() const { return status == Status::ok; }
};

// Distance between the innermost crossings of P = peak/2 on each side of
// zero error, each located by an outward grid scan followed by bisection
// of the grid interpolant to 1e-6. Half maximum is relative to the value
// at zero error. Absent when a side never crosses inside the grid;
// degenerate when the peak ends up below 0.5 (the sequence failed at zero
// error).
FwhmResult fwhm(const SweepResult& r);

// q_s = -(1/2) d^2 P / d lambda^2 at lambda = 0, with P the two-level
// transition probability at the end of the (case1) pulse. Central finite
// difference with a Richardson step check at h/2; an unstable h is halved
// and retried up to 4 times.
double q_sensitivity(const Pulse& p, double h = 1e-3, const IntegratorConfig& cfg = {});

struct TableCell {
  std::string scheme;
  int n_pulses = 0;
  double computed = 0.0;  // NaN when degenerate
  double paper = 0.0;
  bool degenerate = false;
  double abs_dev() const;
  double rel_dev() const;
};

struct TableResult {
  int id = 0;
  std::vector<TableCell> cells;
  std::string note;  // reports choices the tables depend on (windows)
};

// Per-column pass tolerance for the reproduced tables; relative when
// `relative`, absolute otherwise.
struct ColumnTolerance {
  bool relative = true;
  double value = 0.10;
};

// Recomputes every cell of table 1, 2 or 3 via sweep + fwhm with the
// scheme/policy/N of that row and column. Degenerate cells are marked,
// never dropped.
TableResult reproduce_table(int id, const IntegratorConfig& cfg = {2000, 1e-8});

ColumnTolerance table_tolerance(int id, const std::string& scheme);

}  // namespace pulseforge
