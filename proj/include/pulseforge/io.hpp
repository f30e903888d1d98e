#pragma once

#include <string>

#include "pulseforge/analysis.hpp"

// File emission for the CLI: CSV data, minimal SVG line plots, and JSON
// run manifests. All numeric formatting is locale independent (dot
// decimal separator, LF line endings) and deterministic.

namespace pulseforge::io {

// Shortest decimal representation that round-trips the double.
std::string format_double(double x);

// Header "error,population" plus one full-precision row per grid point.
void write_sweep_csv(const std::string& path, const SweepResult& r);

// Header "scheme,N,computed,paper,abs_dev,rel_dev"; degenerate cells
// carry nan in the numeric columns.
void write_table_csv(const std::string& path, const TableResult& t);

// Static SVG 1.1 line plot of a sweep. Derived from the CSV data, never
// authoritative.
void write_sweep_svg(const std::string& path, const SweepResult& r, const std::string& title,
                     const std::string& x_label, const std::string& y_label);

// Serialized JSON text (already composed by the caller) plus a trailing
// newline.
void write_text(const std::string& path, const std::string& body);

}  // namespace pulseforge::io
