#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyflood/solver.hpp"

namespace polyflood {

struct MonitorSample {
  double t = 0.0;
  double mass_s = 0.0;   // sum s_i h
  double mass_sc = 0.0;  // sum (c_i s_i + a(c_i)) h
  double linf_c = 0.0;
  double tv_c = 0.0;
  double tv_s = 0.0;
};

struct Snapshot {
  double time = 0.0;
  SchemeState state;
};

struct RunReport {
  std::vector<MonitorSample> monitor;
  std::vector<Snapshot> snapshots;
  Diagnostics diagnostics;
  long lemma_violations = 0;
  std::vector<std::string> lemma_messages;  // first few only
};

using Sampler = std::function<State(double x)>;

struct L1Error {
  double s = 0.0;
  double c = 0.0;
};

/// sum_i |q_i - q_ref(x_i)| h with the reference taken at cell centres.
L1Error l1_error(const SchemeState& state, const Sampler& reference, const Grid1D& grid);

/// sum_i |q_i - r_i| h between two states on the same grid.
L1Error l1_distance(const SchemeState& a, const SchemeState& b, const Grid1D& grid);

/// log2(e_coarse / e_fine); nullopt when either error is not positive.
std::optional<double> convergence_rate(double e_coarse, double e_fine);

double total_variation(const std::vector<double>& values);

struct InterfaceTrace {
  double s_left = 0.0;
  double s_right = 0.0;
  double c_left = 0.0;
  double c_right = 0.0;
};

/// Values of the two cells adjoining face interface_index.
InterfaceTrace interface_trace(const SchemeState& state, const Grid1D& grid, int interface_index);

/// Values of the cells whose centres lie nearest to the interface face minus
/// and plus `distance`. A fixed distance looks past numerical layers a few
/// cells wide, which shrink with h while the one-sided limits do not.
InterfaceTrace interface_trace(const SchemeState& state, const Grid1D& grid, int interface_index,
                               double distance);

MonitorSample monitor_sample(const SchemeState& state, const Physics& physics, const Grid1D& grid);

/// Block average of a fine state onto a grid whose cell count divides it.
SchemeState restrict_to(const SchemeState& fine, int coarse_cells);

/// Per-step checks of the discrete maximum principle and TV estimates of the
/// DFLU scheme, on arrays extended by the left ghost value: s stays in its
/// domain, max|c| and TV(c) do not grow, sum|c_new - c| <= TV(c), and each new
/// c_i lies between c_{i-1} and c_i.
struct LemmaCheck {
  bool s_bounds = true;
  bool linf_c = true;
  bool tv_c = true;
  bool time_difference = true;
  bool convex_combination = true;
  std::string first_failure;

  bool ok() const { return s_bounds && linf_c && tv_c && time_difference && convex_combination; }
};

LemmaCheck check_lemmas(const SchemeState& before, const SchemeState& after, const Physics& physics,
                        const Grid1D& grid, const BoundarySpec& boundary, double tol = 1e-12);

struct ConvergenceRow {
  double h = 0.0;
  double err_s = 0.0;
  std::optional<double> rate_s;
  double err_c = 0.0;
  std::optional<double> rate_c;
};

struct ConvergenceTable {
  std::string label;
  std::vector<ConvergenceRow> rows;

  /// Appends a row; rates are computed against the previous row.
  void add(double h, L1Error error);

  /// h,err_s,rate_s,err_c,rate_c (empty rate fields on the first row).
  std::string to_csv() const;
  /// Aligned text with h written as 1/N and rates to 4 decimals.
  std::string to_text() const;
};

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace polyflood
