#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyflood/analysis.hpp"
#include "polyflood/fluxes.hpp"
#include "polyflood/presets.hpp"
#include "polyflood/run.hpp"
#include "polyflood/solver.hpp"

namespace polyflood {

/// A Riemann-type experiment: one model (or an interface pair), piecewise
/// constant data jumping at `jump`, a uniform grid and a time step rule.
struct ExperimentConfig {
  std::string name = "custom";

  // [model]
  std::string model = "quadratic-demo";  // preset name or "power-law"
  PowerLawParams power_law;              // used when model == "power-law"
  double interface_position = 0.0;       // two-phase-discontinuous only

  // [initial]
  State left{2.5, 0.5};
  State right{1.0, 0.0};
  double jump = 0.5;

  // [grid]
  double x_lo = 0.0;
  double x_hi = 2.0;
  int cells = 200;
  BoundarySide::Kind left_boundary = BoundarySide::Kind::dirichlet;
  BoundarySide::Kind right_boundary = BoundarySide::Kind::dirichlet;
  std::vector<int> levels{50, 100, 200, 400, 800};  // 1/h per unit length
  int reference_cells = 8000;

  // [time]  Exactly one of dt and lambda may be set; neither means the CFL step.
  double t_end = 0.5;
  std::optional<double> dt;
  std::optional<double> lambda;
  double cfl_safety = 1.0;
  std::vector<double> snapshots;

  // [scheme]
  std::vector<FluxTag> fluxes{FluxTag::dflu};

  // [output]
  std::string out_dir = "out";
  int samples = 801;
};

std::vector<std::string> experiment_preset_names();
ExperimentConfig experiment_preset(const std::string& name);

/// Reads an INI file over `base`: keys that are absent keep base values.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
/// Full INI text; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const ExperimentConfig& config);

/// Throws ConfigError on inconsistent settings, including lambda M > 1 with
/// M taken over the concentration range of the data.
void validate(const ExperimentConfig& config);

Physics make_physics(const ExperimentConfig& config);
Grid1D make_grid(const ExperimentConfig& config, const Physics& physics, int cells);
SchemeState initial_state(const ExperimentConfig& config, const Grid1D& grid);
BoundarySpec boundary_spec(const ExperimentConfig& config);

/// dt / h implied by the configuration on a grid of `cells` cells: lambda
/// itself, dt over the configured grid's h, or the CFL ratio.
double lambda_ratio(const ExperimentConfig& config, const Physics& physics);

/// Exact self-similar solution at time t, centred on the jump.
Sampler exact_sampler(const ExperimentConfig& config, double t);

RunResult run_experiment(const ExperimentConfig& config, const Physics& physics, FluxTag flux,
                         int cells, const RunOptions& options = {});

/// Errors against the exact solution at t_end for every level in
/// config.levels (cells = level * domain length).
ConvergenceTable convergence_study(const ExperimentConfig& config, FluxTag flux,
                                   Diagnostics* diagnostics = nullptr);

struct CompareRow {
  FluxTag flux = FluxTag::dflu;
  L1Error distance;
  SchemeState state;
  std::optional<InterfaceTrace> interface;
};

struct Comparison {
  double time = 0.0;
  SchemeState reference;  // block-averaged onto config.cells
  std::vector<CompareRow> rows;
};

/// Runs every configured flux on config.cells and a DFLU reference on
/// config.reference_cells, all to time t.
Comparison compare_schemes(const ExperimentConfig& config, double t);

/// x,s,c rows with shortest round-trip numbers.
std::string state_csv(const SchemeState& state, const Grid1D& grid);
std::string monitor_csv(const std::vector<MonitorSample>& monitor);

}  // namespace polyflood
