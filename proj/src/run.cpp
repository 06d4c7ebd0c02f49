#include "polyflood/run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polyflood {

RunResult run(const SchemeState& initial, const Physics& physics, const Grid1D& grid,
              const FluxScheme& scheme, const BoundarySpec& boundary, double t_end,
              const DtPolicy& dt_policy, const RunOptions& options) {
  if (t_end < initial.time) throw ConfigError("t_end lies before the initial time");
  const double dt_nominal =
      dt_policy.fixed_dt ? *dt_policy.fixed_dt
                         : cfl_max_dt(physics, grid.h(), dt_policy.safety, dt_policy.dt_max);
  if (!(dt_nominal > 0.0)) throw ConfigError("time step must be positive");

  std::vector<double> snaps;
  for (double t : options.snapshot_times) {
    if (t >= initial.time && t <= t_end) snaps.push_back(t);
  }
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

  RunResult result;
  result.state = initial;
  RunReport& report = result.report;
  std::size_t next_snap = 0;
  auto take_snapshots = [&]() {
    while (next_snap < snaps.size() && snaps[next_snap] <= result.state.time) {
      report.snapshots.push_back(Snapshot{snaps[next_snap], result.state});
      ++next_snap;
    }
  };
  if (options.record_monitor) report.monitor.push_back(monitor_sample(result.state, physics, grid));
  take_snapshots();

  StepTrace trace;
  while (result.state.time < t_end) {
    const double t = result.state.time;
    double target = t_end;
    if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
    double dt = dt_nominal;
    bool lands = false;
    if (t + dt >= target - 1e-9 * dt_nominal) {
      dt = target - t;
      lands = true;
    }
    SchemeState next;
    try {
      next = step(result.state, physics, grid, scheme, boundary, dt, &trace);
    } catch (const StepError& e) {
      throw RunAborted(e.what(), result);
    }
    if (lands) next.time = target;
    report.diagnostics.merge(trace.diagnostics);

    if (options.lemma_mode != LemmaMode::off) {
      const LemmaCheck check = check_lemmas(result.state, next, physics, grid, boundary);
      if (!check.ok()) {
        ++report.lemma_violations;
        std::ostringstream os;
        os << "t=" << next.time << ": " << check.first_failure;
        if (report.lemma_messages.size() < 16) report.lemma_messages.push_back(os.str());
        if (options.lemma_mode == LemmaMode::strict) {
          result.state = std::move(next);
          throw RunAborted("discrete estimate violated at " + os.str(), result);
        }
      }
    }
    result.state = std::move(next);
    if (options.record_monitor) report.monitor.push_back(monitor_sample(result.state, physics, grid));
    take_snapshots();
  }
  return result;
}

}  // namespace polyflood
