#pragma once

#include <memory>
#include <vector>

#include "polyflood/analysis.hpp"
#include "polyflood/errors.hpp"
#include "polyflood/solver.hpp"

namespace polyflood {

enum class LemmaMode { off, warn, strict };

struct RunOptions {
  /// Times at which to store the state. Steps are shortened to land on them.
  std::vector<double> snapshot_times;
  LemmaMode lemma_mode = LemmaMode::off;
  bool record_monitor = true;
};

struct RunResult {
  SchemeState state;
  RunReport report;
};

/// A failed step inside run(); carries everything computed up to it.
class RunAborted : public StepError {
public:
  RunAborted(const std::string& what, RunResult partial)
      : StepError(what), partial_(std::make_shared<RunResult>(std::move(partial))) {}

  const RunResult& partial() const { return *partial_; }

private:
  std::shared_ptr<const RunResult> partial_;
};

/// Marches from initial.time to t_end. The last step is shortened to land on
/// t_end exactly.
RunResult run(const SchemeState& initial, const Physics& physics, const Grid1D& grid,
              const FluxScheme& scheme, const BoundarySpec& boundary, double t_end,
              const DtPolicy& dt_policy, const RunOptions& options = {});

}  // namespace polyflood
