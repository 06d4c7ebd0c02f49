#pragma once

#include <array>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "polyflood/fluxes.hpp"
#include "polyflood/model.hpp"

namespace polyflood {

/// Uniform grid of n_cells cells on [x_lo, x_hi]. Face k sits at x_lo + k h;
/// cell i lies between faces i and i+1.
struct Grid1D {
  double x_lo = 0.0;
  double x_hi = 1.0;
  int n_cells = 1;
  /// Face carrying the rock-type change, if any.
  std::optional<int> interface_index;

  double h() const { return (x_hi - x_lo) / n_cells; }
  double center(int i) const { return x_lo + (i + 0.5) * h(); }
  double face(int k) const { return x_lo + k * h(); }
};

struct SchemeState {
  std::vector<double> s;
  std::vector<double> c;
  double time = 0.0;
};

struct BoundarySide {
  enum class Kind { dirichlet, closed };
  Kind kind = Kind::closed;
  State value;

  static BoundarySide dirichlet(double s, double c) { return {Kind::dirichlet, State{s, c}}; }
  static BoundarySide closed() { return {Kind::closed, State{}}; }
};

struct BoundarySpec {
  BoundarySide left;
  BoundarySide right;
};

/// The flux function over the line: one model everywhere, or a left and a
/// right model glued at the interface face of the grid.
class Physics {
public:
  explicit Physics(PolymerModel model);
  explicit Physics(DiscontinuousModel dmodel);

  const PolymerModel& left() const { return left_; }
  const PolymerModel& right() const { return right_; }
  bool is_discontinuous() const { return dmodel_.has_value(); }
  const DiscontinuousModel& discontinuous() const;

  /// Model governing cell i (ghosts included: -1 and n_cells).
  const PolymerModel& model_at(const Grid1D& grid, int cell) const;

  /// Tabulated argmax f(., c) of the model governing cell i.
  double theta_at(const Grid1D& grid, int cell, double c) const;

  /// Grid on [x_lo, x_hi] with the interface face located when discontinuous.
  Grid1D make_grid(double x_lo, double x_hi, int n_cells) const;

private:
  bool on_left(const Grid1D& grid, int cell) const;

  PolymerModel left_;
  PolymerModel right_;
  std::optional<DiscontinuousModel> dmodel_;
  std::shared_ptr<const ThetaTable> left_theta_;
  std::shared_ptr<const ThetaTable> right_theta_;
};

struct Diagnostics {
  long steps = 0;
  long recover_iterations = 0;
  long upstream_ambiguous = 0;
  /// Indexed by GodunovCase.
  std::array<long, 6> godunov_cases{};
  /// Faces where the Godunov flux differs from DFLU by more than 1e-12.
  long godunov_dflu_mismatch = 0;
  /// Interface faces where the exact discontinuous solver did not apply and
  /// the Godunov scheme used the DFLU interface flux.
  long interface_fallbacks = 0;

  void merge(const Diagnostics& other);
};

struct StepTrace {
  std::vector<FluxPair> faces;  // n_cells + 1 face fluxes
  Diagnostics diagnostics;
};

/// Root of c s_new + a(c) = rhs on the concentration domain. rhs within 1e-10
/// of the attainable range is clamped; further out raises StepError.
double recover_c(double s_new, double rhs, const PolymerModel& model,
                 std::optional<double> guess = std::nullopt, int* iterations = nullptr);

/// One explicit step of the conservative scheme with time step dt.
SchemeState step(const SchemeState& state, const Physics& physics, const Grid1D& grid,
                 const FluxScheme& scheme, const BoundarySpec& boundary, double dt,
                 StepTrace* trace = nullptr);

/// M = max of |f_s| and f/(s + a'(c)) over a 512 x 32 grid of the full box.
double max_wave_speed(const PolymerModel& model);
double max_wave_speed(const Physics& physics);

/// The same bound with c restricted to c_range. Schemes obeying the discrete
/// maximum principle keep c inside the range of the data, so this M is
/// enough for data whose concentrations lie in c_range.
double max_wave_speed(const PolymerModel& model, const Interval& c_range);
double max_wave_speed(const Physics& physics, const Interval& c_range);

/// safety h / M, or dt_max when M vanishes.
double cfl_max_dt(const Physics& physics, double h, double safety = 1.0,
                  double dt_max = std::numeric_limits<double>::infinity());

struct DtPolicy {
  /// Fixed step when set, otherwise the CFL step times safety.
  std::optional<double> fixed_dt;
  double safety = 1.0;
  double dt_max = std::numeric_limits<double>::infinity();

  static DtPolicy fixed(double dt) { return DtPolicy{dt, 1.0, std::numeric_limits<double>::infinity()}; }
  static DtPolicy from_lambda(double lambda, double h) { return fixed(lambda * h); }
  static DtPolicy cfl(double safety = 1.0) {
    return DtPolicy{std::nullopt, safety, std::numeric_limits<double>::infinity()};
  }
};

}  // namespace polyflood
