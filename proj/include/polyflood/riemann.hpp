#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyflood/model.hpp"

namespace polyflood {

enum class WaveKind { s_shock, s_rarefaction, c_contact };

std::string_view to_string(WaveKind kind);

struct Wave {
  WaveKind kind = WaveKind::s_shock;
  double speed_lo = 0.0;
  double speed_hi = 0.0;
  State left;
  State right;
  /// Rarefactions only: xi -> s inside the fan, at fixed c.
  std::function<double(double)> fan;
};

struct RiemannSolution {
  State left_state;
  State right_state;
  std::vector<Wave> waves;
  /// "1a", "1b", "2a", "2b" for c_L > c_R; "scalar", "mirror" or "constant"
  /// otherwise.
  std::string case_label;

  /// State at xi = x/t. Exactly at a shock or contact the right state wins.
  State sample(double xi) const;
};

inline State sample(const RiemannSolution& solution, double xi) { return solution.sample(xi); }

/// s -> f(s, c) at a frozen concentration together with its maximiser.
struct ScalarFlux {
  std::function<double(double)> f;
  std::function<double(double)> df;
  Interval domain;
  double theta = 0.0;

  static ScalarFlux at(const PolymerModel& model, double c);
  static ScalarFlux at(const PolymerModel& model, double c, double theta_c);
};

/// Godunov flux of a unimodal scalar flux: min{f(min(u_l,theta)), f(max(u_r,theta))}.
double scalar_godunov(const ScalarFlux& flux, double u_left, double u_right);

/// Entropy solution of the scalar problem u_t + f(u)_x = 0 with data
/// (u_left, u_right), built from the convex (u_left < u_right) or concave
/// hull of f. Waves carry c in their states.
std::vector<Wave> scalar_waves(const ScalarFlux& flux, double c, double u_left, double u_right);

std::vector<Wave> scalar_s_wave(const PolymerModel& model, double c, double s_left,
                                double s_right);

RiemannSolution solve_riemann(const PolymerModel& model, State left, State right);

inline RiemannSolution solve_riemann(const PolymerModel& model, double s_l, double c_l,
                                     double s_r, double c_r) {
  return solve_riemann(model, State{s_l, c_l}, State{s_r, c_r});
}

/// Builds the solution by trying every contact anchored at a data state or
/// at a tangency point and keeping the first whose neighbouring s-waves are
/// compatible with the contact speed. solve_riemann uses it for c_L < c_R;
/// it accepts any c_L != c_R.
RiemannSolution solve_riemann_by_enumeration(const PolymerModel& model, State left, State right);

/// First violated chain invariant (speed ordering, state chaining,
/// Rankine-Hugoniot residuals), or nullopt.
std::optional<std::string> chain_violation(const PolymerModel& model,
                                           const RiemannSolution& solution, double tol = 1e-9);

struct TwoFluxSolution {
  double c = 0.0;
  double flux = 0.0;
  double u_left = 0.0;
  double u_right = 0.0;
  double u_minus = 0.0;  // trace at x = 0-
  double u_plus = 0.0;   // trace at x = 0+
  std::vector<Wave> left_waves;
  std::vector<Wave> right_waves;

  double sample(double xi) const;
};

/// Scalar problem with flux f_left for x < 0 and f_right for x > 0. The
/// interface flux is min{f_left(min(u_L,theta_L)), f_right(max(u_R,theta_R))}.
TwoFluxSolution scalar_two_flux_riemann(const ScalarFlux& f_left, const ScalarFlux& f_right,
                                        double c, double u_left, double u_right);

struct DiscontinuousRiemannSolution {
  RiemannSolution left_part;   // x < 0, left model
  RiemannSolution right_part;  // x > 0, right model
  State interface_left;
  State interface_right;
  double flux = 0.0;
  std::string case_label;

  State sample(double xi) const;
};

/// Riemann problem with the left model on x < 0 and the right model on x > 0.
/// Requires c_L >= c_R and f_l(theta_l, c_L) <= f_r(theta_r, c_L).
DiscontinuousRiemannSolution solve_riemann_discontinuous(const DiscontinuousModel& dmodel,
                                                         State left, State right);

}  // namespace polyflood
