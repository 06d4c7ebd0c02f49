#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "polyflood/model.hpp"
#include "polyflood/riemann.hpp"

namespace polyflood {

struct FluxPair {
  double F = 0.0;
  double G = 0.0;
};

enum class FluxTag { dflu, godunov, upstream_mobility, lax_friedrichs, force };

/// CLI names: dflu, godunov, um, lf, force.
std::string_view to_string(FluxTag tag);
FluxTag parse_flux_tag(std::string_view name);

struct FluxScheme {
  FluxTag tag = FluxTag::dflu;
  double lambda_ratio = 0.0;  // dt / h, used by lf and force
};

/// Cell values on both sides of a face. The theta fields are optional
/// caches of argmax f(., c) for the matching model.
struct FaceStates {
  double s_i = 0.0;
  double c_i = 0.0;
  double s_ip1 = 0.0;
  double c_ip1 = 0.0;
  std::optional<double> theta_i;
  std::optional<double> theta_ip1;
};

FluxPair dflu(const PolymerModel& model_l, const PolymerModel& model_r, const FaceStates& face);

inline FluxPair dflu(const PolymerModel& model_l, const PolymerModel& model_r, double s_i,
                     double c_i, double s_ip1, double c_ip1) {
  return dflu(model_l, model_r, FaceStates{s_i, c_i, s_ip1, c_ip1, {}, {}});
}

enum class GodunovCase { constant_c, c_increasing, case_1a, case_1b, case_2a, case_2b };

std::string_view to_string(GodunovCase kase);

struct GodunovResult {
  FluxPair flux;
  GodunovCase kase = GodunovCase::constant_c;
};

/// Exact Godunov flux. For c_i >= c_ip1 the closed form is used and the case
/// is reported from its branches ("a" when the flux is the left supply
/// value, "b" when the s-wave to sbar decides it); for c_i < c_ip1 the flux
/// is read off the exact Riemann fan at xi = 0.
GodunovResult godunov_classified(const PolymerModel& model, const FaceStates& face);

inline FluxPair godunov(const PolymerModel& model, double s_i, double c_i, double s_ip1,
                        double c_ip1) {
  return godunov_classified(model, FaceStates{s_i, c_i, s_ip1, c_ip1, {}, {}}).flux;
}

/// Flux pair of the exact Riemann fan at xi = 0.
FluxPair riemann_flux(const PolymerModel& model, const RiemannSolution& solution);

struct UpstreamResult {
  FluxPair flux;
  bool ambiguous = false;
};

/// Upstream mobility flux. Each phase mobility is taken from the side its
/// driving force points away from; the self-consistent assignment among the
/// four candidates wins, with a fixed fallback when none or several are.
UpstreamResult upstream_mobility_classified(const PolymerModel& model_l,
                                            const PolymerModel& model_r, const FaceStates& face);

inline FluxPair upstream_mobility(const PolymerModel& model, double s_i, double c_i, double s_ip1,
                                  double c_ip1) {
  return upstream_mobility_classified(model, model, FaceStates{s_i, c_i, s_ip1, c_ip1, {}, {}})
      .flux;
}

FluxPair lax_friedrichs(const PolymerModel& model_l, const PolymerModel& model_r,
                        const FaceStates& face, double lambda_ratio);

inline FluxPair lax_friedrichs(const PolymerModel& model, double s_i, double c_i, double s_ip1,
                               double c_ip1, double lambda_ratio) {
  return lax_friedrichs(model, model, FaceStates{s_i, c_i, s_ip1, c_ip1, {}, {}}, lambda_ratio);
}

/// FORCE flux. When the two models differ the half-step flux is the mean of
/// both models' values.
FluxPair force(const PolymerModel& model_l, const PolymerModel& model_r, const FaceStates& face,
               double lambda_ratio);

inline FluxPair force(const PolymerModel& model, double s_i, double c_i, double s_ip1,
                      double c_ip1, double lambda_ratio) {
  return force(model, model, FaceStates{s_i, c_i, s_ip1, c_ip1, {}, {}}, lambda_ratio);
}

/// min{f_left(min(u_L, theta_L)), f_right(max(u_R, theta_R))}.
double scalar_dflu(const ScalarFlux& f_left, const ScalarFlux& f_right, double u_left,
                   double u_right);

}  // namespace polyflood
