#pragma once

#include <string>
#include <vector>

#include "polyflood/model.hpp"

namespace polyflood {

/// Two-phase mobilities with gravity and linear adsorption:
///
///   l1 = k1 s^p1 / (b1 + c),   l2 = k2 (1 - s)^p2,   a(c) = alpha c
///
/// on s in [0,1], c in [0,1].
struct PowerLawParams {
  double k1 = 1.0;
  double p1 = 2.0;
  double b1 = 0.5;
  double k2 = 1.0;
  double p2 = 2.0;
  double gravity_1 = 2.0;
  double gravity_2 = 1.0;
  double total_velocity = 0.0;
  double adsorption = 0.25;
};

PolymerModel power_law_model(const std::string& name, const PowerLawParams& p);

/// f(s,c) = s(4 - s)/(1 + c), a(c) = c, s in [0,4].
PolymerModel quadratic_demo_model();

/// l1 = s^2/(.5 + c), l2 = (1 - s)^2, g1 = 2, g2 = 1, phi = 0, a(c) = .25c.
PolymerModel two_phase_model();

/// Rock-type change at x = interface_position. Right side: l1 = 10 s^2/(.5+c),
/// l2 = 20(1-s)^2. Left side: 50 s^2/(.5+c), 5(1-s)^2. Both g1 = 2, g2 = 1,
/// phi = 0, a(c) = .25c.
DiscontinuousModel two_phase_discontinuous_model(double interface_position = 0.0);

/// Continuous presets: "quadratic-demo", "two-phase".
PolymerModel model_preset(const std::string& name);
bool is_discontinuous_preset(const std::string& name);
std::vector<std::string> model_preset_names();

}  // namespace polyflood
