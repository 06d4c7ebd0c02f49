#include "polyflood/presets.hpp"

#include <cmath>

#include "polyflood/errors.hpp"

namespace polyflood {

PolymerModel power_law_model(const std::string& name, const PowerLawParams& p) {
  MobilityModelSpec spec;
  spec.name = name;
  spec.mobility_1.value = [p](double s, double c) { return p.k1 * std::pow(s, p.p1) / (p.b1 + c); };
  spec.mobility_1.d_ds = [p](double s, double c) {
    return p.k1 * p.p1 * std::pow(s, p.p1 - 1.0) / (p.b1 + c);
  };
  spec.mobility_1.d_dc = [p](double s, double c) {
    return -p.k1 * std::pow(s, p.p1) / ((p.b1 + c) * (p.b1 + c));
  };
  spec.mobility_2.value = [p](double s, double) { return p.k2 * std::pow(1.0 - s, p.p2); };
  spec.mobility_2.d_ds = [p](double s, double) {
    return -p.k2 * p.p2 * std::pow(1.0 - s, p.p2 - 1.0);
  };
  spec.mobility_2.d_dc = [](double, double) { return 0.0; };
  spec.gravity_1 = p.gravity_1;
  spec.gravity_2 = p.gravity_2;
  spec.total_velocity = p.total_velocity;
  const double alpha = p.adsorption;
  spec.adsorption.value = [alpha](double c) { return alpha * c; };
  spec.adsorption.derivative = [alpha](double) { return alpha; };
  return PolymerModel(std::move(spec));
}

PolymerModel quadratic_demo_model() {
  // l1 = 4s/(1+c), l2 = 4(4-s)/(1+c), g1 - g2 = 1, phi = 0 gives s(4-s)/(1+c).
  MobilityModelSpec spec;
  spec.name = "quadratic-demo";
  spec.mobility_1.value = [](double s, double c) { return 4.0 * s / (1.0 + c); };
  spec.mobility_1.d_ds = [](double, double c) { return 4.0 / (1.0 + c); };
  spec.mobility_1.d_dc = [](double s, double c) { return -4.0 * s / ((1.0 + c) * (1.0 + c)); };
  spec.mobility_2.value = [](double s, double c) { return 4.0 * (4.0 - s) / (1.0 + c); };
  spec.mobility_2.d_ds = [](double, double c) { return -4.0 / (1.0 + c); };
  spec.mobility_2.d_dc = [](double s, double c) {
    return -4.0 * (4.0 - s) / ((1.0 + c) * (1.0 + c));
  };
  spec.gravity_1 = 1.0;
  spec.gravity_2 = 0.0;
  spec.total_velocity = 0.0;
  spec.adsorption.value = [](double c) { return c; };
  spec.adsorption.derivative = [](double) { return 1.0; };
  spec.s_domain = {0.0, 4.0};
  return PolymerModel(std::move(spec));
}

PolymerModel two_phase_model() { return power_law_model("two-phase", PowerLawParams{}); }

DiscontinuousModel two_phase_discontinuous_model(double interface_position) {
  PowerLawParams left;
  left.k1 = 50.0;
  left.k2 = 5.0;
  PowerLawParams right;
  right.k1 = 10.0;
  right.k2 = 20.0;
  return DiscontinuousModel(power_law_model("two-phase-discontinuous/left", left),
                            power_law_model("two-phase-discontinuous/right", right),
                            interface_position);
}

PolymerModel model_preset(const std::string& name) {
  if (name == "quadratic-demo") return quadratic_demo_model();
  if (name == "two-phase") return two_phase_model();
  if (name == "two-phase-discontinuous") {
    throw ConfigError("model preset 'two-phase-discontinuous' is discontinuous in x");
  }
  throw ConfigError("unknown model preset '" + name + "'");
}

bool is_discontinuous_preset(const std::string& name) { return name == "two-phase-discontinuous"; }

std::vector<std::string> model_preset_names() {
  return {"quadratic-demo", "two-phase", "two-phase-discontinuous"};
}

}  // namespace polyflood
