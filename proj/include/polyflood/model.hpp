#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace polyflood {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

/// Point in state space: water saturation and polymer concentration.
struct State {
  double s = 0.0;
  double c = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

using Field2 = std::function<double(double s, double c)>;
using Field1 = std::function<double(double c)>;

/// Phase mobility lambda(s, c). Partials are optional; when both are
/// present the fractional flow derivatives are evaluated analytically.
struct Mobility {
  Field2 value;
  Field2 d_ds;
  Field2 d_dc;
};

/// Adsorption isotherm a(c) and its derivative h(c) = a'(c).
struct Adsorption {
  Field1 value;
  Field1 derivative;
};

/// Everything needed to build a mobility-based model:
///
///   f(s,c) = l1 / (l1 + l2) * (phi + (g1 - g2) * l2)
struct MobilityModelSpec {
  std::string name;
  Mobility mobility_1;
  Mobility mobility_2;
  double gravity_1 = 0.0;
  double gravity_2 = 0.0;
  double total_velocity = 0.0;
  Adsorption adsorption;
  Interval s_domain{0.0, 1.0};
  Interval c_domain{0.0, 1.0};
};

/// A model given directly by its fractional flow. Used for synthetic
/// fluxes that have no mobility factorisation; such models cannot drive
/// the upstream mobility flux.
struct FluxModelSpec {
  std::string name;
  Field2 flux;
  Field2 flux_ds;  // optional
  Field2 flux_dc;  // optional
  Adsorption adsorption;
  Interval s_domain{0.0, 1.0};
  Interval c_domain{0.0, 1.0};
};

/// Immutable polymer flooding model. Copies share the underlying closures,
/// so passing by value is cheap. Construction validates the structural
/// assumptions and throws ModelError when one fails.
class PolymerModel {
public:
  explicit PolymerModel(MobilityModelSpec spec);
  explicit PolymerModel(FluxModelSpec spec);

  const std::string& name() const;
  const Interval& s_domain() const;
  const Interval& c_domain() const;

  /// Fractional flow f(s, c).
  double flux(double s, double c) const;
  /// Partial derivative of f with respect to s.
  double flux_ds(double s, double c) const;
  /// Partial derivative of f with respect to c.
  double flux_dc(double s, double c) const;

  double adsorption(double c) const;
  double adsorption_deriv(double c) const;

  bool has_mobilities() const;
  double mobility_1(double s, double c) const;
  double mobility_2(double s, double c) const;
  double gravity_1() const;
  double gravity_2() const;
  double total_velocity() const;

  /// Clamp-validates a saturation: values within round-off of the domain are
  /// projected onto it, anything further out raises DomainError.
  double checked_s(double s) const;
  double checked_c(double c) const;

  /// Identity comparison: true when both handles share the same closures.
  bool same_as(const PolymerModel& other) const { return impl_ == other.impl_; }

  struct Impl;

private:
  std::shared_ptr<const Impl> impl_;
};

/// Secant slope of the adsorption isotherm anchored at c_left; the
/// derivative a'(c_left) when the concentrations coincide.
double abar(const PolymerModel& model, double c_left, double c);

/// Global maximiser of s -> f(s, c) on the saturation domain.
double theta(const PolymerModel& model, double c);

/// Resonance saturation: the interior root of
///   f_s(s, c_left) * (s + abar(c_left, c_right)) - f(s, c_left) = 0,
/// where the s-characteristic speed equals the contact speed.
double s_star(const PolymerModel& model, double c_left, double c_right);

/// All saturations where f(s, c) = sigma * (s + abar_val), ascending. These
/// are the intersections of the line through (-abar_val, 0) with slope sigma
/// and the curve f(., c).
std::vector<double> secant_intersections(const PolymerModel& model, double c, double sigma,
                                         double abar_val);

/// Contact speed f(s, c) / (s + abar_val).
inline double contact_speed(const PolymerModel& model, State u, double abar_val) {
  return model.flux(u.s, u.c) / (u.s + abar_val);
}

/// Two models glued at an interface: left_model governs x < interface,
/// right_model x > interface.
class DiscontinuousModel {
public:
  DiscontinuousModel(PolymerModel left, PolymerModel right, double interface_position = 0.0);

  const PolymerModel& left() const { return left_; }
  const PolymerModel& right() const { return right_; }
  double interface_position() const { return interface_position_; }

private:
  PolymerModel left_;
  PolymerModel right_;
  double interface_position_;
};

/// theta(model, c) tabulated on a uniform c-grid and linearly interpolated.
/// Flux evaluations at min/max(s, theta) are insensitive to the small
/// interpolation error because f_s vanishes at theta.
class ThetaTable {
public:
  explicit ThetaTable(const PolymerModel& model, int nodes = 4097);

  double operator()(double c) const;

private:
  Interval c_domain_;
  std::vector<double> values_;
};

namespace tolerances {
inline constexpr double kRoot = 1e-12;         // bisection width on s and c
inline constexpr double kTheta = 1e-10;        // golden-section width
inline constexpr double kDomainSlack = 1e-10;  // round-off accepted at domain edges
inline constexpr int kScanPoints = 1024;       // bracketing scan resolution
inline constexpr int kValidationCSamples = 32;
inline constexpr double kFdRelStep = 1e-6;
}  // namespace tolerances

/// Bisection on [lo, hi] for a continuous g with g(lo) and g(hi) of opposite
/// (or zero) sign. Stops when the bracket is narrower than tol.
double bisect(const std::function<double(double)>& g, double lo, double hi,
              double tol = tolerances::kRoot);

/// Uniform scan of g on [lo, hi] followed by bisection of every sign change.
/// Samples where g vanishes exactly are reported as roots.
std::vector<double> scan_roots(const std::function<double(double)>& g, double lo, double hi,
                               int points = tolerances::kScanPoints,
                               double tol = tolerances::kRoot);

}  // namespace polyflood
