#include "polyflood/fluxes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polyflood/errors.hpp"
#include "polyflood/solver.hpp"

namespace polyflood {

namespace {

double theta_or(const std::optional<double>& cached, const PolymerModel& model, double c) {
  return cached ? *cached : theta(model, c);
}

// Root of a decreasing-then-positive-to-negative g on [lo, hi]; hi when the
// sign change is lost to round-off.
double decreasing_root(const std::function<double(double)>& g, double lo, double hi) {
  const double glo = g(lo);
  const double ghi = g(hi);
  if (ghi >= 0.0) return hi;
  if (glo <= 0.0) return lo;
  return bisect(g, lo, hi);
}

// First + to - sign change of f_s(s, c_l)(s + ab) - f(s, c_l) on
// [s_min, theta_l]; the full scan when the coarse one misses it.
double resonance_point(const PolymerModel& model, double c_l, double c_r, double ab,
                       double theta_l) {
  auto g = [&](double s) { return model.flux_ds(s, c_l) * (s + ab) - model.flux(s, c_l); };
  const double lo = model.s_domain().lo;
  constexpr int kPoints = 64;
  double x_prev = lo;
  double g_prev = 0.0;
  for (int k = 0; k <= kPoints; ++k) {
    const double x = k == kPoints ? theta_l : lo + (theta_l - lo) * k / kPoints;
    const double gx = g(x);
    if (g_prev > 0.0 && gx <= 0.0) return gx == 0.0 ? x : bisect(g, x_prev, x);
    x_prev = x;
    g_prev = gx;
  }
  return s_star(model, c_l, c_r);
}

}  // namespace

std::string_view to_string(FluxTag tag) {
  switch (tag) {
    case FluxTag::dflu:
      return "dflu";
    case FluxTag::godunov:
      return "godunov";
    case FluxTag::upstream_mobility:
      return "um";
    case FluxTag::lax_friedrichs:
      return "lf";
    case FluxTag::force:
      return "force";
  }
  return "?";
}

FluxTag parse_flux_tag(std::string_view name) {
  if (name == "dflu") return FluxTag::dflu;
  if (name == "godunov") return FluxTag::godunov;
  if (name == "um" || name == "upstream" || name == "upstream-mobility") {
    return FluxTag::upstream_mobility;
  }
  if (name == "lf" || name == "lax-friedrichs") return FluxTag::lax_friedrichs;
  if (name == "force") return FluxTag::force;
  throw ConfigError("unknown flux '" + std::string(name) + "' (expected dflu|godunov|um|lf|force)");
}

std::string_view to_string(GodunovCase kase) {
  switch (kase) {
    case GodunovCase::constant_c:
      return "constant_c";
    case GodunovCase::c_increasing:
      return "c_increasing";
    case GodunovCase::case_1a:
      return "1a";
    case GodunovCase::case_1b:
      return "1b";
    case GodunovCase::case_2a:
      return "2a";
    case GodunovCase::case_2b:
      return "2b";
  }
  return "?";
}

FluxPair dflu(const PolymerModel& model_l, const PolymerModel& model_r, const FaceStates& face) {
  const double th_i = theta_or(face.theta_i, model_l, face.c_i);
  const double th_ip1 = theta_or(face.theta_ip1, model_r, face.c_ip1);
  const double F = std::min(model_l.flux(std::min(face.s_i, th_i), face.c_i),
                            model_r.flux(std::max(face.s_ip1, th_ip1), face.c_ip1));
  return FluxPair{F, face.c_i * F};
}

double scalar_dflu(const ScalarFlux& f_left, const ScalarFlux& f_right, double u_left,
                   double u_right) {
  return std::min(f_left.f(std::min(u_left, f_left.theta)),
                  f_right.f(std::max(u_right, f_right.theta)));
}

FluxPair riemann_flux(const PolymerModel& model, const RiemannSolution& solution) {
  const State u = solution.sample(0.0);
  const double F = model.flux(u.s, u.c);
  return FluxPair{F, u.c * F};
}

GodunovResult godunov_classified(const PolymerModel& model, const FaceStates& face) {
  const double sl = model.checked_s(face.s_i);
  const double cl = model.checked_c(face.c_i);
  const double sr = model.checked_s(face.s_ip1);
  const double cr = model.checked_c(face.c_ip1);
  GodunovResult out;

  if (cl < cr) {
    out.kase = GodunovCase::c_increasing;
    out.flux = riemann_flux(model, solve_riemann(model, State{sl, cl}, State{sr, cr}));
    return out;
  }

  const double th_l = theta_or(face.theta_i, model, cl);
  auto f_l = [&](double s) { return model.flux(s, cl); };
  auto scalar = [&](double u_left, double u_right) {
    return std::min(f_l(std::min(u_left, th_l)), f_l(std::max(u_right, th_l)));
  };

  if (cl == cr) {
    out.kase = GodunovCase::constant_c;
    const double F = scalar(sl, sr);
    out.flux = FluxPair{F, cl * F};
    return out;
  }

  const double ab = abar(model, cl, cr);
  auto h_l = [&](double s) { return f_l(s) / (s + ab); };
  const double s_max = model.s_domain().hi;
  const double g_l = model.flux_ds(sl, cl) * (sl + ab) - f_l(sl);
  const bool case_1 = sl < th_l && (g_l > 0.0 || sl <= model.s_domain().lo);
  const bool right_rising = model.flux_ds(sr, cr) >= 0.0;
  const double sig_r = model.flux(sr, cr) / (sr + ab);

  double F;
  if (case_1) {
    const double sig_l = h_l(sl);
    if (right_rising || sig_r >= sig_l) {
      F = f_l(sl);
      out.kase = GodunovCase::case_1a;
    } else {
      const double sbar = decreasing_root([&](double s) { return h_l(s) - sig_r; }, sl, s_max);
      F = scalar(sl, sbar);
      out.kase = GodunovCase::case_1b;
    }
  } else if (right_rising) {
    F = f_l(std::min(sl, th_l));
    out.kase = GodunovCase::case_2a;
  } else {
    const double sst = resonance_point(model, cl, cr, ab, th_l);
    if (sig_r >= h_l(sst)) {
      F = f_l(std::min(sl, th_l));
      out.kase = GodunovCase::case_2a;
    } else {
      const double sbar = decreasing_root([&](double s) { return h_l(s) - sig_r; }, sst, s_max);
      F = scalar(sl, sbar);
      out.kase = GodunovCase::case_2b;
    }
  }
  out.flux = FluxPair{F, cl * F};
  return out;
}

UpstreamResult upstream_mobility_classified(const PolymerModel& model_l,
                                            const PolymerModel& model_r, const FaceStates& face) {
  if (!model_l.has_mobilities() || !model_r.has_mobilities()) {
    throw ModelError("upstream mobility flux needs a mobility-based model");
  }
  const double phi = model_l.total_velocity();
  const double g12 = model_l.gravity_1() - model_l.gravity_2();
  const double l1[2] = {model_l.mobility_1(face.s_i, face.c_i),
                        model_r.mobility_1(face.s_ip1, face.c_ip1)};
  const double l2[2] = {model_l.mobility_2(face.s_i, face.c_i),
                        model_r.mobility_2(face.s_ip1, face.c_ip1)};
  // Index 0 = left (cell i), 1 = right (cell i+1).
  auto side_1 = [&](double lam2) { return phi + g12 * lam2 > 0.0 ? 0 : 1; };
  auto side_2 = [&](double lam1) { return phi - g12 * lam1 > 0.0 ? 0 : 1; };

  int consistent = 0;
  int pick1 = 0;
  int pick2 = 0;
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int a2 = 0; a2 < 2; ++a2) {
      if (side_1(l2[a2]) == a1 && side_2(l1[a1]) == a2) {
        ++consistent;
        pick1 = a1;
        pick2 = a2;
      }
    }
  }
  UpstreamResult out;
  if (consistent != 1) {
    out.ambiguous = true;
    pick2 = 1;
    pick1 = side_1(l2[1]);
  }
  const double lam1 = l1[pick1];
  const double lam2 = l2[pick2];
  const double total = lam1 + lam2;
  const double F = total > 0.0 ? lam1 / total * (phi + g12 * lam2) : 0.0;
  out.flux = FluxPair{F, (F >= 0.0 ? face.c_i : face.c_ip1) * F};
  return out;
}

FluxPair lax_friedrichs(const PolymerModel& model_l, const PolymerModel& model_r,
                        const FaceStates& face, double lambda_ratio) {
  if (!(lambda_ratio > 0.0)) throw ConfigError("Lax-Friedrichs flux needs lambda > 0");
  const double fl = model_l.flux(face.s_i, face.c_i);
  const double fr = model_r.flux(face.s_ip1, face.c_ip1);
  const double ml = face.c_i * face.s_i + model_l.adsorption(face.c_i);
  const double mr = face.c_ip1 * face.s_ip1 + model_r.adsorption(face.c_ip1);
  return FluxPair{0.5 * (fr + fl - (face.s_ip1 - face.s_i) / lambda_ratio),
                  0.5 * (face.c_ip1 * fr + face.c_i * fl - (mr - ml) / lambda_ratio)};
}

FluxPair force(const PolymerModel& model_l, const PolymerModel& model_r, const FaceStates& face,
               double lambda_ratio) {
  if (!(lambda_ratio > 0.0)) throw ConfigError("FORCE flux needs lambda > 0");
  const double lam = lambda_ratio;
  const double fl = model_l.flux(face.s_i, face.c_i);
  const double fr = model_r.flux(face.s_ip1, face.c_ip1);
  const double al = model_l.adsorption(face.c_i);
  const double ar = model_r.adsorption(face.c_ip1);

  double s_half = 0.5 * (face.s_ip1 + face.s_i) - 0.5 * lam * (fr - fl);
  const Interval& d = model_l.s_domain();
  if (!d.contains(s_half, tolerances::kDomainSlack)) {
    std::ostringstream os;
    os << "FORCE half-step saturation " << s_half << " leaves [" << d.lo << "," << d.hi
       << "]; lambda=" << lam << " violates the CFL bound";
    throw StepError(os.str());
  }
  s_half = std::clamp(s_half, d.lo, d.hi);
  const double rhs = 0.5 * (face.s_ip1 * face.c_ip1 + face.s_i * face.c_i) + 0.5 * (ar + al) -
                     0.5 * lam * (face.c_ip1 * fr - face.c_i * fl);
  const double c_half = recover_c(s_half, rhs, model_l, 0.5 * (face.c_i + face.c_ip1));
  const double f_half = model_l.same_as(model_r)
                            ? model_l.flux(s_half, c_half)
                            : 0.5 * (model_l.flux(s_half, c_half) + model_r.flux(s_half, c_half));

  const double F = 0.25 * (fr + fl + 2.0 * f_half - (face.s_ip1 - face.s_i) / lam);
  const double G = 0.25 * (face.c_ip1 * fr + face.c_i * fl + 2.0 * c_half * f_half -
                           ((face.c_ip1 * face.s_ip1 + ar) - (face.c_i * face.s_i + al)) / lam);
  return FluxPair{F, G};
}

}  // namespace polyflood
