#include "polyflood/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polyflood/errors.hpp"

namespace polyflood {

namespace {

constexpr int kHullPoints = 2048;
constexpr double kCaseTol = 1e-12;
constexpr double kSpeedSnap = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Root of a monotone g on [lo, hi]; the endpoint with the smaller residual
// when round-off removed the sign change.
double monotone_root(const std::function<double(double)>& g, double lo, double hi) {
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) return std::abs(glo) <= std::abs(ghi) ? lo : hi;
  return bisect(g, lo, hi);
}

Wave make_contact(State a, State b, double sigma) {
  Wave w;
  w.kind = WaveKind::c_contact;
  w.speed_lo = w.speed_hi = sigma;
  w.left = a;
  w.right = b;
  return w;
}

void append(std::vector<Wave>& into, std::vector<Wave> more) {
  for (auto& w : more) into.push_back(std::move(w));
}

// Pulls rarefaction edge speeds onto a neighbouring discontinuity when they
// differ only by root-finding round-off.
void snap_speeds(std::vector<Wave>& waves) {
  for (std::size_t k = 1; k < waves.size(); ++k) {
    Wave& prev = waves[k - 1];
    Wave& next = waves[k];
    if (prev.speed_hi <= next.speed_lo) continue;
    if (prev.speed_hi - next.speed_lo > kSpeedSnap) continue;
    if (prev.kind == WaveKind::s_rarefaction) {
      prev.speed_hi = next.speed_lo;
      prev.speed_lo = std::min(prev.speed_lo, prev.speed_hi);
    } else if (next.kind == WaveKind::s_rarefaction) {
      next.speed_lo = prev.speed_hi;
      next.speed_hi = std::max(next.speed_lo, next.speed_hi);
    }
  }
}

std::string line_dump(const PolymerModel& model, double c, double sigma, double ab) {
  std::ostringstream os;
  os << "line through (" << -ab << ",0) with slope " << sigma << " against f(.," << c
     << ") of model '" << model.name() << "':";
  const Interval& d = model.s_domain();
  for (int k = 0; k <= 8; ++k) {
    const double s = d.lo + d.width() * k / 8;
    os << " [s=" << s << " f=" << model.flux(s, c) << " line=" << sigma * (s + ab) << "]";
  }
  return os.str();
}

std::vector<double> require_roots(const PolymerModel& model, double c, double sigma, double ab,
                                  const char* which) {
  auto roots = secant_intersections(model, c, sigma, ab);
  if (roots.empty()) {
    throw StructuralError(std::string("case ") + which + ": no intersection; " +
                          line_dump(model, c, sigma, ab));
  }
  return roots;
}

struct Run {
  int first;
  int last;
  double a;
  double b;
};

}  // namespace

std::string_view to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::s_shock:
      return "s_shock";
    case WaveKind::s_rarefaction:
      return "s_rarefaction";
    case WaveKind::c_contact:
      return "c_contact";
  }
  return "?";
}

State RiemannSolution::sample(double xi) const {
  State state = left_state;
  for (const Wave& w : waves) {
    if (xi < w.speed_lo) return state;
    if (w.kind == WaveKind::s_rarefaction && xi < w.speed_hi) return State{w.fan(xi), w.left.c};
    state = w.right;
  }
  return state;
}

ScalarFlux ScalarFlux::at(const PolymerModel& model, double c) {
  return at(model, c, polyflood::theta(model, c));
}

ScalarFlux ScalarFlux::at(const PolymerModel& model, double c, double theta_c) {
  ScalarFlux sf;
  sf.f = [model, c](double s) { return model.flux(s, c); };
  sf.df = [model, c](double s) { return model.flux_ds(s, c); };
  sf.domain = model.s_domain();
  sf.theta = theta_c;
  return sf;
}

double scalar_godunov(const ScalarFlux& flux, double u_left, double u_right) {
  return std::min(flux.f(std::min(u_left, flux.theta)), flux.f(std::max(u_right, flux.theta)));
}

std::vector<Wave> scalar_waves(const ScalarFlux& flux, double c, double u_left, double u_right) {
  if (u_left == u_right) return {};
  const bool increasing = u_left < u_right;
  const double lo = std::min(u_left, u_right);
  const double hi = std::max(u_left, u_right);
  const double sign = increasing ? 1.0 : -1.0;
  auto q = [&](double x) { return sign * flux.f(x); };
  auto dq = [&](double x) { return sign * flux.df(x); };

  const int n = kHullPoints;
  std::vector<double> xs(n);
  std::vector<double> qs(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = k + 1 == n ? hi : lo + (hi - lo) * k / (n - 1);
    qs[k] = q(xs[k]);
  }

  // Lower convex hull of q (monotone chain). A vertex must sit below the
  // chord by more than round-off, otherwise tiny intervals fill with noise.
  double scale = 0.0;
  for (double v : qs) scale = std::max(scale, std::abs(v));
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  std::vector<int> hull;
  for (int k = 0; k < n; ++k) {
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      const double cross = (xs[j] - xs[i]) * (qs[k] - qs[i]) - (qs[j] - qs[i]) * (xs[k] - xs[i]);
      if (cross > noise * (xs[k] - xs[i])) break;
      hull.pop_back();
    }
    hull.push_back(k);
  }

  std::vector<Run> runs;
  for (std::size_t j = 0; j < hull.size(); ++j) {
    if (j > 0 && hull[j] - hull[j - 1] == 1) {
      runs.back().last = hull[j];
    } else {
      runs.push_back(Run{hull[j], hull[j], 0.0, 0.0});
    }
  }
  for (auto& r : runs) {
    r.a = xs[r.first];
    r.b = xs[r.last];
  }

  // Tangency of the chord to the curve, searched near sample v and kept
  // strictly between the neighbouring vertices lo_idx and hi_idx.
  auto tangent_near = [&](int v, int lo_idx, int hi_idx, const std::function<double(double)>& psi) {
    for (int w = 1; w <= 64; w *= 2) {
      const int ia = std::max(v - w, lo_idx + 1);
      const int ib = std::min(v + w, hi_idx - 1);
      if (ib <= ia) break;
      const double pa = psi(xs[ia]);
      const double pb = psi(xs[ib]);
      if (pa == 0.0) return xs[ia];
      if (pb == 0.0) return xs[ib];
      if ((pa > 0.0) != (pb > 0.0)) return bisect(psi, xs[ia], xs[ib]);
    }
    return xs[v];
  };

  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    const int vl = runs[k].last;
    const int vr = runs[k + 1].first;
    const bool left_tangent = vl != 0;
    const bool right_tangent = vr != n - 1;
    double x = xs[vl];
    double y = xs[vr];
    for (int it = 0; it < 60; ++it) {
      const double yy = y;
      const double nx = left_tangent
                            ? tangent_near(vl, -1, vr,
                                           [&](double t) { return q(yy) - q(t) - dq(t) * (yy - t); })
                            : x;
      const double ny = right_tangent
                            ? tangent_near(vr, vl, n,
                                           [&](double t) { return q(t) - q(nx) - dq(t) * (t - nx); })
                            : y;
      const bool settled = std::abs(nx - x) <= 1e-15 && std::abs(ny - y) <= 1e-15;
      x = nx;
      y = ny;
      if (settled || !(left_tangent && right_tangent)) break;
    }
    runs[k].b = x;
    runs[k + 1].a = y;
  }

  // Pieces in ascending x: run, shock, run, ..., run. An interior run whose
  // refined ends crossed is dropped and its two shocks merged.
  struct Piece {
    bool shock;
    double x0;
    double x1;
  };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Run& r = runs[k];
    const bool interior = k > 0 && k + 1 < runs.size();
    if (interior && r.a > r.b) {
      // pieces.back() is the shock into this run; extend it past the run.
      pieces.back().x1 = runs[k + 1].a;
      ++k;  // the shock out of this run is absorbed
      const Run& nr = runs[k];
      if (nr.b - nr.a > 0.0) pieces.push_back(Piece{false, nr.a, nr.b});
      if (k + 1 < runs.size()) pieces.push_back(Piece{true, nr.b, runs[k + 1].a});
      continue;
    }
    if (r.b - r.a > 0.0) pieces.push_back(Piece{false, r.a, r.b});
    if (k + 1 < runs.size()) pieces.push_back(Piece{true, r.b, runs[k + 1].a});
  }

  if (!increasing) std::reverse(pieces.begin(), pieces.end());

  std::vector<Wave> waves;
  for (const Piece& p : pieces) {
    const double from = increasing ? p.x0 : p.x1;
    const double to = increasing ? p.x1 : p.x0;
    Wave w;
    w.left = State{from, c};
    w.right = State{to, c};
    if (p.shock) {
      w.kind = WaveKind::s_shock;
      w.speed_lo = w.speed_hi = (flux.f(p.x1) - flux.f(p.x0)) / (p.x1 - p.x0);
    } else {
      w.kind = WaveKind::s_rarefaction;
      w.speed_lo = flux.df(from);
      w.speed_hi = flux.df(to);
      const auto df = flux.df;
      const double a = p.x0;
      const double b = p.x1;
      w.fan = [df, a, b](double xi) {
        return monotone_root([&](double s) { return df(s) - xi; }, a, b);
      };
    }
    waves.push_back(std::move(w));
  }
  // A chord across a few ulps has a speed of pure round-off; pull it into
  // the window its neighbours leave when the gap is within that error.
  for (std::size_t k = 0; k < waves.size(); ++k) {
    Wave& w = waves[k];
    if (w.kind != WaveKind::s_shock) continue;
    const double lo_bound = k > 0 ? waves[k - 1].speed_hi : -kInf;
    const double hi_bound = k + 1 < waves.size() ? waves[k + 1].speed_lo : kInf;
    if (lo_bound > hi_bound) continue;
    const double clamped = std::clamp(w.speed_lo, lo_bound, hi_bound);
    if (std::abs(clamped - w.speed_lo) * std::abs(w.right.s - w.left.s) <= 2.0 * noise) {
      w.speed_lo = w.speed_hi = clamped;
    }
  }
  snap_speeds(waves);
  return waves;
}

std::vector<Wave> scalar_s_wave(const PolymerModel& model, double c, double s_left,
                                double s_right) {
  if (s_left == s_right) return {};
  return scalar_waves(ScalarFlux::at(model, c), c, model.checked_s(s_left),
                      model.checked_s(s_right));
}

RiemannSolution solve_riemann(const PolymerModel& model, State left, State right) {
  left = State{model.checked_s(left.s), model.checked_c(left.c)};
  right = State{model.checked_s(right.s), model.checked_c(right.c)};
  RiemannSolution sol;
  sol.left_state = left;
  sol.right_state = right;
  if (left == right) {
    sol.case_label = "constant";
    return sol;
  }
  if (left.c == right.c) {
    sol.case_label = "scalar";
    sol.waves = scalar_s_wave(model, left.c, left.s, right.s);
    return sol;
  }
  if (left.c < right.c) {
    sol = solve_riemann_by_enumeration(model, left, right);
    sol.case_label = "mirror";
    return sol;
  }

  const double cl = left.c;
  const double cr = right.c;
  const double ab = abar(model, cl, cr);
  auto h = [&](double s, double c) { return model.flux(s, c) / (s + ab); };
  const double sst = s_star(model, cl, cr);
  const double sig_star = h(sst, cl);

  // s-wave on c_L to sbar, then contact at the speed of the right state.
  auto b_case = [&](const char* label) {
    const double sig_r = h(right.s, cr);
    auto roots = secant_intersections(model, cl, sig_r, ab);
    double sbar;
    if (!roots.empty()) {
      sbar = roots.back();
    } else if (sig_r >= sig_star * (1.0 - 1e-9)) {
      sbar = sst;
    } else {
      throw StructuralError(std::string("case ") + label + ": no intersection; " +
                            line_dump(model, cl, sig_r, ab));
    }
    sol.waves = scalar_s_wave(model, cl, left.s, sbar);
    sol.waves.push_back(make_contact(State{sbar, cl}, right, sig_r));
    sol.case_label = label;
  };

  if (left.s < sst - kCaseTol) {
    const double sig_l = h(left.s, cl);
    const auto roots = require_roots(model, cr, sig_l, ab, "1");
    const double sbar = roots.front();
    const double big_b = roots.back();
    if (right.s < big_b - kCaseTol) {
      sol.waves.push_back(make_contact(left, State{sbar, cr}, sig_l));
      append(sol.waves, scalar_s_wave(model, cr, sbar, right.s));
      sol.case_label = "1a";
    } else {
      b_case("1b");
    }
  } else {
    const auto roots = require_roots(model, cr, sig_star, ab, "2");
    const double sbar = roots.front();
    const double big_a = roots.back();
    if (right.s <= big_a + kCaseTol) {
      sol.waves = scalar_s_wave(model, cl, left.s, sst);
      sol.waves.push_back(make_contact(State{sst, cl}, State{sbar, cr}, sig_star));
      append(sol.waves, scalar_s_wave(model, cr, sbar, right.s));
      sol.case_label = "2a";
    } else {
      b_case("2b");
    }
  }
  snap_speeds(sol.waves);
  return sol;
}

RiemannSolution solve_riemann_by_enumeration(const PolymerModel& model, State left, State right) {
  left = State{model.checked_s(left.s), model.checked_c(left.c)};
  right = State{model.checked_s(right.s), model.checked_c(right.c)};
  if (left.c == right.c) {
    throw StructuralError("enumeration needs distinct concentrations");
  }
  const double cl = left.c;
  const double cr = right.c;
  const double ab = abar(model, cl, cr);
  auto h = [&](double s, double c) { return model.flux(s, c) / (s + ab); };

  struct Candidate {
    double s_minus;
    double s_plus;
    double sigma;
  };
  std::vector<Candidate> candidates;
  auto on_right = [&](double sm, double sigma) {
    for (double r : secant_intersections(model, cr, sigma, ab)) candidates.push_back({sm, r, sigma});
  };
  auto on_left = [&](double sp, double sigma) {
    for (double r : secant_intersections(model, cl, sigma, ab)) candidates.push_back({r, sp, sigma});
  };
  // Tangency of the secant family with f(., c): it splits each curve into
  // the two branches of the level sets of h.
  auto tangency = [&](double c, double c_other) -> std::optional<double> {
    try {
      return s_star(model, c, c_other);
    } catch (const StructuralError&) {
      return std::nullopt;
    }
  };
  const Interval& dom = model.s_domain();
  auto split_point = [&](std::optional<double> t, double c) {
    if (t) return *t;
    return h(dom.hi, c) >= h(dom.lo, c) ? dom.hi : dom.lo;
  };
  const std::optional<double> t_left = tangency(cl, cr);
  const std::optional<double> t_right = tangency(cr, cl);
  const double split_l = split_point(t_left, cl);
  const double split_r = split_point(t_right, cr);

  on_right(left.s, h(left.s, cl));
  on_left(right.s, h(right.s, cr));
  if (t_left) on_right(*t_left, h(*t_left, cl));
  if (t_right) on_left(*t_right, h(*t_right, cr));

  // A contact stays on one branch of its level set; a tangency point
  // belongs to both.
  auto same_branch = [&](const Candidate& cand) {
    const double tol = 1e-9;
    const bool l_low = cand.s_minus <= split_l + tol;
    const bool l_high = cand.s_minus >= split_l - tol;
    const bool r_low = cand.s_plus <= split_r + tol;
    const bool r_high = cand.s_plus >= split_r - tol;
    return (l_low && r_low) || (l_high && r_high);
  };

  for (const Candidate& cand : candidates) {
    if (!same_branch(cand)) continue;
    auto lw = scalar_s_wave(model, cl, left.s, cand.s_minus);
    auto rw = scalar_s_wave(model, cr, cand.s_plus, right.s);
    const double left_max = lw.empty() ? -kInf : lw.back().speed_hi;
    const double right_min = rw.empty() ? kInf : rw.front().speed_lo;
    if (left_max <= cand.sigma + 1e-9 && right_min >= cand.sigma - 1e-9) {
      RiemannSolution sol;
      sol.left_state = left;
      sol.right_state = right;
      sol.case_label = "enumerated";
      sol.waves = std::move(lw);
      sol.waves.push_back(make_contact(State{cand.s_minus, cl}, State{cand.s_plus, cr}, cand.sigma));
      append(sol.waves, std::move(rw));
      snap_speeds(sol.waves);
      return sol;
    }
  }
  std::ostringstream os;
  os << "no admissible contact for (" << left.s << "," << left.c << ") -> (" << right.s << ","
     << right.c << ") in model '" << model.name() << "' after " << candidates.size()
     << " candidates";
  throw StructuralError(os.str());
}

std::optional<std::string> chain_violation(const PolymerModel& model,
                                           const RiemannSolution& solution, double tol) {
  auto close = [tol](State a, State b) {
    return std::abs(a.s - b.s) <= tol && std::abs(a.c - b.c) <= tol;
  };
  std::ostringstream os;
  const auto& waves = solution.waves;
  if (waves.empty()) {
    if (!close(solution.left_state, solution.right_state)) return "empty fan between distinct states";
    return std::nullopt;
  }
  if (!close(waves.front().left, solution.left_state)) return "first wave does not start at left state";
  if (!close(waves.back().right, solution.right_state)) return "last wave does not end at right state";
  for (std::size_t k = 0; k < waves.size(); ++k) {
    const Wave& w = waves[k];
    if (k > 0) {
      if (!close(waves[k - 1].right, w.left)) {
        os << "wave " << k << " does not continue wave " << k - 1;
        return os.str();
      }
      if (waves[k - 1].speed_hi > w.speed_lo + 1e-12) {
        os << "speeds decrease between wave " << k - 1 << " and " << k;
        return os.str();
      }
    }
    const double fl = model.flux(w.left.s, w.left.c);
    const double fr = model.flux(w.right.s, w.right.c);
    switch (w.kind) {
      case WaveKind::s_shock:
        if (w.left.c != w.right.c) return "shock changes c";
        if (std::abs(w.speed_lo * (w.right.s - w.left.s) - (fr - fl)) > tol) {
          os << "Rankine-Hugoniot residual of wave " << k;
          return os.str();
        }
        break;
      case WaveKind::s_rarefaction:
        if (w.left.c != w.right.c) return "rarefaction changes c";
        if (w.speed_lo > w.speed_hi) return "rarefaction speeds reversed";
        if (std::abs(w.speed_lo - model.flux_ds(w.left.s, w.left.c)) > tol ||
            std::abs(w.speed_hi - model.flux_ds(w.right.s, w.right.c)) > tol) {
          os << "rarefaction " << k << " edge speeds differ from f_s";
          return os.str();
        }
        break;
      case WaveKind::c_contact: {
        if (w.left.c == w.right.c) return "contact without c jump";
        const double ab = abar(model, w.left.c, w.right.c);
        const double sl = fl / (w.left.s + ab);
        const double sr = fr / (w.right.s + ab);
        if (std::abs(sl - sr) > tol || std::abs(w.speed_lo - sl) > tol) {
          os << "contact " << k << " speed mismatch " << sl << " vs " << sr;
          return os.str();
        }
        break;
      }
    }
  }
  return std::nullopt;
}

double TwoFluxSolution::sample(double xi) const {
  RiemannSolution part;
  if (xi < 0.0) {
    part.left_state = State{u_left, c};
    part.right_state = State{u_minus, c};
    part.waves = left_waves;
  } else {
    part.left_state = State{u_plus, c};
    part.right_state = State{u_right, c};
    part.waves = right_waves;
  }
  return part.sample(xi).s;
}

TwoFluxSolution scalar_two_flux_riemann(const ScalarFlux& f_left, const ScalarFlux& f_right,
                                        double c, double u_left, double u_right) {
  const Interval& d = f_left.domain;
  if (d.lo != f_right.domain.lo || d.hi != f_right.domain.hi ||
      std::abs(f_left.f(d.lo) - f_right.f(d.lo)) > 1e-12 ||
      std::abs(f_left.f(d.hi) - f_right.f(d.hi)) > 1e-12) {
    throw ModelError("two-flux Riemann problem: endpoint values of the fluxes differ");
  }
  TwoFluxSolution sol;
  sol.c = c;
  sol.u_left = u_left;
  sol.u_right = u_right;
  sol.flux = std::min(f_left.f(std::min(u_left, f_left.theta)),
                      f_right.f(std::max(u_right, f_right.theta)));
  const double flux = sol.flux;
  if (std::abs(f_left.f(u_left) - flux) <= 1e-13) {
    sol.u_minus = u_left;
  } else {
    sol.u_minus = monotone_root([&](double u) { return f_left.f(u) - flux; }, f_left.theta, d.hi);
  }
  if (std::abs(f_right.f(u_right) - flux) <= 1e-13) {
    sol.u_plus = u_right;
  } else {
    sol.u_plus = monotone_root([&](double u) { return f_right.f(u) - flux; }, d.lo, f_right.theta);
  }
  sol.left_waves = scalar_waves(f_left, c, u_left, sol.u_minus);
  sol.right_waves = scalar_waves(f_right, c, sol.u_plus, u_right);
  return sol;
}

State DiscontinuousRiemannSolution::sample(double xi) const {
  return xi < 0.0 ? left_part.sample(xi) : right_part.sample(xi);
}

DiscontinuousRiemannSolution solve_riemann_discontinuous(const DiscontinuousModel& dmodel,
                                                         State left, State right) {
  const PolymerModel& ml = dmodel.left();
  const PolymerModel& mr = dmodel.right();
  left = State{ml.checked_s(left.s), ml.checked_c(left.c)};
  right = State{mr.checked_s(right.s), mr.checked_c(right.c)};
  if (left.c < right.c) {
    throw StructuralError("discontinuous Riemann problem with c_L < c_R is not covered");
  }
  const double cl = left.c;
  const ScalarFlux fl = ScalarFlux::at(ml, cl);
  const ScalarFlux fr = ScalarFlux::at(mr, cl);
  const double max_l = fl.f(fl.theta);
  const double max_r = fr.f(fr.theta);
  if (max_l > max_r + 1e-12) {
    std::ostringstream os;
    os << "discontinuous Riemann problem needs max f_l <= max f_r at c_L=" << cl << " (got "
       << max_l << " > " << max_r << ")";
    throw StructuralError(os.str());
  }

  DiscontinuousRiemannSolution out;
  if (left.c == right.c) {
    const auto two = scalar_two_flux_riemann(fl, fr, cl, left.s, right.s);
    out.left_part = RiemannSolution{left, State{two.u_minus, cl}, two.left_waves, "scalar"};
    out.right_part = RiemannSolution{State{two.u_plus, cl}, right, two.right_waves, "scalar"};
    out.interface_left = State{two.u_minus, cl};
    out.interface_right = State{two.u_plus, cl};
    out.flux = two.flux;
    out.case_label = "scalar";
    return out;
  }

  const double supply = fl.f(std::min(left.s, fl.theta));
  const auto demand_sol = solve_riemann(mr, State{fr.theta, cl}, right);
  const State at0 = demand_sol.sample(0.0);
  const double demand = mr.flux(at0.s, at0.c);
  const double flux = std::min(supply, demand);
  const Interval& d = mr.s_domain();
  double u_interface;
  if (supply <= demand) {
    u_interface = monotone_root([&](double u) { return fr.f(u) - supply; }, d.lo, fr.theta);
  } else {
    u_interface = monotone_root([&](double u) { return fr.f(u) - demand; }, fr.theta, d.hi);
  }

  const auto two = scalar_two_flux_riemann(fl, fr, cl, left.s, u_interface);
  auto right_part = solve_riemann(mr, State{u_interface, cl}, right);
  for (const Wave& w : two.left_waves) {
    if (w.speed_hi > 1e-9) throw StructuralError("interface construction: left wave moves right");
  }
  for (const Wave& w : right_part.waves) {
    if (w.speed_lo < -1e-9) throw StructuralError("interface construction: right wave moves left");
  }
  out.left_part = RiemannSolution{left, State{two.u_minus, cl}, two.left_waves, "problem-I"};
  out.right_part = std::move(right_part);
  out.interface_left = State{two.u_minus, cl};
  out.interface_right = State{u_interface, cl};
  out.flux = flux;
  out.case_label = std::string(left.s >= fl.theta ? "1" : "2") + (supply <= demand ? "a" : "b");
  return out;
}

}  // namespace polyflood
