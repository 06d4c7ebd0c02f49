#include "polyflood/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polyflood/errors.hpp"
#include "polyflood/riemann.hpp"

namespace polyflood {

Physics::Physics(PolymerModel model)
    : left_(model),
      right_(model),
      left_theta_(std::make_shared<ThetaTable>(model)),
      right_theta_(left_theta_) {}

Physics::Physics(DiscontinuousModel dmodel)
    : left_(dmodel.left()),
      right_(dmodel.right()),
      dmodel_(std::move(dmodel)),
      left_theta_(std::make_shared<ThetaTable>(left_)),
      right_theta_(std::make_shared<ThetaTable>(right_)) {}

const DiscontinuousModel& Physics::discontinuous() const {
  if (!dmodel_) throw ModelError("physics is continuous in x");
  return *dmodel_;
}

bool Physics::on_left(const Grid1D& grid, int cell) const {
  if (!dmodel_) return true;
  if (!grid.interface_index) throw ConfigError("discontinuous physics on a grid without interface");
  return cell < *grid.interface_index;
}

const PolymerModel& Physics::model_at(const Grid1D& grid, int cell) const {
  return on_left(grid, cell) ? left_ : right_;
}

double Physics::theta_at(const Grid1D& grid, int cell, double c) const {
  return on_left(grid, cell) ? (*left_theta_)(c) : (*right_theta_)(c);
}

Grid1D Physics::make_grid(double x_lo, double x_hi, int n_cells) const {
  if (n_cells < 1) throw ConfigError("grid needs at least one cell");
  if (!(x_hi > x_lo)) throw ConfigError("grid needs x_lo < x_hi");
  Grid1D grid{x_lo, x_hi, n_cells, std::nullopt};
  if (dmodel_) {
    const double pos = dmodel_->interface_position();
    const double k = std::round((pos - x_lo) / grid.h());
    if (k < 0 || k > n_cells || std::abs(grid.face(static_cast<int>(k)) - pos) > grid.h() * 1e-9) {
      std::ostringstream os;
      os << "interface position " << pos << " is not a face of the " << n_cells << "-cell grid on ["
         << x_lo << "," << x_hi << "]";
      throw ConfigError(os.str());
    }
    grid.interface_index = static_cast<int>(k);
  }
  return grid;
}

void Diagnostics::merge(const Diagnostics& other) {
  steps += other.steps;
  recover_iterations += other.recover_iterations;
  upstream_ambiguous += other.upstream_ambiguous;
  for (std::size_t k = 0; k < godunov_cases.size(); ++k) godunov_cases[k] += other.godunov_cases[k];
  godunov_dflu_mismatch += other.godunov_dflu_mismatch;
  interface_fallbacks += other.interface_fallbacks;
}

double recover_c(double s_new, double rhs, const PolymerModel& model, std::optional<double> guess,
                 int* iterations) {
  const Interval& d = model.c_domain();
  auto m = [&](double c) { return c * s_new + model.adsorption(c); };
  const double m_lo = m(d.lo);
  const double m_hi = m(d.hi);
  if (iterations) *iterations = 0;
  if (!(rhs >= m_lo - tolerances::kDomainSlack && rhs <= m_hi + tolerances::kDomainSlack)) {
    std::ostringstream os;
    os << "conserved polymer amount " << rhs << " outside attainable [" << m_lo << "," << m_hi
       << "] at s=" << s_new;
    throw StepError(os.str());
  }
  if (rhs <= m_lo) return d.lo;
  if (rhs >= m_hi) return d.hi;

  double a = d.lo;
  double b = d.hi;
  double c = guess ? std::clamp(*guess, a, b) : 0.5 * (a + b);
  int it = 0;
  for (; it < 200; ++it) {
    const double r = m(c) - rhs;
    if (std::abs(r) <= 1e-12) break;
    if (r > 0.0) {
      b = c;
    } else {
      a = c;
    }
    double next = c - r / (s_new + model.adsorption_deriv(c));
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (b - a <= 1e-15) {
      c = next;
      break;
    }
    c = next;
  }
  if (iterations) *iterations = it;
  const double residual = std::abs(m(c) - rhs);
  if (residual > 1e-12 * std::max(1.0, std::abs(rhs))) {
    std::ostringstream os;
    os << "concentration recovery stalled: residual " << residual << " at s=" << s_new;
    throw StepError(os.str());
  }
  return c;
}

namespace {

FluxPair interface_godunov(const Physics& physics, const FaceStates& face, Diagnostics& diag) {
  const PolymerModel& ml = physics.left();
  const PolymerModel& mr = physics.right();
  if (face.c_i >= face.c_ip1) {
    try {
      const auto sol = solve_riemann_discontinuous(physics.discontinuous(),
                                                   State{face.s_i, face.c_i},
                                                   State{face.s_ip1, face.c_ip1});
      return FluxPair{sol.flux, face.c_i * sol.flux};
    } catch (const StructuralError&) {
    }
  }
  ++diag.interface_fallbacks;
  return dflu(ml, mr, face);
}

}  // namespace

SchemeState step(const SchemeState& state, const Physics& physics, const Grid1D& grid,
                 const FluxScheme& scheme, const BoundarySpec& boundary, double dt,
                 StepTrace* trace) {
  const int n = grid.n_cells;
  if (static_cast<int>(state.s.size()) != n || static_cast<int>(state.c.size()) != n) {
    throw ConfigError("state size does not match the grid");
  }
  if (!(dt > 0.0)) throw StepError("time step must be positive");
  const double h = grid.h();
  const double lam = dt / h;

  // Extended arrays: index e holds cell e - 1, so ghosts sit at 0 and n + 1.
  std::vector<double> se(n + 2);
  std::vector<double> ce(n + 2);
  std::vector<double> th(n + 2);
  for (int i = 0; i < n; ++i) {
    se[i + 1] = state.s[i];
    ce[i + 1] = state.c[i];
  }
  auto ghost = [&](const BoundarySide& side, int e, int inner) {
    if (side.kind == BoundarySide::Kind::dirichlet) {
      se[e] = side.value.s;
      ce[e] = side.value.c;
    } else {
      se[e] = se[inner];
      ce[e] = ce[inner];
    }
  };
  ghost(boundary.left, 0, 1);
  ghost(boundary.right, n + 1, n);
  for (int e = 0; e < n + 2; ++e) {
    th[e] = physics.theta_at(grid, e - 1, physics.model_at(grid, e - 1).checked_c(ce[e]));
  }

  Diagnostics local;
  std::vector<FluxPair> faces(n + 1);
  for (int k = 0; k <= n; ++k) {
    const bool closed = (k == 0 && boundary.left.kind == BoundarySide::Kind::closed) ||
                        (k == n && boundary.right.kind == BoundarySide::Kind::closed);
    if (closed) {
      faces[k] = FluxPair{0.0, 0.0};
      continue;
    }
    const PolymerModel& ml = physics.model_at(grid, k - 1);
    const PolymerModel& mr = physics.model_at(grid, k);
    const FaceStates face{se[k], ce[k], se[k + 1], ce[k + 1], th[k], th[k + 1]};
    const bool interface = !ml.same_as(mr);
    switch (scheme.tag) {
      case FluxTag::dflu:
        faces[k] = dflu(ml, mr, face);
        break;
      case FluxTag::godunov:
        if (interface) {
          faces[k] = interface_godunov(physics, face, local);
        } else {
          const auto res = godunov_classified(ml, face);
          faces[k] = res.flux;
          ++local.godunov_cases[static_cast<std::size_t>(res.kase)];
          if (std::abs(res.flux.F - dflu(ml, mr, face).F) > 1e-12) ++local.godunov_dflu_mismatch;
        }
        break;
      case FluxTag::upstream_mobility: {
        const auto res = upstream_mobility_classified(ml, mr, face);
        faces[k] = res.flux;
        if (res.ambiguous) ++local.upstream_ambiguous;
        break;
      }
      case FluxTag::lax_friedrichs:
        faces[k] = lax_friedrichs(ml, mr, face, lam);
        break;
      case FluxTag::force:
        faces[k] = force(ml, mr, face, lam);
        break;
    }
  }

  SchemeState out;
  out.time = state.time + dt;
  out.s.resize(n);
  out.c.resize(n);
  for (int i = 0; i < n; ++i) {
    const PolymerModel& m = physics.model_at(grid, i);
    const Interval& sd = m.s_domain();
    double s_new = state.s[i] - lam * (faces[i + 1].F - faces[i].F);
    if (!sd.contains(s_new, tolerances::kDomainSlack)) {
      std::ostringstream os;
      os << "cell " << i << " (x=" << grid.center(i) << "): saturation " << s_new
         << " left [" << sd.lo << "," << sd.hi << "] at t=" << out.time << " (lambda=" << lam
         << "); the CFL bound is violated";
      throw StepError(os.str());
    }
    s_new = std::clamp(s_new, sd.lo, sd.hi);
    const double rhs =
        state.c[i] * state.s[i] + m.adsorption(state.c[i]) - lam * (faces[i + 1].G - faces[i].G);
    int iterations = 0;
    try {
      out.c[i] = recover_c(s_new, rhs, m, state.c[i], &iterations);
    } catch (const StepError& e) {
      std::ostringstream os;
      os << "cell " << i << " (x=" << grid.center(i) << ") at t=" << out.time << ": " << e.what();
      throw StepError(os.str());
    }
    local.recover_iterations += iterations;
    out.s[i] = s_new;
  }
  local.steps = 1;
  if (trace) {
    trace->faces = std::move(faces);
    trace->diagnostics = local;
  }
  return out;
}

double max_wave_speed(const PolymerModel& model) {
  return max_wave_speed(model, model.c_domain());
}

double max_wave_speed(const PolymerModel& model, const Interval& cd) {
  const Interval& sd = model.s_domain();
  constexpr int kS = 512;
  constexpr int kC = 32;
  double m = 0.0;
  for (int j = 0; j < kC; ++j) {
    const double c = j + 1 == kC ? cd.hi : cd.lo + cd.width() * j / (kC - 1);
    const double ap = model.adsorption_deriv(c);
    for (int k = 0; k < kS; ++k) {
      const double s = k + 1 == kS ? sd.hi : sd.lo + sd.width() * k / (kS - 1);
      m = std::max(m, std::abs(model.flux_ds(s, c)));
      m = std::max(m, model.flux(s, c) / (s + ap));
    }
  }
  return m;
}

double max_wave_speed(const Physics& physics) {
  return max_wave_speed(physics, physics.left().c_domain());
}

double max_wave_speed(const Physics& physics, const Interval& c_range) {
  const double m = max_wave_speed(physics.left(), c_range);
  return physics.is_discontinuous() ? std::max(m, max_wave_speed(physics.right(), c_range)) : m;
}

double cfl_max_dt(const Physics& physics, double h, double safety, double dt_max) {
  const double m = max_wave_speed(physics);
  if (m > 0.0) return std::min(safety * h / m, dt_max);
  if (std::isinf(dt_max)) throw StepError("zero wave speed and no dt_max cap");
  return dt_max;
}

}  // namespace polyflood
