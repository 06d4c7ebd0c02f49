#include "polyflood/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polyflood/errors.hpp"

namespace polyflood {

struct PolymerModel::Impl {
  std::string name;
  Interval s_domain;
  Interval c_domain;
  Field2 flux;
  Field2 flux_ds;
  Field2 flux_dc;
  Adsorption adsorption;

  bool mobility_based = false;
  Mobility mobility_1;
  Mobility mobility_2;
  double gravity_1 = 0.0;
  double gravity_2 = 0.0;
  double total_velocity = 0.0;
};

namespace {

std::vector<double> linspace(const Interval& iv, int points) {
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    xs[static_cast<std::size_t>(k)] = iv.lo + iv.width() * k / (points - 1);
  }
  xs.back() = iv.hi;
  return xs;
}

[[noreturn]] void fail(const std::string& model, const std::string& what) {
  throw ModelError("model '" + model + "': " + what);
}

void validate(const PolymerModel& m, const PolymerModel::Impl& impl) {
  using namespace tolerances;
  const auto& name = impl.name;
  if (!(impl.s_domain.width() > 0.0) || !(impl.c_domain.width() > 0.0)) {
    fail(name, "empty saturation or concentration domain");
  }
  if (!impl.adsorption.value || !impl.adsorption.derivative) {
    fail(name, "adsorption and its derivative are required");
  }
  const auto ss = linspace(impl.s_domain, kScanPoints);
  const auto cs = linspace(impl.c_domain, kValidationCSamples);

  if (std::abs(impl.adsorption.value(impl.c_domain.lo)) > 1e-12) {
    fail(name, "adsorption must vanish at the lowest concentration");
  }
  for (double c : cs) {
    if (!(impl.adsorption.derivative(c) > 0.0)) {
      fail(name, "adsorption derivative must be positive");
    }
  }

  if (impl.mobility_based) {
    for (double c : cs) {
      if (std::abs(impl.mobility_1.value(impl.s_domain.lo, c)) > 1e-12) {
        fail(name, "phase-1 mobility must vanish at s_min");
      }
      if (std::abs(impl.mobility_2.value(impl.s_domain.hi, c)) > 1e-12) {
        fail(name, "phase-2 mobility must vanish at s_max");
      }
      double prev1 = -INFINITY;
      double prev2 = INFINITY;
      for (double s : ss) {
        const double l1 = impl.mobility_1.value(s, c);
        const double l2 = impl.mobility_2.value(s, c);
        if (!(l1 + l2 > 0.0)) {
          std::ostringstream os;
          os << "total mobility vanishes at (s,c)=(" << s << "," << c << ")";
          fail(name, os.str());
        }
        if (l1 < prev1 - 1e-12) fail(name, "phase-1 mobility must be nondecreasing in s");
        if (l2 > prev2 + 1e-12) fail(name, "phase-2 mobility must be nonincreasing in s");
        prev1 = l1;
        prev2 = l2;
      }
    }
  }

  const double f_lo = m.flux(impl.s_domain.lo, cs.front());
  const double f_hi = m.flux(impl.s_domain.hi, cs.front());
  std::vector<double> fs(ss.size());
  for (double c : cs) {
    if (std::abs(m.flux(impl.s_domain.lo, c) - f_lo) > 1e-12 ||
        std::abs(m.flux(impl.s_domain.hi, c) - f_hi) > 1e-12) {
      fail(name, "endpoint fluxes must not depend on c");
    }
    for (std::size_t k = 0; k < ss.size(); ++k) {
      fs[k] = m.flux(ss[k], c);
      if (!std::isfinite(fs[k]) || fs[k] < -1e-12) fail(name, "fractional flow must be finite and nonnegative");
    }
    int maxima = 0;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const bool above_left = k == 0 || fs[k] > fs[k - 1];
      const bool above_right = k + 1 == fs.size() || fs[k] > fs[k + 1];
      if (above_left && above_right) ++maxima;
    }
    if (maxima > 1) {
      std::ostringstream os;
      os << "s -> f(s," << c << ") has " << maxima << " strict local maxima; it must be unimodal";
      fail(name, os.str());
    }
  }
}

double central_difference(const std::function<double(double)>& g, double x, const Interval& iv) {
  const double h = tolerances::kFdRelStep * iv.width();
  const double lo = std::max(iv.lo, x - h);
  const double hi = std::min(iv.hi, x + h);
  return (g(hi) - g(lo)) / (hi - lo);
}

}  // namespace

PolymerModel::PolymerModel(MobilityModelSpec spec) {
  if (!spec.mobility_1.value || !spec.mobility_2.value) {
    fail(spec.name, "both mobilities are required");
  }
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(spec.name);
  impl->s_domain = spec.s_domain;
  impl->c_domain = spec.c_domain;
  impl->adsorption = std::move(spec.adsorption);
  impl->mobility_based = true;
  impl->mobility_1 = std::move(spec.mobility_1);
  impl->mobility_2 = std::move(spec.mobility_2);
  impl->gravity_1 = spec.gravity_1;
  impl->gravity_2 = spec.gravity_2;
  impl->total_velocity = spec.total_velocity;

  const Mobility m1 = impl->mobility_1;
  const Mobility m2 = impl->mobility_2;
  const double dg = spec.gravity_1 - spec.gravity_2;
  const double phi = spec.total_velocity;

  impl->flux = [m1, m2, dg, phi](double s, double c) {
    const double l1 = m1.value(s, c);
    const double l2 = m2.value(s, c);
    return l1 / (l1 + l2) * (phi + dg * l2);
  };
  // Quotient rule on N / T with N = l1 (phi + dg l2), T = l1 + l2.
  auto quotient = [m1, m2, dg, phi](double s, double c, const Field2& d1, const Field2& d2) {
    const double l1 = m1.value(s, c);
    const double l2 = m2.value(s, c);
    const double dl1 = d1(s, c);
    const double dl2 = d2(s, c);
    const double total = l1 + l2;
    const double numer = l1 * (phi + dg * l2);
    const double dnumer = dl1 * (phi + dg * l2) + l1 * dg * dl2;
    return (dnumer * total - numer * (dl1 + dl2)) / (total * total);
  };
  if (m1.d_ds && m2.d_ds) {
    impl->flux_ds = [quotient, m1, m2](double s, double c) { return quotient(s, c, m1.d_ds, m2.d_ds); };
  }
  if (m1.d_dc && m2.d_dc) {
    impl->flux_dc = [quotient, m1, m2](double s, double c) { return quotient(s, c, m1.d_dc, m2.d_dc); };
  }
  impl_ = impl;
  validate(*this, *impl);
}

PolymerModel::PolymerModel(FluxModelSpec spec) {
  if (!spec.flux) fail(spec.name, "flux function is required");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(spec.name);
  impl->s_domain = spec.s_domain;
  impl->c_domain = spec.c_domain;
  impl->flux = std::move(spec.flux);
  impl->flux_ds = std::move(spec.flux_ds);
  impl->flux_dc = std::move(spec.flux_dc);
  impl->adsorption = std::move(spec.adsorption);
  impl_ = impl;
  validate(*this, *impl);
}

const std::string& PolymerModel::name() const { return impl_->name; }
const Interval& PolymerModel::s_domain() const { return impl_->s_domain; }
const Interval& PolymerModel::c_domain() const { return impl_->c_domain; }

double PolymerModel::checked_s(double s) const {
  const auto& d = impl_->s_domain;
  if (d.contains(s)) return s;
  if (!d.contains(s, tolerances::kDomainSlack)) {
    std::ostringstream os;
    os << "saturation " << s << " outside [" << d.lo << "," << d.hi << "] for model '" << impl_->name
       << "'";
    throw DomainError(os.str());
  }
  return std::clamp(s, d.lo, d.hi);
}

double PolymerModel::checked_c(double c) const {
  const auto& d = impl_->c_domain;
  if (d.contains(c)) return c;
  if (!d.contains(c, tolerances::kDomainSlack)) {
    std::ostringstream os;
    os << "concentration " << c << " outside [" << d.lo << "," << d.hi << "] for model '"
       << impl_->name << "'";
    throw DomainError(os.str());
  }
  return std::clamp(c, d.lo, d.hi);
}

double PolymerModel::flux(double s, double c) const { return impl_->flux(checked_s(s), checked_c(c)); }

double PolymerModel::flux_ds(double s, double c) const {
  s = checked_s(s);
  c = checked_c(c);
  if (impl_->flux_ds) return impl_->flux_ds(s, c);
  return central_difference([&](double x) { return impl_->flux(x, c); }, s, impl_->s_domain);
}

double PolymerModel::flux_dc(double s, double c) const {
  s = checked_s(s);
  c = checked_c(c);
  if (impl_->flux_dc) return impl_->flux_dc(s, c);
  return central_difference([&](double x) { return impl_->flux(s, x); }, c, impl_->c_domain);
}

double PolymerModel::adsorption(double c) const { return impl_->adsorption.value(checked_c(c)); }
double PolymerModel::adsorption_deriv(double c) const {
  return impl_->adsorption.derivative(checked_c(c));
}

bool PolymerModel::has_mobilities() const { return impl_->mobility_based; }

double PolymerModel::mobility_1(double s, double c) const {
  if (!impl_->mobility_based) throw ModelError("model '" + impl_->name + "' has no mobilities");
  return impl_->mobility_1.value(checked_s(s), checked_c(c));
}

double PolymerModel::mobility_2(double s, double c) const {
  if (!impl_->mobility_based) throw ModelError("model '" + impl_->name + "' has no mobilities");
  return impl_->mobility_2.value(checked_s(s), checked_c(c));
}

double PolymerModel::gravity_1() const { return impl_->gravity_1; }
double PolymerModel::gravity_2() const { return impl_->gravity_2; }
double PolymerModel::total_velocity() const { return impl_->total_velocity; }

double abar(const PolymerModel& model, double c_left, double c) {
  const double dc = c - c_left;
  if (std::abs(dc) <= 1e-10) return model.adsorption_deriv(0.5 * (c + c_left));
  return (model.adsorption(c) - model.adsorption(c_left)) / dc;
}

double theta(const PolymerModel& model, double c) {
  const Interval& d = model.s_domain();
  c = model.checked_c(c);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = d.lo;
  double b = d.hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = model.flux(x1, c);
  double f2 = model.flux(x2, c);
  while (b - a > tolerances::kTheta) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = model.flux(x2, c);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = model.flux(x1, c);
    }
  }
  const double x = std::clamp(0.5 * (a + b), d.lo, d.hi);
  const double fx = model.flux(x, c);
  if (model.flux(d.hi, c) >= fx) return d.hi;
  if (model.flux(d.lo, c) > fx) return d.lo;
  return x;
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  const double ghi = g(hi);
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw StructuralError("bisection bracket has no sign change");
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(const std::function<double(double)>& g, double lo, double hi,
                               int points, double tol) {
  std::vector<double> roots;
  double x_prev = lo;
  double g_prev = 0.0;
  for (int k = 0; k < points; ++k) {
    const double x = k + 1 == points ? hi : lo + (hi - lo) * k / (points - 1);
    const double gx = g(x);
    if (gx == 0.0) {
      roots.push_back(x);
    } else if (k > 0 && g_prev != 0.0 && (g_prev > 0.0) != (gx > 0.0)) {
      roots.push_back(bisect(g, x_prev, x, tol));
    }
    x_prev = x;
    g_prev = gx;
  }
  return roots;
}

double s_star(const PolymerModel& model, double c_left, double c_right) {
  const double ab = abar(model, c_left, c_right);
  const Interval& d = model.s_domain();
  auto g = [&](double s) { return model.flux_ds(s, c_left) * (s + ab) - model.flux(s, c_left); };
  const int n = tolerances::kScanPoints;
  double x_prev = d.lo;
  double g_prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = k + 1 == n ? d.hi : d.lo + d.width() * k / (n - 1);
    const double gx = g(x);
    if (g_prev > 0.0 && gx <= 0.0) {
      return gx == 0.0 ? x : bisect(g, x_prev, x);
    }
    if (gx != 0.0 || k > 0) {
      x_prev = x;
      g_prev = gx;
    }
  }
  std::ostringstream os;
  os << "no resonance saturation s* for c_L=" << c_left << ", c_R=" << c_right << " in model '"
     << model.name() << "'";
  throw StructuralError(os.str());
}

std::vector<double> secant_intersections(const PolymerModel& model, double c, double sigma,
                                         double abar_val) {
  const Interval& d = model.s_domain();
  auto g = [&](double s) { return model.flux(s, c) - sigma * (s + abar_val); };
  auto dg = [&](double s) { return model.flux_ds(s, c) - sigma; };
  const int n = tolerances::kScanPoints;
  std::vector<double> roots = scan_roots(g, d.lo, d.hi, n);

  // Two roots closer than the scan spacing hide under a negative sampled
  // local maximum of g; refine it at the zero of g'.
  std::vector<double> xs(n);
  std::vector<double> gs(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = k + 1 == n ? d.hi : d.lo + d.width() * k / (n - 1);
    gs[k] = g(xs[k]);
  }
  for (int k = 1; k + 1 < n; ++k) {
    if (!(gs[k] < 0.0 && gs[k] >= gs[k - 1] && gs[k] >= gs[k + 1])) continue;
    const double a = xs[k - 1];
    const double b = xs[k + 1];
    if (!(dg(a) > 0.0 && dg(b) < 0.0)) continue;
    const double top = bisect(dg, a, b);
    const double g_top = g(top);
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(model.flux(top, c)) + std::abs(sigma * (top + abar_val)));
    if (g_top > 0.0) {
      roots.push_back(bisect(g, a, top));
      roots.push_back(bisect(g, top, b));
    } else if (g_top > -noise) {
      roots.push_back(top);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

DiscontinuousModel::DiscontinuousModel(PolymerModel left, PolymerModel right,
                                       double interface_position)
    : left_(std::move(left)), right_(std::move(right)), interface_position_(interface_position) {
  const auto& ls = left_.s_domain();
  const auto& rs = right_.s_domain();
  if (ls.lo != rs.lo || ls.hi != rs.hi) {
    throw ModelError("discontinuous model: saturation domains differ");
  }
  for (int k = 0; k < tolerances::kValidationCSamples; ++k) {
    const double c = left_.c_domain().lo + left_.c_domain().width() * k /
                                               (tolerances::kValidationCSamples - 1);
    if (std::abs(left_.adsorption(c) - right_.adsorption(c)) > 1e-12) {
      throw ModelError("discontinuous model: adsorption must be shared");
    }
    if (std::abs(left_.flux(ls.lo, c) - right_.flux(ls.lo, c)) > 1e-12 ||
        std::abs(left_.flux(ls.hi, c) - right_.flux(ls.hi, c)) > 1e-12) {
      throw ModelError("discontinuous model: endpoint fluxes of both sides must agree");
    }
  }
}

ThetaTable::ThetaTable(const PolymerModel& model, int nodes) : c_domain_(model.c_domain()) {
  if (nodes < 2) throw ModelError("theta table needs at least two nodes");
  values_.resize(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) {
    const double c = k + 1 == nodes ? c_domain_.hi : c_domain_.lo + c_domain_.width() * k / (nodes - 1);
    values_[static_cast<std::size_t>(k)] = theta(model, c);
  }
}

double ThetaTable::operator()(double c) const {
  const double u = (c - c_domain_.lo) / c_domain_.width() * static_cast<double>(values_.size() - 1);
  if (u <= 0.0) return values_.front();
  if (u >= static_cast<double>(values_.size() - 1)) return values_.back();
  const auto k = static_cast<std::size_t>(u);
  const double w = u - static_cast<double>(k);
  return (1.0 - w) * values_[k] + w * values_[k + 1];
}

}  // namespace polyflood
