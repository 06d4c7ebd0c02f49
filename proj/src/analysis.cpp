#include "polyflood/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "polyflood/errors.hpp"

namespace polyflood {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

L1Error l1_error(const SchemeState& state, const Sampler& reference, const Grid1D& grid) {
  L1Error e;
  const double h = grid.h();
  for (int i = 0; i < grid.n_cells; ++i) {
    const State r = reference(grid.center(i));
    e.s += std::abs(state.s[i] - r.s) * h;
    e.c += std::abs(state.c[i] - r.c) * h;
  }
  return e;
}

L1Error l1_distance(const SchemeState& a, const SchemeState& b, const Grid1D& grid) {
  if (a.s.size() != b.s.size()) throw ConfigError("l1_distance: states differ in size");
  L1Error e;
  const double h = grid.h();
  for (std::size_t i = 0; i < a.s.size(); ++i) {
    e.s += std::abs(a.s[i] - b.s[i]) * h;
    e.c += std::abs(a.c[i] - b.c[i]) * h;
  }
  return e;
}

std::optional<double> convergence_rate(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return std::nullopt;
  return std::log2(e_coarse / e_fine);
}

double total_variation(const std::vector<double>& values) {
  double tv = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) tv += std::abs(values[i] - values[i - 1]);
  return tv;
}

InterfaceTrace interface_trace(const SchemeState& state, const Grid1D& grid, int interface_index) {
  if (interface_index < 1 || interface_index >= grid.n_cells) {
    throw ConfigError("interface trace needs a face with cells on both sides");
  }
  const auto k = static_cast<std::size_t>(interface_index);
  return InterfaceTrace{state.s[k - 1], state.s[k], state.c[k - 1], state.c[k]};
}

InterfaceTrace interface_trace(const SchemeState& state, const Grid1D& grid, int interface_index,
                               double distance) {
  if (!(distance >= 0.0)) throw ConfigError("trace distance must be non-negative");
  const int offset = static_cast<int>(std::floor(distance / grid.h()));
  const int left = interface_index - 1 - offset;
  const int right = interface_index + offset;
  if (left < 0 || right >= grid.n_cells) {
    throw ConfigError("trace distance reaches past the grid");
  }
  return InterfaceTrace{state.s[left], state.s[right], state.c[left], state.c[right]};
}

MonitorSample monitor_sample(const SchemeState& state, const Physics& physics, const Grid1D& grid) {
  MonitorSample m;
  m.t = state.time;
  const double h = grid.h();
  for (int i = 0; i < grid.n_cells; ++i) {
    const double s = state.s[i];
    const double c = state.c[i];
    m.mass_s += s * h;
    m.mass_sc += (c * s + physics.model_at(grid, i).adsorption(c)) * h;
    m.linf_c = std::max(m.linf_c, std::abs(c));
  }
  m.tv_c = total_variation(state.c);
  m.tv_s = total_variation(state.s);
  return m;
}

SchemeState restrict_to(const SchemeState& fine, int coarse_cells) {
  const int n = static_cast<int>(fine.s.size());
  if (coarse_cells < 1 || n % coarse_cells != 0) {
    throw ConfigError("fine grid size must be a multiple of the coarse one");
  }
  const int r = n / coarse_cells;
  SchemeState out;
  out.time = fine.time;
  out.s.assign(coarse_cells, 0.0);
  out.c.assign(coarse_cells, 0.0);
  for (int i = 0; i < n; ++i) {
    out.s[i / r] += fine.s[i] / r;
    out.c[i / r] += fine.c[i] / r;
  }
  return out;
}

LemmaCheck check_lemmas(const SchemeState& before, const SchemeState& after, const Physics& physics,
                        const Grid1D& grid, const BoundarySpec& boundary, double tol) {
  LemmaCheck out;
  const int n = grid.n_cells;
  auto fail = [&](bool& flag, const std::string& what) {
    if (out.first_failure.empty()) out.first_failure = what;
    flag = false;
  };
  const double ghost_c =
      boundary.left.kind == BoundarySide::Kind::dirichlet ? boundary.left.value.c : before.c[0];
  std::vector<double> c_old(n + 1);
  std::vector<double> c_new(n + 1);
  c_old[0] = ghost_c;
  c_new[0] = boundary.left.kind == BoundarySide::Kind::dirichlet ? ghost_c : after.c[0];
  for (int i = 0; i < n; ++i) {
    c_old[i + 1] = before.c[i];
    c_new[i + 1] = after.c[i];
  }

  for (int i = 0; i < n; ++i) {
    const Interval& d = physics.model_at(grid, i).s_domain();
    if (!d.contains(after.s[i], tol)) {
      fail(out.s_bounds, "saturation out of bounds at cell " + std::to_string(i));
      break;
    }
  }

  auto linf = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  if (linf(c_new) > linf(c_old) + tol) fail(out.linf_c, "max |c| increased");

  const double tv_old = total_variation(c_old);
  if (total_variation(c_new) > tv_old + tol) fail(out.tv_c, "TV(c) increased");

  double change = 0.0;
  for (int i = 0; i < n; ++i) change += std::abs(after.c[i] - before.c[i]);
  if (change > tv_old + tol) fail(out.time_difference, "sum |c_new - c| exceeds TV(c)");

  for (int i = 0; i < n; ++i) {
    const double lo = std::min(c_old[i], c_old[i + 1]);
    const double hi = std::max(c_old[i], c_old[i + 1]);
    if (after.c[i] < lo - tol || after.c[i] > hi + tol) {
      fail(out.convex_combination, "c outside [c_{i-1}, c_i] at cell " + std::to_string(i));
      break;
    }
  }
  return out;
}

void ConvergenceTable::add(double h, L1Error error) {
  ConvergenceRow row;
  row.h = h;
  row.err_s = error.s;
  row.err_c = error.c;
  if (!rows.empty()) {
    row.rate_s = convergence_rate(rows.back().err_s, error.s);
    row.rate_c = convergence_rate(rows.back().err_c, error.c);
  }
  rows.push_back(row);
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream os;
  os << "h,err_s,rate_s,err_c,rate_c\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : rows) {
    os << format_number(r.h) << ',' << format_number(r.err_s) << ',' << opt(r.rate_s) << ','
       << format_number(r.err_c) << ',' << opt(r.rate_c) << '\n';
  }
  return os.str();
}

std::string ConvergenceTable::to_text() const {
  std::ostringstream os;
  if (!label.empty()) os << label << '\n';
  os << std::left << std::setw(8) << "h" << std::right << std::setw(14) << "||s-s_h||" << std::setw(9)
     << "rate" << std::setw(14) << "||c-c_h||" << std::setw(9) << "rate" << '\n';
  auto rate = [](const std::optional<double>& v) {
    std::ostringstream r;
    if (v) r << std::fixed << std::setprecision(4) << *v;
    return r.str();
  };
  for (const auto& r : rows) {
    std::ostringstream h;
    const double inv = 1.0 / r.h;
    if (std::abs(inv - std::round(inv)) < 1e-9 * inv) {
      h << "1/" << static_cast<long>(std::round(inv));
    } else {
      h << r.h;
    }
    os << std::left << std::setw(8) << h.str() << std::right << std::setw(14) << std::scientific
       << std::setprecision(4) << r.err_s << std::setw(9) << rate(r.rate_s) << std::setw(14)
       << r.err_c << std::setw(9) << rate(r.rate_c) << std::defaultfloat << '\n';
  }
  return os.str();
}

}  // namespace polyflood
