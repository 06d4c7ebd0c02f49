#include "polyflood/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "polyflood/errors.hpp"
#include "polyflood/riemann.hpp"

namespace polyflood {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_plain(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("'" + key + "': cannot parse number '" + text + "'");
  }
  return v;
}

// Decimal, scientific, or a fraction p/q.
double parse_double(const std::string& text, const std::string& key) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain(trim(text), key);
  const double num = parse_plain(trim(text.substr(0, slash)), key);
  const double den = parse_plain(trim(text.substr(slash + 1)), key);
  if (den == 0.0) throw ConfigError("'" + key + "': zero denominator");
  return num / den;
}

int parse_int(const std::string& text, const std::string& key) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "': cannot parse integer '" + text + "'");
  }
  return v;
}

BoundarySide::Kind parse_boundary(const std::string& text, const std::string& key) {
  if (text == "dirichlet") return BoundarySide::Kind::dirichlet;
  if (text == "closed") return BoundarySide::Kind::closed;
  throw ConfigError("'" + key + "': expected dirichlet or closed, got '" + text + "'");
}

const char* boundary_name(BoundarySide::Kind k) {
  return k == BoundarySide::Kind::dirichlet ? "dirichlet" : "closed";
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

double domain_length(const ExperimentConfig& c) { return c.x_hi - c.x_lo; }

}  // namespace

std::vector<std::string> experiment_preset_names() {
  return {"exp-5.1-1", "exp-5.1-2", "exp-5.2-ivp", "exp-5.2-closed", "exp-6"};
}

ExperimentConfig experiment_preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  if (name == "exp-5.1-1" || name == "exp-5.1-2") {
    c.model = "quadratic-demo";
    c.left = name == "exp-5.1-1" ? State{2.5, 0.5} : State{2.3, 0.5};
    c.right = name == "exp-5.1-1" ? State{1.0, 0.0} : State{3.2, 0.0};
    c.jump = 0.5;
    c.x_lo = 0.0;
    c.x_hi = 2.0;
    c.cells = 200;
    c.lambda = 0.25;
    c.t_end = 0.5;
    c.snapshots = {0.5};
    c.fluxes = {FluxTag::godunov, FluxTag::dflu};
    return c;
  }
  if (name == "exp-5.2-ivp" || name == "exp-5.2-closed") {
    c.model = "two-phase";
    c.left = {0.9, 0.9};
    c.right = {0.1, 0.3};
    c.jump = 0.5;
    c.x_lo = 0.0;
    c.x_hi = 2.0;
    c.cells = 200;
    c.dt = 1.0 / 125.0;
    c.fluxes = {FluxTag::dflu, FluxTag::upstream_mobility, FluxTag::lax_friedrichs,
                FluxTag::force};
    c.reference_cells = 8000;
    if (name == "exp-5.2-ivp") {
      c.t_end = 1.5;
      c.snapshots = {0.0, 1.0, 1.5};
    } else {
      c.left_boundary = BoundarySide::Kind::closed;
      c.right_boundary = BoundarySide::Kind::closed;
      c.t_end = 3.0;
      c.snapshots = {1.0, 2.0, 3.0};
    }
    return c;
  }
  if (name == "exp-6") {
    c.model = "two-phase-discontinuous";
    c.interface_position = 0.0;
    c.left = {0.9, 0.9};
    c.right = {0.1, 0.3};
    c.jump = 0.0;
    c.x_lo = -2.0;
    c.x_hi = 2.0;
    c.cells = 200;
    c.dt = 1.0 / 600.0;
    c.t_end = 2.0;
    c.snapshots = {1.0, 2.0};
    c.fluxes = {FluxTag::dflu, FluxTag::upstream_mobility, FluxTag::lax_friedrichs,
                FluxTag::force};
    c.reference_cells = 3200;
    return c;
  }
  throw ConfigError("unknown experiment preset '" + name + "'");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig c) {
  std::string line;
  std::string section;
  int lineno = 0;
  bool dt_seen = false;
  bool lambda_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;
    auto num = [&] { return parse_double(value, full); };

    if (section == "experiment" && key == "name") {
      c.name = value;
    } else if (section == "model") {
      PowerLawParams& p = c.power_law;
      if (key == "preset") c.model = value;
      else if (key == "interface") c.interface_position = num();
      else if (key == "k1") p.k1 = num();
      else if (key == "p1") p.p1 = num();
      else if (key == "b1") p.b1 = num();
      else if (key == "k2") p.k2 = num();
      else if (key == "p2") p.p2 = num();
      else if (key == "g1") p.gravity_1 = num();
      else if (key == "g2") p.gravity_2 = num();
      else if (key == "phi") p.total_velocity = num();
      else if (key == "adsorption") p.adsorption = num();
      else throw ConfigError("unknown key '" + full + "'");
    } else if (section == "initial") {
      if (key == "s_left") c.left.s = num();
      else if (key == "c_left") c.left.c = num();
      else if (key == "s_right") c.right.s = num();
      else if (key == "c_right") c.right.c = num();
      else if (key == "jump") c.jump = num();
      else throw ConfigError("unknown key '" + full + "'");
    } else if (section == "grid") {
      if (key == "x_lo") c.x_lo = num();
      else if (key == "x_hi") c.x_hi = num();
      else if (key == "cells") c.cells = parse_int(value, full);
      else if (key == "left_boundary") c.left_boundary = parse_boundary(value, full);
      else if (key == "right_boundary") c.right_boundary = parse_boundary(value, full);
      else if (key == "reference_cells") c.reference_cells = parse_int(value, full);
      else if (key == "levels") {
        c.levels.clear();
        for (const auto& item : split(value, ',')) c.levels.push_back(parse_int(item, full));
      } else {
        throw ConfigError("unknown key '" + full + "'");
      }
    } else if (section == "time") {
      if (key == "t_end") {
        c.t_end = num();
      } else if (key == "dt") {
        c.dt = num();
        dt_seen = true;
        if (!lambda_seen) c.lambda.reset();
      } else if (key == "lambda") {
        c.lambda = num();
        lambda_seen = true;
        if (!dt_seen) c.dt.reset();
      } else if (key == "cfl_safety") {
        c.cfl_safety = num();
      } else if (key == "snapshots") {
        c.snapshots.clear();
        for (const auto& item : split(value, ',')) c.snapshots.push_back(parse_double(item, full));
      } else {
        throw ConfigError("unknown key '" + full + "'");
      }
    } else if (section == "scheme" && key == "fluxes") {
      c.fluxes.clear();
      for (const auto& item : split(value, ',')) c.fluxes.push_back(parse_flux_tag(item));
    } else if (section == "output") {
      if (key == "dir") c.out_dir = value;
      else if (key == "samples") c.samples = parse_int(value, full);
      else throw ConfigError("unknown key '" + full + "'");
    } else {
      throw ConfigError("unknown key '" + full + "'");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

std::string to_ini(const ExperimentConfig& c) {
  auto n = [](double v) { return format_number(v); };
  std::ostringstream os;
  os << "[experiment]\nname = " << c.name << "\n\n";
  os << "[model]\npreset = " << c.model << '\n';
  if (c.model == "power-law") {
    const PowerLawParams& p = c.power_law;
    os << "k1 = " << n(p.k1) << "\np1 = " << n(p.p1) << "\nb1 = " << n(p.b1) << "\nk2 = " << n(p.k2)
       << "\np2 = " << n(p.p2) << "\ng1 = " << n(p.gravity_1) << "\ng2 = " << n(p.gravity_2)
       << "\nphi = " << n(p.total_velocity) << "\nadsorption = " << n(p.adsorption) << '\n';
  }
  if (is_discontinuous_preset(c.model)) os << "interface = " << n(c.interface_position) << '\n';
  os << "\n[initial]\ns_left = " << n(c.left.s) << "\nc_left = " << n(c.left.c)
     << "\ns_right = " << n(c.right.s) << "\nc_right = " << n(c.right.c) << "\njump = " << n(c.jump)
     << "\n\n";
  os << "[grid]\nx_lo = " << n(c.x_lo) << "\nx_hi = " << n(c.x_hi) << "\ncells = " << c.cells
     << "\nleft_boundary = " << boundary_name(c.left_boundary)
     << "\nright_boundary = " << boundary_name(c.right_boundary)
     << "\nlevels = " << join(c.levels, [](int v) { return std::to_string(v); })
     << "\nreference_cells = " << c.reference_cells << "\n\n";
  os << "[time]\nt_end = " << n(c.t_end) << '\n';
  if (c.dt) os << "dt = " << n(*c.dt) << '\n';
  if (c.lambda) os << "lambda = " << n(*c.lambda) << '\n';
  os << "cfl_safety = " << n(c.cfl_safety) << "\nsnapshots = " << join(c.snapshots, n) << "\n\n";
  os << "[scheme]\nfluxes = "
     << join(c.fluxes, [](FluxTag t) { return std::string(to_string(t)); }) << "\n\n";
  os << "[output]\ndir = " << c.out_dir << "\nsamples = " << c.samples << '\n';
  return os.str();
}

Physics make_physics(const ExperimentConfig& c) {
  if (is_discontinuous_preset(c.model)) {
    return Physics(two_phase_discontinuous_model(c.interface_position));
  }
  if (c.model == "power-law") return Physics(power_law_model("power-law", c.power_law));
  return Physics(model_preset(c.model));
}

double lambda_ratio(const ExperimentConfig& c, const Physics& physics) {
  if (c.lambda) return *c.lambda;
  if (c.dt) return *c.dt * c.cells / domain_length(c);
  return c.cfl_safety / max_wave_speed(physics);
}

void validate(const ExperimentConfig& c) {
  if (!(c.x_hi > c.x_lo)) throw ConfigError("grid needs x_lo < x_hi");
  if (c.cells < 1) throw ConfigError("grid needs at least one cell");
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (c.dt && c.lambda) throw ConfigError("set either time.dt or time.lambda, not both");
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (c.lambda && !(*c.lambda > 0.0)) throw ConfigError("time.lambda must be positive");
  if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0)) {
    throw ConfigError("time.cfl_safety must lie in (0, 1]");
  }
  if (c.fluxes.empty()) throw ConfigError("scheme.fluxes is empty");
  if (c.samples < 2) throw ConfigError("output.samples must be at least 2");
  for (int level : c.levels) {
    if (level < 1) throw ConfigError("grid.levels entries must be positive");
  }
  if (is_discontinuous_preset(c.model) && c.jump != c.interface_position) {
    throw ConfigError("the data jump must sit on the rock interface");
  }
  const Physics physics = make_physics(c);
  for (const State& u : {c.left, c.right}) {
    physics.left().checked_s(u.s);
    physics.left().checked_c(u.c);
  }
  const double lam = lambda_ratio(c, physics);
  const double m = max_wave_speed(
      physics, Interval{std::min(c.left.c, c.right.c), std::max(c.left.c, c.right.c)});
  if (lam * m > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "lambda M = " << lam << " * " << m << " = " << lam * m << " exceeds 1";
    throw ConfigError(os.str());
  }
  make_grid(c, physics, c.cells);
}

Grid1D make_grid(const ExperimentConfig& c, const Physics& physics, int cells) {
  return physics.make_grid(c.x_lo, c.x_hi, cells);
}

SchemeState initial_state(const ExperimentConfig& c, const Grid1D& grid) {
  SchemeState st;
  st.s.resize(grid.n_cells);
  st.c.resize(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i) {
    const State& u = grid.center(i) < c.jump ? c.left : c.right;
    st.s[i] = u.s;
    st.c[i] = u.c;
  }
  return st;
}

BoundarySpec boundary_spec(const ExperimentConfig& c) {
  auto side = [](BoundarySide::Kind k, const State& u) {
    return k == BoundarySide::Kind::dirichlet ? BoundarySide::dirichlet(u.s, u.c)
                                              : BoundarySide::closed();
  };
  return BoundarySpec{side(c.left_boundary, c.left), side(c.right_boundary, c.right)};
}

Sampler exact_sampler(const ExperimentConfig& c, double t) {
  const double x0 = c.jump;
  const State left = c.left;
  const State right = c.right;
  if (t <= 0.0) {
    return [x0, left, right](double x) { return x < x0 ? left : right; };
  }
  if (is_discontinuous_preset(c.model)) {
    auto sol = std::make_shared<DiscontinuousRiemannSolution>(
        solve_riemann_discontinuous(two_phase_discontinuous_model(c.interface_position), left, right));
    return [sol, x0, t](double x) { return sol->sample((x - x0) / t); };
  }
  const Physics physics = make_physics(c);
  auto sol = std::make_shared<RiemannSolution>(solve_riemann(physics.left(), left, right));
  return [sol, x0, t](double x) { return sol->sample((x - x0) / t); };
}

RunResult run_experiment(const ExperimentConfig& c, const Physics& physics, FluxTag flux, int cells,
                         const RunOptions& options) {
  const Grid1D grid = make_grid(c, physics, cells);
  const double lam = lambda_ratio(c, physics);
  return run(initial_state(c, grid), physics, grid, FluxScheme{flux, lam}, boundary_spec(c),
             c.t_end, DtPolicy::from_lambda(lam, grid.h()), options);
}

ConvergenceTable convergence_study(const ExperimentConfig& c, FluxTag flux,
                                   Diagnostics* diagnostics) {
  const Physics physics = make_physics(c);
  const Sampler exact = exact_sampler(c, c.t_end);
  ConvergenceTable table;
  table.label = std::string(to_string(flux));
  RunOptions options;
  options.record_monitor = false;
  for (int level : c.levels) {
    const double cells_d = level * domain_length(c);
    const int cells = static_cast<int>(std::lround(cells_d));
    if (std::abs(cells_d - cells) > 1e-9 * cells_d) {
      throw ConfigError("level " + std::to_string(level) + " does not divide the domain");
    }
    const RunResult res = run_experiment(c, physics, flux, cells, options);
    if (diagnostics) diagnostics->merge(res.report.diagnostics);
    table.add(1.0 / level, l1_error(res.state, exact, make_grid(c, physics, cells)));
  }
  return table;
}

Comparison compare_schemes(const ExperimentConfig& c, double t) {
  if (c.reference_cells % c.cells != 0) {
    throw ConfigError("grid.reference_cells must be a multiple of grid.cells");
  }
  ExperimentConfig at_t = c;
  at_t.t_end = t;
  const Physics physics = make_physics(c);
  RunOptions options;
  options.record_monitor = false;

  Comparison out;
  out.time = t;
  const RunResult ref = run_experiment(at_t, physics, FluxTag::dflu, c.reference_cells, options);
  out.reference = restrict_to(ref.state, c.cells);
  const Grid1D grid = make_grid(c, physics, c.cells);
  for (FluxTag flux : c.fluxes) {
    CompareRow row;
    row.flux = flux;
    row.state = run_experiment(at_t, physics, flux, c.cells, options).state;
    row.distance = l1_distance(row.state, out.reference, grid);
    if (grid.interface_index) row.interface = interface_trace(row.state, grid, *grid.interface_index);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string state_csv(const SchemeState& state, const Grid1D& grid) {
  std::string out = "x,s,c\n";
  for (int i = 0; i < grid.n_cells; ++i) {
    out += format_number(grid.center(i));
    out += ',';
    out += format_number(state.s[i]);
    out += ',';
    out += format_number(state.c[i]);
    out += '\n';
  }
  return out;
}

std::string monitor_csv(const std::vector<MonitorSample>& monitor) {
  std::string out = "t,mass_s,mass_sc,linf_c,tv_c\n";
  for (const auto& m : monitor) {
    out += format_number(m.t) + ',' + format_number(m.mass_s) + ',' + format_number(m.mass_sc) +
           ',' + format_number(m.linf_c) + ',' + format_number(m.tv_c) + '\n';
  }
  return out;
}

}  // namespace polyflood
