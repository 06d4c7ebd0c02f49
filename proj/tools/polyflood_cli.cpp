#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polyflood/errors.hpp"
#include "polyflood/experiment.hpp"
#include "polyflood/riemann.hpp"

namespace fs = std::filesystem;
using namespace polyflood;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;
constexpr int kCheckFailed = 4;

struct Flags {
  std::string config;
  std::string preset;
  std::string flux;
  std::optional<int> cells;
  std::optional<double> lambda;
  std::optional<double> t_end;
  std::string out;
  std::string snapshots;
  std::string levels;
  std::optional<int> reference_cells;
  std::optional<int> samples;
  bool check = false;
};

ExperimentConfig resolve(const Flags& f, const std::string& default_preset) {
  ExperimentConfig c;
  if (!f.preset.empty()) {
    c = experiment_preset(f.preset);
  } else if (f.config.empty()) {
    c = experiment_preset(default_preset);
  }
  if (!f.config.empty()) c = load_config(f.config, c);

  // Flags go through the INI parser so they accept the same syntax.
  std::ostringstream ini;
  if (!f.flux.empty()) ini << "[scheme]\nfluxes = " << f.flux << '\n';
  if (f.cells || !f.levels.empty() || f.reference_cells) {
    ini << "[grid]\n";
    if (f.cells) ini << "cells = " << *f.cells << '\n';
    if (!f.levels.empty()) ini << "levels = " << f.levels << '\n';
    if (f.reference_cells) ini << "reference_cells = " << *f.reference_cells << '\n';
  }
  if (f.lambda || f.t_end || !f.snapshots.empty()) {
    ini << "[time]\n";
    if (f.lambda) ini << "lambda = " << format_number(*f.lambda) << '\n';
    if (f.t_end) ini << "t_end = " << format_number(*f.t_end) << '\n';
    if (!f.snapshots.empty()) ini << "snapshots = " << f.snapshots << '\n';
  }
  if (!f.out.empty() || f.samples) {
    ini << "[output]\n";
    if (!f.out.empty()) ini << "dir = " << f.out << '\n';
    if (f.samples) ini << "samples = " << *f.samples << '\n';
  }
  std::istringstream in(ini.str());
  c = parse_config(in, c);
  validate(c);
  return c;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

fs::path prepare_output(const ExperimentConfig& c) {
  const fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + c.out_dir + "': " + ec.message());
  write_file(dir / "resolved.ini", to_ini(c));
  return dir;
}

std::string time_tag(double t) { return "t" + format_number(t); }

// Matplotlib script: one figure per group, s and c side by side.
std::string plot_script(const std::vector<std::pair<std::string, std::vector<std::string>>>& groups) {
  std::ostringstream py;
  py << "import csv\nimport os\nimport matplotlib.pyplot as plt\n\n"
        "HERE = os.path.dirname(os.path.abspath(__file__))\n\n\n"
        "def load(name):\n"
        "    with open(os.path.join(HERE, name)) as fh:\n"
        "        rows = list(csv.DictReader(fh))\n"
        "    return [[float(r[k]) for r in rows] for k in ('x', 's', 'c')]\n\n\n"
        "GROUPS = [\n";
  for (const auto& [title, files] : groups) {
    py << "    (\"" << title << "\", [";
    for (std::size_t i = 0; i < files.size(); ++i) py << (i ? ", " : "") << '"' << files[i] << '"';
    py << "]),\n";
  }
  py << "]\n\n"
        "for title, files in GROUPS:\n"
        "    fig, (ax_s, ax_c) = plt.subplots(1, 2, figsize=(10, 4))\n"
        "    for name in files:\n"
        "        x, s, c = load(name)\n"
        "        label = os.path.splitext(name)[0]\n"
        "        ax_s.plot(x, s, label=label)\n"
        "        ax_c.plot(x, c, label=label)\n"
        "    ax_s.set_ylabel('s')\n"
        "    ax_c.set_ylabel('c')\n"
        "    for ax in (ax_s, ax_c):\n"
        "        ax.set_xlabel('x')\n"
        "        ax.legend(fontsize='small')\n"
        "    fig.suptitle(title)\n"
        "    fig.tight_layout()\n"
        "    fig.savefig(os.path.join(HERE, title.replace(' ', '_') + '.png'), dpi=120)\n";
  return py.str();
}

int cmd_riemann(const ExperimentConfig& c) {
  const fs::path dir = prepare_output(c);
  const double t = c.t_end;
  const Sampler exact = exact_sampler(c, t);
  if (is_discontinuous_preset(c.model)) {
    const auto sol = solve_riemann_discontinuous(two_phase_discontinuous_model(c.interface_position),
                                                 c.left, c.right);
    std::cout << "case " << sol.case_label << ", interface states (" << sol.interface_left.s << ", "
              << sol.interface_left.c << ") | (" << sol.interface_right.s << ", "
              << sol.interface_right.c << "), flux " << sol.flux << '\n';
  } else {
    const Physics physics = make_physics(c);
    const RiemannSolution sol = solve_riemann(physics.left(), c.left, c.right);
    std::cout << "case " << sol.case_label << '\n';
    for (const Wave& w : sol.waves) {
      std::cout << "  " << to_string(w.kind) << " speeds [" << w.speed_lo << ", " << w.speed_hi
                << "] (" << w.left.s << ", " << w.left.c << ") -> (" << w.right.s << ", "
                << w.right.c << ")\n";
    }
  }
  std::string csv = "x,s,c\n";
  for (int k = 0; k < c.samples; ++k) {
    const double x = c.x_lo + (c.x_hi - c.x_lo) * k / (c.samples - 1);
    const State u = exact(x);
    csv += format_number(x) + ',' + format_number(u.s) + ',' + format_number(u.c) + '\n';
  }
  const std::string name = "riemann_" + time_tag(t) + ".csv";
  write_file(dir / name, csv);
  write_file(dir / "plot_riemann.py", plot_script({{"exact " + time_tag(t), {name}}}));
  std::cout << "wrote " << (dir / name).string() << '\n';
  return 0;
}

int cmd_run(const ExperimentConfig& c) {
  const fs::path dir = prepare_output(c);
  const Physics physics = make_physics(c);
  const Grid1D grid = make_grid(c, physics, c.cells);
  std::vector<double> times;
  for (double t : c.snapshots) {
    if (t >= 0.0 && t <= c.t_end) times.push_back(t);
  }
  if (times.empty()) times.push_back(c.t_end);
  RunOptions options;
  options.snapshot_times = times;

  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  for (double t : times) groups.push_back({"run " + time_tag(t), {}});
  for (FluxTag flux : c.fluxes) {
    const std::string tag(to_string(flux));
    options.lemma_mode = flux == FluxTag::dflu ? LemmaMode::warn : LemmaMode::off;
    RunResult res;
    try {
      res = run_experiment(c, physics, flux, c.cells, options);
    } catch (const RunAborted& e) {
      write_file(dir / (tag + "_monitor.csv"), monitor_csv(e.partial().report.monitor));
      throw;
    }
    for (const Snapshot& snap : res.report.snapshots) {
      const std::string name = tag + "_" + time_tag(snap.time) + ".csv";
      write_file(dir / name, state_csv(snap.state, grid));
      for (auto& g : groups) {
        if (g.first == "run " + time_tag(snap.time)) g.second.push_back(name);
      }
    }
    write_file(dir / (tag + "_monitor.csv"), monitor_csv(res.report.monitor));
    const auto& d = res.report.diagnostics;
    std::cout << tag << ": " << d.steps << " steps";
    if (flux == FluxTag::upstream_mobility) std::cout << ", " << d.upstream_ambiguous << " ambiguous faces";
    if (flux == FluxTag::godunov) std::cout << ", " << d.interface_fallbacks << " interface fallbacks";
    std::cout << '\n';
    if (res.report.lemma_violations > 0) {
      std::cerr << "warning: " << tag << ": " << res.report.lemma_violations
                << " steps violated a discrete estimate; first: " << res.report.lemma_messages.front()
                << '\n';
    }
  }
  write_file(dir / "plot_run.py", plot_script(groups));
  std::cout << "wrote " << dir.string() << '\n';
  return 0;
}

int cmd_convergence(const ExperimentConfig& c) {
  if (c.left_boundary != BoundarySide::Kind::dirichlet ||
      c.right_boundary != BoundarySide::Kind::dirichlet) {
    throw ConfigError("convergence needs Dirichlet far-field boundaries");
  }
  const fs::path dir = prepare_output(c);
  for (FluxTag flux : c.fluxes) {
    const ConvergenceTable table = convergence_study(c, flux);
    std::cout << table.to_text();
    write_file(dir / ("convergence_" + std::string(to_string(flux)) + ".csv"), table.to_csv());
  }
  return 0;
}

// DFLU <= UM <= max(LF, FORCE) among the schemes present.
std::optional<std::string> ordering_violation(const Comparison& cmp) {
  std::optional<double> dflu, um, central;
  for (const CompareRow& r : cmp.rows) {
    if (r.flux == FluxTag::dflu) dflu = r.distance.s;
    if (r.flux == FluxTag::upstream_mobility) um = r.distance.s;
    if (r.flux == FluxTag::lax_friedrichs || r.flux == FluxTag::force) {
      central = std::max(central.value_or(0.0), r.distance.s);
    }
  }
  if (dflu && um && *dflu > *um) return "DFLU is farther from the reference than upstream mobility";
  if (um && central && *um > *central) return "upstream mobility is farther than both central schemes";
  if (dflu && central && !um && *dflu > *central) return "DFLU is farther than both central schemes";
  return std::nullopt;
}

int cmd_compare(const ExperimentConfig& c, bool check) {
  const fs::path dir = prepare_output(c);
  const Physics physics = make_physics(c);
  const Grid1D grid = make_grid(c, physics, c.cells);
  std::vector<double> times;
  for (double t : c.snapshots) {
    if (t > 0.0 && t <= c.t_end) times.push_back(t);
  }
  if (times.empty()) times.push_back(c.t_end);

  bool failed = false;
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  for (double t : times) {
    const Comparison cmp = compare_schemes(c, t);
    const std::string tt = time_tag(t);
    std::vector<std::string> files{"reference_" + tt + ".csv"};
    write_file(dir / files.front(), state_csv(cmp.reference, grid));
    std::string csv = "flux,l1_s,l1_c";
    if (grid.interface_index) csv += ",s_left,s_right,c_left,c_right";
    csv += '\n';
    std::cout << "t=" << format_number(t) << " (reference: DFLU on " << c.reference_cells
              << " cells)\n";
    for (const CompareRow& r : cmp.rows) {
      const std::string tag(to_string(r.flux));
      csv += tag + ',' + format_number(r.distance.s) + ',' + format_number(r.distance.c);
      std::cout << "  " << tag << ": L1(s) " << r.distance.s << ", L1(c) " << r.distance.c;
      if (r.interface) {
        const InterfaceTrace& tr = *r.interface;
        csv += ',' + format_number(tr.s_left) + ',' + format_number(tr.s_right) + ',' +
               format_number(tr.c_left) + ',' + format_number(tr.c_right);
        std::cout << ", interface s " << tr.s_left << " | " << tr.s_right;
      }
      csv += '\n';
      std::cout << '\n';
      const std::string name = tag + "_" + tt + ".csv";
      write_file(dir / name, state_csv(r.state, grid));
      files.push_back(name);
    }
    write_file(dir / ("compare_" + tt + ".csv"), csv);
    groups.push_back({"compare " + tt, files});
    if (check) {
      if (const auto v = ordering_violation(cmp)) {
        std::cerr << "check failed at t=" << format_number(t) << ": " << *v << '\n';
        failed = true;
      }
    }
  }
  write_file(dir / "plot_compare.py", plot_script(groups));
  return failed ? kCheckFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite volume solver for a polymer flooding model"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&f](CLI::App* cmd) {
    cmd->add_option("--config", f.config, "INI experiment file")->check(CLI::ExistingFile);
    cmd->add_option("--preset", f.preset, "experiment preset")
        ->check(CLI::IsMember(experiment_preset_names()));
    cmd->add_option("--flux", f.flux, "comma-separated fluxes: dflu,godunov,um,lf,force");
    cmd->add_option("--cells", f.cells, "number of cells");
    cmd->add_option("--lambda", f.lambda, "dt / h");
    cmd->add_option("--t-end", f.t_end, "final time");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--snapshots", f.snapshots, "comma-separated snapshot times");
  };
  auto* riemann = app.add_subcommand("riemann", "sample the exact Riemann solution at t_end");
  add_common(riemann);
  riemann->add_option("--samples", f.samples, "number of x samples");
  auto* run = app.add_subcommand("run", "run each flux and write snapshots and monitors");
  add_common(run);
  auto* conv = app.add_subcommand("convergence", "L1 errors against the exact solution");
  add_common(conv);
  conv->add_option("--levels", f.levels, "comma-separated 1/h values");
  auto* cmp = app.add_subcommand("compare", "distances to a fine DFLU reference");
  add_common(cmp);
  cmp->add_option("--reference-cells", f.reference_cells, "cells of the reference run");
  cmp->add_flag("--check", f.check, "exit 4 unless DFLU <= UM <= max(LF, FORCE)");
  auto* presets = app.add_subcommand("presets", "list experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (presets->parsed()) {
      for (const auto& name : experiment_preset_names()) std::cout << name << '\n';
      return 0;
    }
    if (riemann->parsed()) return cmd_riemann(resolve(f, "exp-5.1-1"));
    if (run->parsed()) return cmd_run(resolve(f, "exp-5.2-ivp"));
    if (conv->parsed()) return cmd_convergence(resolve(f, "exp-5.1-1"));
    if (cmp->parsed()) return cmd_compare(resolve(f, "exp-5.2-ivp"), f.check);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
