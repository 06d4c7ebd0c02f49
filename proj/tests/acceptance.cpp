// Acceptance checks: one PASS/FAIL line per criterion, exit status 4 when
// any fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyflood/experiment.hpp"
#include "polyflood/riemann.hpp"

using namespace polyflood;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct PrintedTable {
  std::array<double, 5> err_s;
  std::array<double, 4> rate_s;
  std::array<double, 5> err_c;
  std::array<double, 4> rate_c;
};

// Worst relative error deviation and worst absolute rate deviation.
struct TableMatch {
  double worst_rel = 0.0;
  double worst_rate = 0.0;
  std::string where;
};

TableMatch match(const ConvergenceTable& t, const PrintedTable& p, const std::string& label) {
  TableMatch m;
  const char* inv[] = {"1/50", "1/100", "1/200", "1/400", "1/800"};
  for (int k = 0; k < 5; ++k) {
    const auto& r = t.rows[k];
    for (auto [got, want, q] : {std::tuple{r.err_s, p.err_s[k], "s"}, {r.err_c, p.err_c[k], "c"}}) {
      const double rel = std::abs(got - want) / want;
      if (rel > m.worst_rel) {
        m.worst_rel = rel;
        m.where = label + " " + q + "-error at h=" + inv[k] + ": " + fmt("%.4e", got) +
                  " vs " + fmt("%.4e", want);
      }
    }
    if (k == 0) continue;
    m.worst_rate = std::max({m.worst_rate, std::abs(*r.rate_s - p.rate_s[k - 1]),
                             std::abs(*r.rate_c - p.rate_c[k - 1])});
  }
  return m;
}

void check_table(const std::string& name, const std::string& preset, const PrintedTable& godunov,
                 const PrintedTable& dflu_printed, bool extra) {
  const ExperimentConfig cfg = experiment_preset(preset);
  Diagnostics dg;
  const ConvergenceTable tg = convergence_study(cfg, FluxTag::godunov, &dg);
  const ConvergenceTable td = convergence_study(cfg, FluxTag::dflu);
  std::printf("%s%s", tg.to_text().c_str(), td.to_text().c_str());
  const TableMatch mg = match(tg, godunov, "godunov");
  const TableMatch md = match(td, dflu_printed, "dflu");
  const TableMatch& tm = mg.worst_rel > md.worst_rel ? mg : md;
  const double worst_rate = std::max(mg.worst_rate, md.worst_rate);
  const bool errors_ok = tm.worst_rel <= 0.05;
  const bool rates_ok = worst_rate <= 0.05;
  report(errors_ok, name + " L1 errors (5% rel)",
         "worst " + fmt("%.1f%%", 100 * tm.worst_rel) + ": " + tm.where);
  report(rates_ok, name + " rates (+-0.05)", "worst |rate - printed| = " + fmt("%.4f", worst_rate));
  if (!extra) return;

  const long hits_2b = dg.godunov_cases[static_cast<std::size_t>(GodunovCase::case_2b)];
  report(hits_2b > 0 && dg.godunov_dflu_mismatch > 0, name + " case 2b occurs",
         std::to_string(hits_2b) + " case-2b faces, " + std::to_string(dg.godunov_dflu_mismatch) +
             " faces with Godunov != DFLU");

  // Pointwise distance between the two schemes relative to their errors.
  const Physics physics = make_physics(cfg);
  double worst = 0.0;
  std::string where;
  RunOptions opt;
  opt.record_monitor = false;
  for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
    const int cells = cfg.levels[k] * 2;
    const Grid1D grid = make_grid(cfg, physics, cells);
    const auto g = run_experiment(cfg, physics, FluxTag::godunov, cells, opt).state;
    const auto d = run_experiment(cfg, physics, FluxTag::dflu, cells, opt).state;
    const L1Error dist = l1_distance(g, d, grid);
    const double ratio_s = dist.s / std::min(tg.rows[k].err_s, td.rows[k].err_s);
    const double ratio_c = dist.c / std::min(tg.rows[k].err_c, td.rows[k].err_c);
    const double r = std::max(ratio_s, ratio_c);
    if (r > worst) {
      worst = r;
      where = "h=1/" + std::to_string(cfg.levels[k]) + " |u_G - u_D|_1 = " + fmt("%.3e", dist.s) +
              " (s), " + fmt("%.3e", dist.c) + " (c)";
    }
  }
  report(worst <= 0.02, name + " Godunov~DFLU (2% of error)",
         "worst ratio " + fmt("%.1f%%", 100 * worst) + " at " + where);
}

void tables() {
  const PrintedTable t1_g{{.2373, .15134, 9.6868e-2, 6.4228e-2, 4.2198e-2},
                          {.6489, .6437, .5928, .606},
                          {6.3796e-2, 4.1630e-2, 2.6669e-2, 1.7398e-2, 1.1522e-2},
                          {.6158, .6424, .6162, .5945}};
  const PrintedTable t1_d{{.2372, .1506, 9.6868e-2, 6.4228e-2, 4.2197e-2},
                          {.655, .6366, .5928, .606},
                          {6.3796e-2, 4.1630e-2, 2.6669e-2, 1.7398e-2, 1.1522e-2},
                          {.6158, .6424, .6162, .5945}};
  check_table("table 1", "exp-5.1-1", t1_g, t1_d, false);

  const PrintedTable t2_g{{.10246, 5.7861e-2, 3.2849e-2, 1.9152e-2, 1.1489e-2},
                          {.8243, .81674, .7785, .7370},
                          {4.8407e-2, 3.0161e-2, 1.9307e-2, 1.2618e-2, 8.4125e-3},
                          {.6825, .6435, .6136, .5848}};
  const PrintedTable t2_d{{.10373, 5.8731e-2, 3.3259e-2, 1.9353e-2, 1.1571e-2},
                          {.8206, .8203, .7811, .7420},
                          {4.8486e-2, 3.0201e-2, 1.9328e-2, 1.2628e-2, 8.4173e-3},
                          {.6829, .6439, .6140, .5851}};
  check_table("table 2", "exp-5.1-2", t2_g, t2_d, true);
}

// f = s(4-s)/(1+c), a = c: every pin has a closed form.
void exact_pins() {
  const PolymerModel q = quadratic_demo_model();
  auto f = [](double s, double c) { return s * (4 - s) / (1 + c); };

  const double sstar_o = std::sqrt(5.0) - 1.0;
  const double sigc1_o = f(sstar_o, .5) / (sstar_o + 1.0);
  // f(s,0) = sigma (s + 1)  <=>  s^2 + (sigma - 4) s + sigma = 0
  const double b1 = sigc1_o - 4.0;
  const double disc1 = std::sqrt(b1 * b1 - 4 * sigc1_o);
  const double sbar1_o = (-b1 - disc1) / 2;
  const double a_o = (-b1 + disc1) / 2;
  const double sig1_o = (4 - 2 * 2.5) / 1.5;
  const double sig2_o = (f(sbar1_o, 0) - f(1, 0)) / (sbar1_o - 1);

  const double sigc2_o = f(3.2, 0) / 4.2;
  // f(s,.5) = sigma (s + 1)  <=>  s^2 + (1.5 sigma - 4) s + 1.5 sigma = 0
  const double b2 = 1.5 * sigc2_o - 4.0;
  const double sbar2_o = (-b2 + std::sqrt(b2 * b2 - 6 * sigc2_o)) / 2;
  const double sigs_o = (f(2.3, .5) - f(sbar2_o, .5)) / (2.3 - sbar2_o);

  const RiemannSolution r1 = solve_riemann(q, {2.5, .5}, {1, 0});
  const RiemannSolution r2 = solve_riemann(q, {2.3, .5}, {3.2, 0});
  double sstar = NAN, sbar1 = NAN, sig1 = NAN, sigc1 = NAN, sig2 = NAN;
  for (const Wave& w : r1.waves) {
    if (w.kind == WaveKind::s_rarefaction) sig1 = w.speed_lo;
    if (w.kind == WaveKind::c_contact) {
      sstar = w.left.s;
      sbar1 = w.right.s;
      sigc1 = w.speed_lo;
    }
    if (w.kind == WaveKind::s_shock) sig2 = w.speed_lo;
  }
  const auto roots = secant_intersections(q, 0.0, sigc1, abar(q, .5, 0.0));
  const double a_val = roots.empty() ? NAN : roots.back();
  double sbar2 = NAN, sigs = NAN, sigc2 = NAN;
  for (const Wave& w : r2.waves) {
    if (w.kind == WaveKind::s_shock) {
      sigs = w.speed_lo;
      sbar2 = w.right.s;
    }
    if (w.kind == WaveKind::c_contact) sigc2 = w.speed_lo;
  }

  struct Pin {
    const char* name;
    double got, oracle, printed;
  };
  const Pin pins[] = {{"s*", sstar, sstar_o, 1.236},   {"A", a_val, a_o, 2.587},
                      {"sbar", sbar1, sbar1_o, .394},  {"sigma1", sig1, sig1_o, -2.0 / 3.0},
                      {"sigma_c", sigc1, sigc1_o, 1.018}, {"sigma2", sig2, sig2_o, 2.606},
                      {"sbar(2)", sbar2, sbar2_o, 2.7536}, {"sigma_s(2)", sigs, sigs_o, -.702},
                      {"sigma_c(2)", sigc2, sigc2_o, .609}};
  bool ok = r1.case_label == "2a" && r2.case_label == "2b";
  double worst_o = 0.0, worst_p = 0.0;
  std::ostringstream bad;
  for (const Pin& p : pins) {
    const double dev_o = std::abs(p.got - p.oracle);
    const double dev_p = std::abs(p.got - p.printed);
    worst_o = std::max(worst_o, std::isnan(dev_o) ? INFINITY : dev_o);
    worst_p = std::max(worst_p, std::isnan(dev_p) ? INFINITY : dev_p);
    if (!(dev_o <= 1e-9 && dev_p <= 1e-3)) {
      ok = false;
      bad << ' ' << p.name << '=' << p.got;
    }
  }
  report(ok, "exact-solver pins",
         "cases " + r1.case_label + "/" + r2.case_label + ", max |pin - oracle| = " +
             fmt("%.1e", worst_o) + ", max |pin - printed| = " + fmt("%.1e", worst_p) + bad.str());
}

void oracle_equivalence() {
  std::vector<PolymerModel> models{quadratic_demo_model(), two_phase_model()};
  const DiscontinuousModel dm = two_phase_discontinuous_model();
  models.push_back(dm.left());
  models.push_back(dm.right());
  std::mt19937_64 rng(20240611);
  bool ok = true;
  std::ostringstream detail;
  for (const PolymerModel& m : models) {
    const Interval sd = m.s_domain();
    const Interval cd = m.c_domain();
    std::uniform_real_distribution<double> us(sd.lo, sd.hi);
    std::uniform_real_distribution<double> uc(cd.lo, cd.hi);
    double worst = 0.0;
    double worst_dflu = 0.0;
    std::array<int, 6> counts{};
    for (int k = 0; k < 10000; ++k) {
      double cl = uc(rng);
      double cr = uc(rng);
      if (cl < cr) std::swap(cl, cr);
      const FaceStates face{us(rng), cl, us(rng), cr, {}, {}};
      const GodunovResult g = godunov_classified(m, face);
      ++counts[static_cast<std::size_t>(g.kase)];
      const FluxPair exact =
          riemann_flux(m, solve_riemann(m, {face.s_i, cl}, {face.s_ip1, cr}));
      worst = std::max(worst, std::abs(g.flux.F - exact.F));
      if (g.kase == GodunovCase::case_1a || g.kase == GodunovCase::case_2a) {
        worst_dflu = std::max(worst_dflu, std::abs(g.flux.F - dflu(m, m, face).F));
      }
    }
    ok = ok && worst <= 1e-8 && worst_dflu <= 1e-12;
    detail << ' ' << m.name() << ": " << fmt("%.1e", worst) << '/' << fmt("%.1e", worst_dflu)
           << " (1a " << counts[2] << ", 1b " << counts[3] << ", 2a " << counts[4] << ", 2b "
           << counts[5] << ");";
  }
  report(ok, "oracle equivalence", "max |G - exact| / max |G - DFLU| in 1a,2a:" + detail.str());
}

SchemeState random_profile(std::mt19937_64& rng, const PolymerModel& m, int n) {
  std::uniform_real_distribution<double> us(m.s_domain().lo, m.s_domain().hi);
  std::uniform_real_distribution<double> uc(m.c_domain().lo, m.c_domain().hi);
  std::uniform_int_distribution<int> pieces(1, 6);
  SchemeState st;
  st.s.resize(n);
  st.c.resize(n);
  // Piecewise constant with a few random breakpoints, plus some pure noise.
  const int k = pieces(rng);
  std::vector<int> cuts{0};
  std::uniform_int_distribution<int> cut(1, n - 1);
  for (int j = 1; j < k; ++j) cuts.push_back(cut(rng));
  cuts.push_back(n);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double s = us(rng);
    const double c = uc(rng);
    for (int i = cuts[j]; i < cuts[j + 1]; ++i) {
      st.s[i] = s;
      st.c[i] = c;
    }
  }
  if (rng() % 4 == 0) {
    for (int i = 0; i < n; ++i) {
      st.s[i] = us(rng);
      st.c[i] = uc(rng);
    }
  }
  return st;
}

void property_suite() {
  std::mt19937_64 rng(7);
  const std::vector<PolymerModel> models{two_phase_model(), quadratic_demo_model()};
  long steps = 0;
  long violations = 0;
  std::string first;
  for (int trial = 0; trial < 100; ++trial) {
    const PolymerModel& m = models[trial % 2];
    const Physics physics(m);
    const Grid1D grid = physics.make_grid(0.0, 1.0, 60);
    const double lam = 1.0 / max_wave_speed(physics);
    SchemeState st = random_profile(rng, m, grid.n_cells);
    BoundarySpec b{BoundarySide::dirichlet(st.s.front(), st.c.front()),
                   BoundarySide::dirichlet(st.s.back(), st.c.back())};
    if (trial % 3 == 0) b = {BoundarySide::closed(), BoundarySide::closed()};
    for (int n = 0; n < 40; ++n) {
      const SchemeState next = step(st, physics, grid, {FluxTag::dflu, lam}, b, lam * grid.h());
      const LemmaCheck chk = check_lemmas(st, next, physics, grid, b);
      ++steps;
      if (!chk.ok()) {
        ++violations;
        if (first.empty()) first = "trial " + std::to_string(trial) + ": " + chk.first_failure;
      }
      st = next;
    }
  }
  report(violations == 0, "discrete estimates (DFLU)",
         std::to_string(steps) + " steps on 100 random profiles, " + std::to_string(violations) +
             " violations" + (first.empty() ? "" : " (" + first + ")"));

  double worst = 0.0;
  std::string where;
  int runs = 0;
  for (FluxTag tag : {FluxTag::dflu, FluxTag::godunov, FluxTag::upstream_mobility,
                      FluxTag::lax_friedrichs, FluxTag::force}) {
    for (int trial = 0; trial < 20; ++trial) {
      const PolymerModel& m = models[trial % 2];
      const Physics physics(m);
      const Grid1D grid = physics.make_grid(0.0, 1.0, 60);
      const double lam = 0.5 / max_wave_speed(physics);
      SchemeState st = random_profile(rng, m, grid.n_cells);
      const BoundarySpec closed{BoundarySide::closed(), BoundarySide::closed()};
      const MonitorSample m0 = monitor_sample(st, physics, grid);
      try {
        for (int n = 0; n < 40; ++n) st = step(st, physics, grid, {tag, lam}, closed, lam * grid.h());
      } catch (const Error& e) {
        worst = INFINITY;
        where = std::string(to_string(tag)) + ": " + e.what();
        continue;
      }
      ++runs;
      const MonitorSample m1 = monitor_sample(st, physics, grid);
      const double d = std::max(std::abs(m1.mass_s - m0.mass_s), std::abs(m1.mass_sc - m0.mass_sc));
      if (d > worst) {
        worst = d;
        where = std::string(to_string(tag));
      }
    }
  }
  report(worst <= 1e-10, "conservation (5 schemes)",
         std::to_string(runs) + " closed-box runs, max mass drift " + fmt("%.1e", worst) +
             (where.empty() ? "" : " (" + where + ")"));
}

void interface_classification() {
  ExperimentConfig cfg = experiment_preset("exp-6");
  const Physics physics = make_physics(cfg);
  cfg.t_end = 1.0;
  RunOptions opt;
  opt.record_monitor = false;
  struct Target {
    FluxTag tag;
    double s_left, s_right;
  };
  const Target targets[] = {{FluxTag::dflu, .342, .57},
                            {FluxTag::upstream_mobility, .342, .57},
                            {FluxTag::lax_friedrichs, .464, .464},
                            {FluxTag::force, .464, .464}};
  const int levels[] = {50, 100, 200, 400};
  constexpr double kDistance = 0.1;
  bool traces_ok = true;
  bool jump_ok = true;
  std::ostringstream td;
  std::ostringstream jd;
  for (const Target& t : targets) {
    double prev_jump = NAN;
    double worst_dev = 0.0;
    std::ostringstream jumps;
    InterfaceTrace adj{};
    InterfaceTrace far{};
    for (int level : levels) {
      const int cells = level * 4;
      const Grid1D grid = make_grid(cfg, physics, cells);
      const RunResult res = run_experiment(cfg, physics, t.tag, cells, opt);
      adj = interface_trace(res.state, grid, *grid.interface_index);
      far = interface_trace(res.state, grid, *grid.interface_index, kDistance);
      worst_dev = std::max({worst_dev, std::abs(far.s_left - t.s_left),
                            std::abs(far.s_right - t.s_right)});
      const double jump = std::abs(adj.c_left - adj.c_right);
      if (!std::isnan(prev_jump) && jump > std::max(0.5 * prev_jump, 1e-9)) jump_ok = false;
      jumps << (std::isnan(prev_jump) ? "" : ",") << fmt("%.0e", jump);
      prev_jump = jump;
    }
    if (worst_dev > .05) traces_ok = false;
    td << ' ' << to_string(t.tag) << " (" << fmt("%.3f", far.s_left) << ","
       << fmt("%.3f", far.s_right) << ") worst dev " << fmt("%.3f", worst_dev)
       << ", adjacent cells (" << fmt("%.3f", adj.s_left) << "," << fmt("%.3f", adj.s_right)
       << ");";
    jd << ' ' << to_string(t.tag) << ' ' << jumps.str() << ';';
  }
  report(traces_ok, "interface connections",
         "t=1, h=1/50..1/400, cells at x=-+0.1, finest:" + td.str());
  report(jump_ok, "no c-jump at interface", "|c(0-) - c(0+)| per level:" + jd.str());
}

void scheme_ordering() {
  const ExperimentConfig cfg = experiment_preset("exp-5.2-ivp");
  const Comparison cmp = compare_schemes(cfg, 1.0);
  double d[4] = {};
  std::ostringstream os;
  for (const CompareRow& r : cmp.rows) {
    os << ' ' << to_string(r.flux) << ' ' << fmt("%.4e", r.distance.s);
    if (r.flux == FluxTag::dflu) d[0] = r.distance.s;
    if (r.flux == FluxTag::upstream_mobility) d[1] = r.distance.s;
    if (r.flux == FluxTag::lax_friedrichs) d[2] = r.distance.s;
    if (r.flux == FluxTag::force) d[3] = r.distance.s;
  }
  const bool ok = d[0] <= d[1] && d[1] <= std::max(d[2], d[3]);
  report(ok, "scheme ordering at t=1", "L1(s) to 8000-cell DFLU:" + os.str());
}

}  // namespace

int main() {
  try {
    exact_pins();
    oracle_equivalence();
    property_suite();
    interface_classification();
    scheme_ordering();
    tables();
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance aborted: %s\n", e.what());
    return 4;
  }
  std::printf("%d failing check(s)\n", failures);
  return failures ? 4 : 0;
}
