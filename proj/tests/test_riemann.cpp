#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "polyflood/fluxes.hpp"
#include "polyflood/presets.hpp"
#include "polyflood/riemann.hpp"
#include "polyflood/run.hpp"

using namespace polyflood;
using doctest::Approx;

TEST_CASE("rarefaction then contact then shock") {
  const PolymerModel q = quadratic_demo_model();
  const RiemannSolution sol = solve_riemann(q, 2.5, .5, 1, 0);
  CHECK_FALSE(chain_violation(q, sol));
  CHECK(sol.case_label == "2a");

  const State at0 = sol.sample(0);
  CHECK(at0.s == Approx(2).epsilon(1e-9));
  CHECK(at0.c == Approx(.5));
  const State at2 = sol.sample(2);
  CHECK(at2.s == Approx(.394).epsilon(1e-3));
  CHECK(at2.c == Approx(0));
  CHECK(sol.sample(-10) == State{2.5, .5});
  CHECK(sol.sample(10) == State{1, 0});
}

TEST_CASE("case with the s-wave to sbar") {
  const PolymerModel q = quadratic_demo_model();
  const RiemannSolution sol = solve_riemann(q, 2.3, .5, 3.2, 0);
  CHECK_FALSE(chain_violation(q, sol));
  CHECK(sol.case_label == "2b");
  bool found = false;
  for (const Wave& w : sol.waves) {
    if (w.kind == WaveKind::c_contact) {
      CHECK(w.left.c == Approx(.5));
      CHECK(w.right.c == Approx(0));
      found = found || std::abs(w.right.s - 2.7536) < 1e-4 || std::abs(w.left.s - 2.7536) < 1e-4;
    }
  }
  CHECK(found);
}

TEST_CASE("random data gives consistent wave chains") {
  std::mt19937_64 rng(11);
  for (const PolymerModel& m : {quadratic_demo_model(), two_phase_model()}) {
    std::uniform_real_distribution<double> us(m.s_domain().lo, m.s_domain().hi);
    std::uniform_real_distribution<double> uc(0, 1);
    for (int k = 0; k < 300; ++k) {
      const State l{us(rng), uc(rng)};
      const State r{us(rng), uc(rng)};
      const RiemannSolution sol = solve_riemann(m, l, r);
      const auto bad = chain_violation(m, sol);
      INFO(m.name(), " ", l.s, " ", l.c, " ", r.s, " ", r.c, " ", bad.value_or(""));
      CHECK_FALSE(bad);
      for (const Wave& w : sol.waves) CHECK(w.speed_lo <= w.speed_hi + 1e-12);
    }
  }
}

TEST_CASE("enumeration agrees with the case analysis") {
  std::mt19937_64 rng(5);
  const PolymerModel m = two_phase_model();
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 200; ++k) {
    State l{u(rng), u(rng)};
    State r{u(rng), u(rng)};
    if (l.c < r.c) std::swap(l.c, r.c);
    if (l.c - r.c < 1e-3) continue;
    const RiemannSolution a = solve_riemann(m, l, r);
    const RiemannSolution b = solve_riemann_by_enumeration(m, l, r);
    for (double xi : {-3.0, -.7, -.1, 0.0, .1, .4, .9, 1.7, 3.0}) {
      const State sa = a.sample(xi);
      const State sb = b.sample(xi);
      CHECK(std::abs(sa.s - sb.s) < 1e-7);
      CHECK(std::abs(sa.c - sb.c) < 1e-7);
    }
  }
}

TEST_CASE("constant concentration reduces to the scalar problem") {
  const PolymerModel q = quadratic_demo_model();
  const RiemannSolution shock = solve_riemann(q, 1, .2, 3.5, .2);
  REQUIRE(shock.waves.size() == 1);
  CHECK(shock.waves[0].kind == WaveKind::s_shock);
  CHECK(shock.waves[0].speed_lo == Approx((q.flux(3.5, .2) - q.flux(1, .2)) / 2.5));

  const RiemannSolution fan = solve_riemann(q, 3, .2, 1, .2);
  REQUIRE(fan.waves.size() == 1);
  CHECK(fan.waves[0].kind == WaveKind::s_rarefaction);
  CHECK(fan.sample(0).s == Approx(2).epsilon(1e-9));
  CHECK(fan.waves[0].speed_lo == Approx(q.flux_ds(3, .2)));

  const RiemannSolution none = solve_riemann(q, 1.5, .4, 1.5, .4);
  CHECK(none.waves.empty());
  CHECK(none.sample(0) == State{1.5, .4});
}

TEST_CASE("scalar godunov flux") {
  const ScalarFlux f = ScalarFlux::at(quadratic_demo_model(), 0);
  CHECK(std::abs(f.theta - 2) < 1e-7);
  CHECK(scalar_godunov(f, 1, 3) == Approx(3));
  CHECK(scalar_godunov(f, 3, 1) == Approx(4));
  CHECK(scalar_godunov(f, .5, 3.5) == Approx(f.f(.5)));
  CHECK(scalar_godunov(f, 2.5, 2.5) == Approx(f.f(2.5)));
}

TEST_CASE("wave fan is ordered and chained") {
  const PolymerModel m = two_phase_model();
  const RiemannSolution sol = solve_riemann(m, .9, .9, .1, .3);
  CHECK_FALSE(chain_violation(m, sol));
  REQUIRE_FALSE(sol.waves.empty());
  CHECK(sol.waves.front().left == State{.9, .9});
  CHECK(sol.waves.back().right == State{.1, .3});
  for (std::size_t i = 1; i < sol.waves.size(); ++i) {
    CHECK(sol.waves[i - 1].speed_hi <= sol.waves[i].speed_lo + 1e-12);
    CHECK(sol.waves[i - 1].right == sol.waves[i].left);
  }
}

TEST_CASE("increasing concentration uses the mirror construction") {
  const PolymerModel m = two_phase_model();
  const RiemannSolution sol = solve_riemann(m, .1, .3, .9, .9);
  CHECK(sol.case_label == "mirror");
  CHECK_FALSE(chain_violation(m, sol));
}

TEST_CASE("increasing concentration agrees with a fine grid") {
  const PolymerModel m = two_phase_model();
  const Physics physics(m);
  const State l{.793975, .219557};
  const State r{.0519669, .571679};
  const RiemannSolution sol = solve_riemann(m, l, r);
  const Grid1D grid = physics.make_grid(-1, 1, 1600);
  SchemeState st;
  for (int i = 0; i < grid.n_cells; ++i) {
    const State u = grid.center(i) < 0 ? l : r;
    st.s.push_back(u.s);
    st.c.push_back(u.c);
  }
  const double lam = .9 / max_wave_speed(physics);
  const RunResult res = run(st, physics, grid, {FluxTag::dflu, lam},
                            {BoundarySide::dirichlet(l.s, l.c), BoundarySide::dirichlet(r.s, r.c)},
                            .3, DtPolicy::from_lambda(lam, grid.h()));
  double err = 0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const State u = sol.sample(grid.center(i) / .3);
    err += (std::abs(res.state.s[i] - u.s) + std::abs(res.state.c[i] - u.c)) * grid.h();
  }
  CHECK(err < .01);
}

TEST_CASE("two-flux scalar interface") {
  const DiscontinuousModel d = two_phase_discontinuous_model();
  const ScalarFlux fl = ScalarFlux::at(d.left(), .5);
  const ScalarFlux fr = ScalarFlux::at(d.right(), .5);
  const TwoFluxSolution sol = scalar_two_flux_riemann(fl, fr, .5, .9, .1);
  CHECK(sol.flux == Approx(scalar_dflu(fl, fr, .9, .1)));
  CHECK(fl.f(sol.u_minus) == Approx(sol.flux).epsilon(1e-9));
  CHECK(fr.f(sol.u_plus) == Approx(sol.flux).epsilon(1e-9));
}

TEST_CASE("discontinuous Riemann problem") {
  const DiscontinuousModel d = two_phase_discontinuous_model();
  const DiscontinuousRiemannSolution sol = solve_riemann_discontinuous(d, {.9, .9}, {.1, .3});
  CHECK(sol.case_label.size() == 2);
  CHECK((sol.case_label[0] == '1' || sol.case_label[0] == '2'));
  CHECK((sol.case_label[1] == 'a' || sol.case_label[1] == 'b'));

  CHECK(sol.interface_left.s == Approx(.342).epsilon(2e-3));
  CHECK(sol.interface_right.s == Approx(.570).epsilon(2e-3));
  CHECK(sol.interface_left.c == sol.interface_right.c);

  const double fl = d.left().flux(sol.interface_left.s, sol.interface_left.c);
  const double fr = d.right().flux(sol.interface_right.s, sol.interface_right.c);
  CHECK(std::abs(fl - fr) < 1e-9);
  CHECK(std::abs(fl - sol.flux) < 1e-9);
  CHECK_FALSE(chain_violation(d.left(), sol.left_part));
  CHECK_FALSE(chain_violation(d.right(), sol.right_part));
}
