#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "polyflood/analysis.hpp"
#include "polyflood/errors.hpp"
#include "polyflood/presets.hpp"

using namespace polyflood;
using doctest::Approx;

namespace {

SchemeState random_state(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 1);
  SchemeState st;
  for (int i = 0; i < n; ++i) {
    st.s.push_back(u(rng));
    st.c.push_back(u(rng));
  }
  return st;
}

}  // namespace

TEST_CASE("l1 distance is a metric") {
  std::mt19937_64 rng(1);
  const Grid1D grid{0, 2, 20, {}};
  const SchemeState a = random_state(rng, 20);
  const SchemeState b = random_state(rng, 20);
  const SchemeState c = random_state(rng, 20);
  CHECK(l1_distance(a, a, grid).s == 0.0);
  CHECK(l1_distance(a, a, grid).c == 0.0);
  CHECK(l1_distance(a, b, grid).s > 0.0);
  CHECK(l1_distance(a, b, grid).s == Approx(l1_distance(b, a, grid).s));
  CHECK(l1_distance(a, c, grid).s <= l1_distance(a, b, grid).s + l1_distance(b, c, grid).s + 1e-15);
  CHECK(l1_distance(a, c, grid).c <= l1_distance(a, b, grid).c + l1_distance(b, c, grid).c + 1e-15);
  CHECK_THROWS_AS(l1_distance(a, random_state(rng, 3), grid), ConfigError);
}

TEST_CASE("l1 error samples the reference at cell centres") {
  const Grid1D grid{0, 1, 4, {}};
  const SchemeState st{{0, 0, 0, 0}, {1, 1, 1, 1}, 0};
  const L1Error e = l1_error(st, [](double x) { return State{x, 1}; }, grid);
  CHECK(e.s == Approx(.25 * (.125 + .375 + .625 + .875)));
  CHECK(e.c == 0.0);
}

TEST_CASE("rates and total variation") {
  CHECK(*convergence_rate(.4, .1) == Approx(2));
  CHECK(*convergence_rate(1, 1) == 0.0);
  CHECK_FALSE(convergence_rate(0, .1));
  CHECK_FALSE(convergence_rate(.1, 0));
  CHECK(total_variation({0, 1, .5, .5, 2}) == Approx(3));
  CHECK(total_variation({}) == 0.0);
}

TEST_CASE("restriction averages blocks") {
  const SchemeState fine{{1, 3, 5, 7, 0, 2}, {0, 1, 0, 1, 1, 1}, .7};
  const SchemeState coarse = restrict_to(fine, 3);
  CHECK(coarse.s == std::vector<double>{2, 6, 1});
  CHECK(coarse.c == std::vector<double>{.5, .5, 1});
  CHECK(coarse.time == .7);
  CHECK_THROWS_AS(restrict_to(fine, 4), ConfigError);
}

TEST_CASE("interface traces") {
  const Grid1D grid{-1, 1, 10, 5};
  SchemeState st;
  for (int i = 0; i < 10; ++i) {
    st.s.push_back(i);
    st.c.push_back(10 + i);
  }
  const InterfaceTrace adj = interface_trace(st, grid, 5);
  CHECK(adj.s_left == 4);
  CHECK(adj.s_right == 5);
  CHECK(adj.c_left == 14);
  const InterfaceTrace far = interface_trace(st, grid, 5, .45);
  CHECK(far.s_left == 2);
  CHECK(far.s_right == 7);
  CHECK_THROWS_AS(interface_trace(st, grid, 5, 2), ConfigError);
  CHECK_THROWS_AS(interface_trace(st, grid, 0), ConfigError);
}

TEST_CASE("monitor totals") {
  const Physics physics(two_phase_model());
  const Grid1D grid{0, 1, 2, {}};
  const SchemeState st{{.5, .25}, {.2, .6}, .3};
  const MonitorSample m = monitor_sample(st, physics, grid);
  CHECK(m.t == .3);
  CHECK(m.mass_s == Approx(.375));
  CHECK(m.mass_sc == Approx(.5 * (.1 + .05 + .15 + .15)));
  CHECK(m.linf_c == Approx(.6));
  CHECK(m.tv_c == Approx(.4));
}

TEST_CASE("lemma checks flag growth of the concentration") {
  const Physics physics(two_phase_model());
  const Grid1D grid{0, 1, 3, {}};
  const BoundarySpec bc{BoundarySide::closed(), BoundarySide::closed()};
  const SchemeState before{{.5, .5, .5}, {.2, .4, .3}, 0};
  CHECK(check_lemmas(before, before, physics, grid, bc).ok());

  SchemeState after = before;
  after.c[1] = .9;
  const LemmaCheck bad = check_lemmas(before, after, physics, grid, bc);
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.linf_c);
  CHECK_FALSE(bad.first_failure.empty());
}

TEST_CASE("convergence tables") {
  ConvergenceTable t;
  t.label = "dflu";
  t.add(1.0 / 50, {.2, .04});
  t.add(1.0 / 100, {.1, .02});
  REQUIRE(t.rows.size() == 2);
  CHECK_FALSE(t.rows[0].rate_s);
  CHECK(*t.rows[1].rate_s == Approx(1));
  CHECK(*t.rows[1].rate_c == Approx(1));
  CHECK(t.to_csv() == "h,err_s,rate_s,err_c,rate_c\n0.02,0.2,,0.04,\n0.01,0.1,1,0.02,1\n");
  const std::string text = t.to_text();
  CHECK(text.rfind("dflu\n", 0) == 0);
  CHECK(text.find("1/50") != std::string::npos);
  CHECK(text.find("1/100") != std::string::npos);
  CHECK(text.find("1.0000") != std::string::npos);
  CHECK(text.find("2.0000e-01") != std::string::npos);
}

TEST_CASE("numbers round-trip") {
  CHECK(format_number(.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
