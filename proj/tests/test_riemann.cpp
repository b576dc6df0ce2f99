#include <doctest.h>

#include <cmath>

#include "polymer/error.hpp"
#include "polymer/riemann.hpp"

using namespace polymer;

namespace {

const FluxModel kMono = FluxModel::monotone_corey();

bool is_s_wave(const Wave& w) {
  return w.kind == WaveKind::SShock || w.kind == WaveKind::SRarefaction;
}

const Wave& only_c_wave(const RiemannSolution& sol) {
  const Wave* found = nullptr;
  for (const Wave& w : sol.waves()) {
    if (is_s_wave(w)) continue;
    REQUIRE(found == nullptr);
    found = &w;
  }
  REQUIRE(found != nullptr);
  return *found;
}

}  // namespace

TEST_CASE("identical data gives no waves") {
  for (Criterion c : {Criterion::KeyfitzKranzer, Criterion::IsaacsonTemple,
                      Criterion::DeSouzaMarchesin}) {
    const RiemannSolution sol = solve_m0(kMono, {0.4, 0.3}, {0.4, 0.3}, c);
    CHECK(sol.waves().empty());
    CHECK(sol.sample(0.7).s == 0.4);
    CHECK(validate(sol).ok());
  }
  CHECK(solve_malpha(kMono, Adsorption(0.05), {0.4, 0.3}, {0.4, 0.3}).waves().empty());
}

TEST_CASE("c-faster left state routes through the coincidence locus") {
  const State ul{0.95, 0.8}, ur{0.3, 0.2};
  const RiemannSolution sol = solve_m0(kMono, ul, ur, Criterion::IsaacsonTemple);
  CHECK(sol.structure == "s,c,s");
  const Wave& c = only_c_wave(sol);
  CHECK(c.kind == WaveKind::Contact);
  CHECK(c.left.s == doctest::Approx(coincidence_s(kMono, Adsorption(0.0), 0.8)).epsilon(1e-9));
  // The contact rides on the level through the coincidence point.
  CHECK(c.speed_lo == doctest::Approx(kMono.f(c.left.s, 0.8) / c.left.s).epsilon(1e-12));
  CHECK(c.speed_lo == doctest::Approx(kMono.f(c.right.s, 0.2) / c.right.s).epsilon(1e-9));
  CHECK(validate(sol).ok());
}

TEST_CASE("s-faster left state starts with the contact") {
  const RiemannSolution sol = solve_m0(kMono, {0.3, 0.2}, {0.6, 0.8}, Criterion::IsaacsonTemple);
  CHECK(sol.structure == "c,s");
  CHECK(sol.waves().front().kind == WaveKind::Contact);
  CHECK(validate(sol).ok());
}

TEST_CASE("boomerang crossing data under de Souza-Marchesin") {
  const FluxModel boom = FluxModel::boomerang();
  const State ul{0.8836634939894802, 1.0}, ur{0.5658262487936979, 0.0};
  const RiemannSolution dsm = solve_m0(boom, ul, ur, Criterion::DeSouzaMarchesin);
  REQUIRE(dsm.waves().size() == 1);
  CHECK(dsm.waves()[0].kind == WaveKind::Contact);
  CHECK(dsm.waves()[0].speed_lo == doctest::Approx(1.1123724356957945).epsilon(1e-9));
  CHECK(validate(dsm).ok());

  const RiemannSolution kk = solve_m0(boom, ul, ur, Criterion::KeyfitzKranzer);
  CHECK(kk.structure == "s,c,s");
  CHECK(l1_distance(kk, dsm) > 0.01);
  CHECK_THROWS_AS(solve_malpha(boom, Adsorption(0.05), ul, ur), Error);
}

TEST_CASE("adsorption solver") {
  SUBCASE("equal concentrations reduce to a scalar problem") {
    const RiemannSolution sol = solve_malpha(kMono, Adsorption(0.05), {1.0, 0.4}, {0.0, 0.4});
    CHECK(sol.structure == "s");
    const RiemannSolution ref = solve_m0(kMono, {1.0, 0.4}, {0.0, 0.4}, Criterion::IsaacsonTemple);
    CHECK(l1_distance(sol, ref) < 1e-12);
  }
  SUBCASE("decreasing c gives a c-shock") {
    const RiemannSolution sol = solve_malpha(kMono, Adsorption(0.05), {0.95, 0.8}, {0.3, 0.2});
    CHECK(sol.structure == "s,c,s");
    CHECK(only_c_wave(sol).kind == WaveKind::CShock);
    const ValidationReport rep = validate(sol);
    CHECK(rep.ok());
    CHECK(rep.max_rh_residual < 1e-10);
  }
  SUBCASE("increasing c gives a c-rarefaction") {
    const RiemannSolution sol = solve_malpha(kMono, Adsorption(0.05), {0.3, 0.2}, {0.6, 0.8});
    const Wave& c = only_c_wave(sol);
    CHECK(c.kind == WaveKind::CRarefaction);
    REQUIRE(c.c_fan);
    CHECK(c.speed_lo < c.speed_hi);
    CHECK(validate(sol).ok());
    // Inside the fan the state sits on the integral curve with lambda_c = xi.
    for (int k = 1; k < 10; ++k) {
      const double xi = c.speed_lo + (c.speed_hi - c.speed_lo) * k / 10.0;
      const State u = sol.sample(xi);
      CHECK(char_speeds(kMono, Adsorption(0.05), u).lambda_c == doctest::Approx(xi).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(solve_malpha(kMono, Adsorption(0.0), {0.3, 0.2}, {0.6, 0.8}), Error);
}

TEST_CASE("sampling") {
  const State ul{0.95, 0.8}, ur{0.3, 0.2};
  const RiemannSolution sol = solve_m0(kMono, ul, ur, Criterion::IsaacsonTemple);
  CHECK(sol.sample(-10.0) == ul);
  CHECK(sol.sample(10.0) == ur);
  const auto constants = sol.constants();
  CHECK(constants.front() == ul);
  CHECK(constants.back() == ur);
  for (const Wave& w : sol.waves()) {
    if (w.kind != WaveKind::SRarefaction) continue;
    for (int k = 1; k < 8; ++k) {
      const double xi = w.speed_lo + (w.speed_hi - w.speed_lo) * k / 8.0;
      const State u = sol.sample(xi);
      CHECK(kMono.f_s(u.s, u.c) == doctest::Approx(xi).epsilon(1e-9));
    }
  }
  const std::vector<double> xs{-1.0, 0.5, 1.5, 3.0};
  const auto prof = sol.profile(xs);
  REQUIRE(prof.size() == xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(prof[k] == sol.sample(xs[k]));
}

TEST_CASE("L1 distance") {
  const RiemannSolution a = solve_m0(kMono, {0.95, 0.8}, {0.3, 0.2}, Criterion::IsaacsonTemple);
  const RiemannSolution b = solve_m0(kMono, {0.3, 0.2}, {0.6, 0.8}, Criterion::IsaacsonTemple);
  const RiemannSolution c = solve_malpha(kMono, Adsorption(0.05), {0.95, 0.8}, {0.3, 0.2});
  CHECK(l1_distance(a, a) == 0.0);
  CHECK(l1_distance(a, b) == doctest::Approx(l1_distance(b, a)).epsilon(1e-12));
  CHECK(l1_distance(a, b) <= l1_distance(a, c) + l1_distance(c, b) + 1e-12);

  // Two constant states: the distance is the window width times the jump.
  const RiemannSolution k1 = solve_m0(kMono, {0.4, 0.3}, {0.4, 0.3}, Criterion::IsaacsonTemple);
  const RiemannSolution k2 = solve_m0(kMono, {0.6, 0.3}, {0.6, 0.3}, Criterion::IsaacsonTemple);
  CHECK(l1_distance(k1, k2) == doctest::Approx(4.0 * 0.2).epsilon(1e-12));
  CHECK(l1_distance(k1, k2, 0.0, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(l1_distance(k1, k2, 1.0, 1.0), Error);
}

TEST_CASE("validation catches a perturbed speed") {
  RiemannSolution sol = solve_m0(kMono, {0.95, 0.8}, {0.3, 0.2}, Criterion::IsaacsonTemple);
  REQUIRE(validate(sol).ok());
  for (Wave& w : sol.waves()) {
    if (w.kind != WaveKind::Contact) continue;
    w.speed_lo += 1e-3;
    w.speed_hi += 1e-3;
  }
  const ValidationReport rep = validate(sol);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.failures.empty());

  RiemannSolution moved = solve_m0(kMono, {0.95, 0.8}, {0.3, 0.2}, Criterion::IsaacsonTemple);
  moved.waves().back().right.s += 1e-3;
  CHECK_FALSE(validate(moved).ok());
}

TEST_CASE("nonuniqueness pair") {
  const State ul{0.95, 0.1};
  const double level = kMono.f(ul.s, ul.c) / ul.s;
  const State ur{*line_roots(kMono, 0.8, level, 0.0).lower, 0.8};
  const auto [first, second] = nonuniqueness_pair(kMono, ul, ur);
  CHECK(first.structure == "c");
  CHECK(second.structure == "s,c,s");
  CHECK(validate(first).ok());
  CHECK(validate(second).ok());
  CHECK(l1_distance(first, second) > 0.01);
  REQUIRE(first.waves()[0].contact);
  CHECK(first.waves()[0].contact->config == ContactConfig::Crossing);

  const RiemannSolution it = solve_m0(kMono, ul, ur, Criterion::IsaacsonTemple);
  CHECK(l1_distance(it, second) < 1e-9);
  CHECK(l1_distance(it, first) > 0.01);

  CHECK_THROWS_AS(nonuniqueness_pair(kMono, {0.3, 0.1}, ur), Error);
}

TEST_CASE("solution is continuous across the coincidence locus") {
  const double s_star = coincidence_s(kMono, Adsorption(0.0), 0.8);
  const State ur{0.3, 0.2};
  const RiemannSolution above = solve_m0(kMono, {s_star + 1e-6, 0.8}, ur, Criterion::IsaacsonTemple);
  const RiemannSolution below = solve_m0(kMono, {s_star - 1e-6, 0.8}, ur, Criterion::IsaacsonTemple);
  CHECK(above.structure != below.structure);
  CHECK(l1_distance(above, below) < 1e-4);
}

TEST_CASE("malformed states") {
  CHECK_THROWS_AS(solve_m0(kMono, {1.2, 0.3}, {0.4, 0.3}, Criterion::IsaacsonTemple), Error);
  CHECK_THROWS_AS(solve_m0(kMono, {0.4, std::nan("")}, {0.4, 0.3}, Criterion::IsaacsonTemple),
                  Error);
}
