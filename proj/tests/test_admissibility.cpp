#include <doctest.h>

#include <cmath>
#include <optional>

#include "polymer/admissibility.hpp"
#include "polymer/error.hpp"

using namespace polymer;

namespace {

double level(const FluxModel& m, State u) { return m.f(u.s, u.c) / u.s; }

std::optional<State> partner(const FluxModel& m, State u, double c, bool upper) {
  const LineRoots r = line_roots(m, c, level(m, u), 0.0);
  const auto& s = upper ? r.upper : r.lower;
  if (!s) return std::nullopt;
  return State{*s, c};
}

struct Undercompressive {
  State minus, plus;
};

Undercompressive boomerang_pair() {
  const FluxModel m = FluxModel::boomerang();
  const double sigma = level(m, {std::sqrt(2.0 / 3.0), 0.5});
  return {{*line_roots(m, 1.0, sigma, 0.0).upper, 1.0}, {*line_roots(m, 0.0, sigma, 0.0).lower, 0.0}};
}

}  // namespace

TEST_CASE("configurations") {
  const FluxModel m = FluxModel::monotone_corey();
  const State a{0.4, 0.6};
  const State b = *partner(m, a, 0.2, false);
  const ContactClass one = classify_contact(m, a, b);
  CHECK(one.config == ContactConfig::OneFamily);
  for (Criterion c : {Criterion::KeyfitzKranzer, Criterion::IsaacsonTemple,
                      Criterion::DeSouzaMarchesin}) {
    CHECK(one.admissible(c));
  }
  CHECK(one.sigma == doctest::Approx(level(m, a)));

  const State hi{0.95, 0.2};
  const State hi2 = *partner(m, hi, 0.0, true);
  CHECK(classify_contact(m, hi, hi2).config == ContactConfig::TwoFamily);
  const State lo2 = *partner(m, hi, 0.0, false);
  const ContactClass over = classify_contact(m, lo2, hi);
  CHECK(over.config == ContactConfig::Overcompressive);
  CHECK(over.admissible(Criterion::KeyfitzKranzer));
  const ContactClass cross = classify_contact(m, hi, lo2);
  CHECK(cross.config == ContactConfig::Crossing);
  CHECK_FALSE(cross.admissible(Criterion::KeyfitzKranzer));
  CHECK_FALSE(cross.admissible(Criterion::IsaacsonTemple));
  CHECK_FALSE(cross.admissible(Criterion::DeSouzaMarchesin));

  const State on{coincidence_s(m, Adsorption(0.0), 0.4), 0.4};
  const ContactClass boundary = classify_contact(m, on, *partner(m, on, 0.1, false));
  CHECK(boundary.config == ContactConfig::Boundary);
  CHECK(boundary.admissible(Criterion::IsaacsonTemple));

  CHECK_THROWS_AS(classify_contact(m, {0.4, 0.6}, {0.4, 0.2}), Error);
  try {
    classify_contact(m, {0.4, 0.6}, {0.4, 0.2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAContact);
  }
}

TEST_CASE("undercompressive boomerang contact") {
  const FluxModel m = FluxModel::boomerang();
  const Undercompressive u = boomerang_pair();
  const ContactClass k = classify_contact(m, u.minus, u.plus);
  CHECK(k.config == ContactConfig::Crossing);
  CHECK(k.verdict(Criterion::DeSouzaMarchesin) == Verdict::Admissible);
  CHECK(k.verdict(Criterion::KeyfitzKranzer) == Verdict::NotAdmissible);
  CHECK(k.verdict(Criterion::IsaacsonTemple) == Verdict::NotAdmissible);
  CHECK(check_dsm(m, u.minus, u.plus));
  CHECK(k.sigma == doctest::Approx(1.1123724356957945).epsilon(1e-12));
}

TEST_CASE("de Souza-Marchesin paths") {
  const FluxModel mono = FluxModel::monotone_corey();
  const State a{0.4, 0.6};
  CHECK(check_dsm(mono, a, *partner(mono, a, 0.2, false)));

  const FluxModel boom = FluxModel::boomerang();
  // Level 1.15 sits above the saddle, so it splits into two bands around c = 0.5.
  const double L = 1.15;
  const State left{*line_roots(boom, 0.1, L, 0.0).lower, 0.1};
  const State right{*line_roots(boom, 0.9, L, 0.0).lower, 0.9};
  CHECK_FALSE(check_dsm(boom, left, right));
  // Same band, opposite branches: the path would have to turn at the apex.
  const State up{*line_roots(boom, 0.05, L, 0.0).upper, 0.05};
  CHECK_FALSE(check_dsm(boom, left, up));
  CHECK(check_dsm(boom, left, {*line_roots(boom, 0.05, L, 0.0).lower, 0.05}));
  CHECK_THROWS_AS(check_dsm(boom, left, {0.5, 0.9}), Error);
}

TEST_CASE("swapping the states") {
  const FluxModel m = FluxModel::monotone_corey();
  const State hi{0.95, 0.2};
  const State hi2 = *partner(m, hi, 0.0, true);
  const State lo{0.5, 0.1};
  const State lo2 = *partner(m, lo, 0.5, false);
  CHECK(classify_contact(m, hi2, hi).config == ContactConfig::TwoFamily);
  CHECK(classify_contact(m, lo2, lo).config == ContactConfig::OneFamily);
  const State x = *partner(m, hi, 0.0, false);
  CHECK(classify_contact(m, x, hi).config == ContactConfig::Overcompressive);
  CHECK(classify_contact(m, hi, x).config == ContactConfig::Crossing);
}

TEST_CASE("algebraic and path criteria agree for the monotone model") {
  const FluxModel m = FluxModel::monotone_corey();
  int compared = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const State u{0.05 + 0.9 * i / 19.0, j / 19.0};
      for (int k = 0; k < 5; ++k) {
        const double c = k / 4.0;
        for (bool upper : {false, true}) {
          const auto v = partner(m, u, c, upper);
          if (!v) continue;
          const ContactClass cc = classify_contact(m, u, *v);
          CHECK(cc.verdict(Criterion::KeyfitzKranzer) == cc.verdict(Criterion::IsaacsonTemple));
          CHECK(cc.verdict(Criterion::KeyfitzKranzer) == cc.verdict(Criterion::DeSouzaMarchesin));
          ++compared;
        }
      }
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("crossing gap") {
  const FluxModel m = FluxModel::monotone_corey();
  const State on{coincidence_s(m, Adsorption(0.0), 0.5), 0.5};
  CHECK(crossing_gap(m, on) < 1e-12);
  const double delta = crossing_gap(m, {0.95, 0.5});
  CHECK(delta > 0.0);
  const double s_star = coincidence_s(m, Adsorption(0.0), 0.5);
  CHECK(delta == doctest::Approx(std::abs(m.f_s(s_star, 0.5) - m.f_s(0.95, 0.5))));
  CHECK_THROWS_AS(crossing_gap(m, {0.3, 0.5}), Error);
  try {
    crossing_gap(m, {0.3, 0.5});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongRegion);
  }
}

TEST_CASE("vanishing adsorption verdicts") {
  const FluxModel m = FluxModel::monotone_corey();
  const Adsorption ads;
  const std::vector<double> seq = default_alpha_sequence();
  REQUIRE(seq.size() == 7);
  CHECK(seq.front() == 0.1);
  CHECK(seq.back() == doctest::Approx(0.1 / 64));

  SUBCASE("1-family contact with decreasing c: limit of c-shocks") {
    const State a{0.4, 0.6};
    const State b = *partner(m, a, 0.2, false);
    const VanishingAdsorptionReport r = vanishing_adsorption_verify(m, ads, a, b, seq);
    CHECK(r.verdict == Verdict::Admissible);
    CHECK(r.distances.back() < 0.05 * r.distances.front());
  }
  SUBCASE("1-family contact with increasing c: limit of c-rarefactions") {
    const State a{0.4, 0.2};
    const State b = *partner(m, a, 0.6, false);
    const VanishingAdsorptionReport r = vanishing_adsorption_verify(m, ads, a, b, seq);
    CHECK(r.verdict == Verdict::Admissible);
    CHECK(r.distances.back() < 0.05 * r.distances.front());
  }
  SUBCASE("crossing contact stays away") {
    const State a{0.95, 0.5};
    const State b = *partner(m, a, 0.0, false);
    const VanishingAdsorptionReport r = vanishing_adsorption_verify(m, ads, a, b, seq);
    CHECK(r.contact.config == ContactConfig::Crossing);
    CHECK(r.verdict == Verdict::NotAdmissible);
    CHECK(r.distances.back() > 0.5 * r.distances.front());
    CHECK(r.delta > 0.0);
    CHECK(r.floor > 0.0);
    CHECK(r.distances.back() > r.floor);
  }
  CHECK_THROWS_AS(vanishing_adsorption_verify(m, ads, {0.4, 0.6}, {0.4, 0.6}, {0.1, 0.2}), Error);
  CHECK_THROWS_AS(vanishing_adsorption_verify(m, ads, {0.4, 0.6}, {0.4, 0.6}, {}), Error);
}
