#include <doctest.h>

#include <cmath>
#include <random>

#include "polymer/error.hpp"
#include "polymer/model.hpp"

using namespace polymer;

namespace {

// Plain closed form, written independently of the library.
double flux(double s, double mu) { return s * s / (s * s + mu * (1 - s) * (1 - s)); }

double fd_rel_err(double exact, double approx) {
  return std::abs(exact - approx) / std::max(1.0, std::abs(exact));
}

}  // namespace

TEST_CASE("boomerang closed-form values") {
  const FluxModel m = FluxModel::boomerang();
  CHECK(m.f(0.5, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m.f(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.mu(0.5) == doctest::Approx(2.0));
  for (int k = 0; k <= 100; ++k) {
    const double s = k / 100.0;
    CHECK(std::abs(m.f(s, 0.0) - m.f(s, 1.0)) < 1e-14);
    if (s > 0.0 && s < 1.0) CHECK(std::abs(m.eval({s, 0.5}).f_c) < 1e-12);
  }
}

TEST_CASE("boundary identities on a c-grid") {
  for (const FluxModel& m : {FluxModel::monotone_corey(), FluxModel::boomerang()}) {
    for (int k = 0; k <= 100; ++k) {
      const double c = k / 100.0;
      const FluxDerivatives d0 = m.eval({0.0, c});
      const FluxDerivatives d1 = m.eval({1.0, c});
      CHECK(std::abs(d0.f) < 1e-14);
      CHECK(std::abs(d1.f - 1.0) < 1e-14);
      CHECK(std::abs(d0.f_s) < 1e-14);
      CHECK(std::abs(d1.f_s) < 1e-14);
    }
  }
}

TEST_CASE("monotone family has f_c < 0 in the interior") {
  const FluxModel m = FluxModel::monotone_corey();
  for (int i = 1; i < 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      CHECK(m.eval({i / 100.0, j / 100.0}).f_c < 0.0);
    }
  }
}

TEST_CASE("S-shape: f_ss changes sign once") {
  for (const FluxModel& m : {FluxModel::monotone_corey(), FluxModel::boomerang()}) {
    for (double c : {0.0, 0.3, 0.5, 1.0}) {
      int changes = 0;
      double prev = m.f_ss(1e-3, c);
      for (int k = 2; k < 1000; ++k) {
        const double v = m.f_ss(k / 1000.0, c);
        if ((v > 0) != (prev > 0)) ++changes;
        prev = v;
      }
      CHECK(changes == 1);
    }
  }
}

TEST_CASE("partials agree with central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const double h = 1e-5;
  for (const FluxModel& m : {FluxModel::monotone_corey(), FluxModel::boomerang()}) {
    for (int n = 0; n < 100; ++n) {
      const double s = u(rng), c = u(rng);
      const FluxDerivatives d = m.eval({s, c});
      auto f = [&](double ss, double cc) { return flux(ss, m.mu(cc)); };
      CHECK(fd_rel_err(d.f, f(s, c)) < 1e-14);
      CHECK(fd_rel_err(d.f_s, (f(s + h, c) - f(s - h, c)) / (2 * h)) < 1e-6);
      CHECK(fd_rel_err(d.f_c, (f(s, c + h) - f(s, c - h)) / (2 * h)) < 1e-6);
      CHECK(fd_rel_err(d.f_ss, (f(s + h, c) - 2 * f(s, c) + f(s - h, c)) / (h * h)) < 1e-4);
      CHECK(fd_rel_err(d.f_cc, (f(s, c + h) - 2 * f(s, c) + f(s, c - h)) / (h * h)) < 1e-4);
      const double fsc = (f(s + h, c + h) - f(s + h, c - h) - f(s - h, c + h) + f(s - h, c - h)) /
                         (4 * h * h);
      CHECK(fd_rel_err(d.f_sc, fsc) < 1e-4);
      CHECK(fd_rel_err(d.f_s, m.f_s(s, c)) < 1e-14);
      CHECK(fd_rel_err(d.f_ss, m.f_ss(s, c)) < 1e-13);
    }
  }
}

TEST_CASE("Langmuir isotherm") {
  const Adsorption a(0.1);
  CHECK(a.a1(0.0) == 0.0);
  CHECK(a.a1(1.0) == doctest::Approx(1.0));
  for (int k = 0; k <= 100; ++k) {
    const double c = k / 100.0;
    CHECK(a.a1_prime(c) > 0.0);
    CHECK(a.a1_second(c) < 0.0);
    const double gap = a.a1(1.0) * c - a.a1(c);
    if (k == 0 || k == 100) {
      CHECK(std::abs(gap) < 1e-15);
    } else {
      CHECK(gap < 0.0);
    }
  }
  CHECK(a1_secant(a, 0.3, 0.3) == doctest::Approx(a.a1_prime(0.3)).epsilon(1e-14));
  CHECK(a1_secant(a, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a1_secant(a, 0.2, 0.7) == doctest::Approx(a1_secant(a, 0.7, 0.2)).epsilon(1e-15));
  CHECK(a1_secant(a, 0.2, 0.7) == doctest::Approx((a.a1(0.7) - a.a1(0.2)) / 0.5).epsilon(1e-13));
  CHECK_THROWS_AS(Adsorption(-0.1), Error);
}

TEST_CASE("characteristic speeds") {
  const FluxModel m = FluxModel::boomerang();
  const Adsorption bare(0.0);
  for (double c : {0.0, 0.4, 1.0}) {
    const CharSpeeds sp = char_speeds(m, bare, {1.0, c});
    CHECK(sp.lambda_c == doctest::Approx(1.0));
    CHECK(std::abs(sp.lambda_s) < 1e-14);
  }
  const double s = std::sqrt(2.0 / 3.0);
  const CharSpeeds sp = char_speeds(m, bare, {s, 0.5});
  CHECK(std::abs(sp.lambda_s - sp.lambda_c) < 1e-12);
  CHECK(sp.lambda_s == doctest::Approx(1.1123724356957945).epsilon(1e-12));
  CHECK_THROWS_AS(char_speeds(m, bare, {0.0, 0.3}), Error);
  try {
    char_speeds(m, bare, {0.0, 0.3});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateState);
  }
  CHECK_NOTHROW(char_speeds(m, Adsorption(0.1), {0.0, 0.3}));
}

TEST_CASE("coincidence anchors") {
  const FluxModel m = FluxModel::boomerang();
  const Adsorption bare(0.0);
  CHECK(std::abs(coincidence_s(m, bare, 0.5) - std::sqrt(2.0 / 3.0)) < 1e-10);
  CHECK(std::abs(coincidence_s(m, bare, 0.0) - std::sqrt(0.5)) < 1e-10);

  // Independent bisection on lambda_s - lambda_c.
  auto gap = [&](double s) { return m.f_s(s, 0.5) - m.f(s, 0.5) / s; };
  double lo = 0.6, hi = 0.99;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((gap(mid) > 0) == (gap(lo) > 0) ? lo : hi) = mid;
  }
  CHECK(std::abs(coincidence_s(m, bare, 0.5) - lo) < 1e-10);

  for (const FluxModel& model : {FluxModel::monotone_corey(), FluxModel::boomerang()}) {
    for (double alpha : {0.0, 0.05, 0.3}) {
      const Adsorption ads(alpha);
      for (int k = 0; k <= 20; ++k) {
        const double c = k / 20.0;
        const double sc = coincidence_s(model, ads, c);
        const CharSpeeds sp = char_speeds(model, ads, {sc, c});
        CHECK(std::abs(sp.lambda_s - sp.lambda_c) < 1e-10);
        if (alpha > 0.0) CHECK(sc > coincidence_s(model, bare, c));
      }
    }
  }
}

TEST_CASE("eigen relation of the characteristic matrix") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (const FluxModel& m : {FluxModel::monotone_corey(), FluxModel::boomerang()}) {
    for (double alpha : {0.0, 0.1}) {
      const Adsorption ads(alpha);
      for (int n = 0; n < 20; ++n) {
        const State U{u(rng), u(rng)};
        const FluxDerivatives d = m.eval(U);
        const double den = U.s + alpha * ads.a1_prime(U.c);
        // Rows of the characteristic matrix after dividing the accumulation term.
        const double a11 = d.f_s, a12 = d.f_c, a21 = 0.0, a22 = d.f / den;
        const auto r = c_eigenvector(m, ads, U);
        const double lam = char_speeds(m, ads, U).lambda_c;
        CHECK(std::abs(a11 * r[0] + a12 * r[1] - lam * r[0]) < 1e-10);
        CHECK(std::abs(a21 * r[0] + a22 * r[1] - lam * r[1]) < 1e-10);
      }
    }
  }
  const FluxModel b = FluxModel::boomerang();
  CHECK(std::abs(c_eigenvector(b, Adsorption(0.0), {0.7, 0.5})[0]) < 1e-12);
  const double sc = coincidence_s(b, Adsorption(0.1), 0.3);
  CHECK(std::abs(c_eigenvector(b, Adsorption(0.1), {sc, 0.3})[1]) < 1e-10);
}

TEST_CASE("linear degeneracy measure") {
  const FluxModel m = FluxModel::monotone_corey();
  CHECK(lin_degeneracy(m, Adsorption(0.0), {0.4, 0.3}) == 0.0);
  const Adsorption ads(0.1);
  const double sc = coincidence_s(m, ads, 0.6);
  CHECK(std::abs(lin_degeneracy(m, ads, {sc, 0.6})) < 1e-10);

  // Directional difference of lambda_c along r.
  for (const State U : {State{0.3, 0.4}, State{0.95, 0.7}}) {
    const double val = lin_degeneracy(m, ads, U);
    const CharSpeeds sp = char_speeds(m, ads, U);
    CHECK(val != 0.0);
    CHECK((val > 0) == (sp.lambda_s - sp.lambda_c > 0));
    const auto r = c_eigenvector(m, ads, U);
    const double h = 1e-6;
    auto lc = [&](double t) {
      return char_speeds(m, ads, {U.s + t * r[0], U.c + t * r[1]}).lambda_c;
    };
    const double fd = (lc(h) - lc(-h)) / (2 * h);
    CHECK(std::abs(fd - val) < 1e-6 * std::max(1.0, std::abs(val)));
  }
}

TEST_CASE("line roots and tangency") {
  const FluxModel m = FluxModel::monotone_corey();
  const double s_star = tangency_s(m, 0.0, 0.0);
  CHECK(std::abs(s_star - std::sqrt(0.5)) < 1e-12);
  const LineRoots r = line_roots(m, 0.0, 1.1, 0.0);
  REQUIRE(r.lower);
  REQUIRE(r.upper);
  CHECK(*r.lower < s_star);
  CHECK(*r.upper > s_star);
  CHECK(std::abs(m.f(*r.lower, 0.0) - 1.1 * *r.lower) < 1e-12);
  CHECK(std::abs(m.f(*r.upper, 0.0) - 1.1 * *r.upper) < 1e-12);
  // Above the apex level there is nothing.
  const LineRoots none = line_roots(m, 0.0, 1.3, 0.0);
  CHECK_FALSE(none.lower);
  CHECK_FALSE(none.upper);
  // Below 1 the upper branch leaves the square.
  const LineRoots low = line_roots(m, 0.0, 0.9, 0.0);
  CHECK(low.lower);
  CHECK_FALSE(low.upper);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(FluxModel::monotone_corey(1.0, -1.0), Error);
  CHECK_THROWS_AS(FluxModel::boomerang(-0.5, 1.0), Error);
  CHECK(FluxModel::monotone_corey().name() == "monotone");
  CHECK(FluxModel::boomerang().name() == "boomerang");
}
