#include <cmath>
#include <numbers>

#include "doctest.h"
#include "knncut/continuum.hpp"
#include "knncut/errors.hpp"
#include "knncut/functionals.hpp"
#include "oracles.hpp"

using namespace knncut;

namespace {

// Chord of the line x.n = s through the box [0, a] x [0, b], clipped independently.
std::pair<std::array<double, 2>, std::array<double, 2>> chord(double a, double b, double theta, double s) {
  const double c = std::cos(theta), sn = std::sin(theta);
  // Point on line and direction.
  const std::array<double, 2> p{s * c, s * sn};
  const std::array<double, 2> dir{-sn, c};
  double lo = -1e9, hi = 1e9;
  const double bounds[2][2] = {{0, a}, {0, b}};
  for (int i = 0; i < 2; ++i) {
    if (std::abs(dir[i]) < 1e-15) continue;
    double t0 = (bounds[i][0] - p[i]) / dir[i];
    double t1 = (bounds[i][1] - p[i]) / dir[i];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  return {{p[0] + lo * dir[0], p[1] + lo * dir[1]}, {p[0] + hi * dir[0], p[1] + hi * dir[1]}};
}

}  // namespace

TEST_CASE("vertical cuts of the uniform unit square") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::uniform(sq);
  CHECK(weighted_tv_line(sq, rho, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  const ContinuumCut q = evaluate_line_cut(sq, rho, 0.0, 0.25);
  CHECK(q.weighted_tv == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q.nu_A == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(q.value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(q.a_is_lower);
  CHECK_THROWS_AS(weighted_tv_line(sq, rho, std::numbers::pi, 0.5), ArgumentError);
}

TEST_CASE("uniform box: weighted TV equals chord length") {
  const Domain box = Domain::box({2.0, 1.0});
  const Density rho = Density::uniform(box);
  const double h = std::sqrt(0.5);
  for (double theta : {0.3, 0.9, std::numbers::pi / 2, 2.0, 2.9}) {
    const auto [lo, hi] = offset_range(box, theta);
    for (int j = 1; j < 7; ++j) {
      const double s = lo + (hi - lo) * j / 7;
      const auto [p, q] = chord(2.0, 1.0, theta, s);
      const double len = std::hypot(p[0] - q[0], p[1] - q[1]);
      CHECK(weighted_tv_line(box, rho, theta, s) == doctest::Approx(len * h).epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted TV with a bump density matches a Monte-Carlo line integral") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::bump(sq, 0.5);
  for (auto [theta, s] : {std::pair{0.0, 0.5}, std::pair{1.0, 0.7}, std::pair{2.2, -0.1}}) {
    const auto [p, q] = chord(1.0, 1.0, theta, s);
    const double len = std::hypot(p[0] - q[0], p[1] - q[1]);
    Philox4x32 rng(17, 3);
    const int m = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const double u = rng.uniform();
      const double v = len * std::sqrt(rho.profile(p[0] + u * (q[0] - p[0])));
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / m;
    const double sigma = std::sqrt(std::max(0.0, sum2 / m - mean * mean) / m);
    CHECK(std::abs(weighted_tv_line(sq, rho, theta, s) - mean) <= 3 * sigma + 1e-9);
  }
}

TEST_CASE("side measures sum to one and match Monte Carlo") {
  const std::vector<Domain> doms = {Domain::unit_square(), Domain::ball(2, 1.0), Domain::ball(3, 0.8),
                                    Domain::dumbbell({1.0, 1.0}, 0.5, 0.25), Domain::box({1.0, 2.0, 0.5}),
                                    Domain::dumbbell({1.0, 1.0, 1.0}, 0.4, 0.3)};
  std::uint64_t seed = 1;
  for (const Domain& dom : doms) {
    const Density rho = Density::bump(dom, 0.4);
    for (double theta : {0.0, 0.4, std::numbers::pi / 2, 2.5}) {
      const auto [lo, hi] = offset_range(dom, theta);
      const double s = lo + 0.37 * (hi - lo);
      const ContinuumCut c = evaluate_line_cut(dom, rho, theta, s);
      CAPTURE(dom.describe());
      CAPTURE(theta);
      CHECK(c.nu_A + c.nu_Ac == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(c.nu_A <= c.nu_Ac);
      CHECK(c.value == c.weighted_tv / std::min(c.nu_A, c.nu_Ac));
      const oracle::Estimate mc = oracle::monte_carlo(dom.bounding_box(), 400000, seed++, [&](auto x) {
        return dom.contains(x) && c.indicator(x) ? rho(x) : 0.0;
      });
      CHECK(std::abs(mc.mean - c.nu_A) <= 3.5 * mc.sigma + 1e-12);
    }
  }
}

TEST_CASE("uniform square minimum is 2 on the mid-lines") {
  const Domain sq = Domain::unit_square();
  const ContinuumReport r = minimize_continuum(sq, Density::uniform(sq), CutFamily::line, 32);
  CHECK(r.best.value == doctest::Approx(2.0).epsilon(1e-6));
  for (const ScanPoint& p : r.scan) CHECK(r.best.value <= p.value);
  bool vertical = false, horizontal = false;
  for (const ContinuumCut& c : r.co_minimizers) {
    vertical |= c.theta == 0.0 && std::abs(c.offset - 0.5) < 1e-6;
    horizontal |= std::abs(c.theta - std::numbers::pi / 2) < 1e-12 && std::abs(c.offset - 0.5) < 1e-6;
  }
  CHECK(vertical);
  CHECK(horizontal);
  CHECK(r.co_minimizers.size() == 2);
  CHECK(r.rescaled_target == doctest::Approx(2.0 * (4.0 / 3.0) / std::pow(std::numbers::pi, 1.5)).epsilon(1e-6));
  CHECK(r.rescaled_target == doctest::Approx(0.4789).epsilon(1e-3));
}

TEST_CASE("2x1 box minimum uses the short mid-cut") {
  // rho = 1/2, h = rho^{1/2}, chord 1, balance 1/2.
  const Domain box = Domain::box({2.0, 1.0});
  const ContinuumReport r = minimize_continuum(box, Density::uniform(box), CutFamily::line, 32);
  CHECK(r.best.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(r.best.theta == 0.0);
  CHECK(r.best.offset == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("uniform balls and cubes") {
  const Domain disk = Domain::ball(2, 1.0);
  const ContinuumReport r2 = minimize_continuum(disk, Density::uniform(disk), CutFamily::line, 16);
  CHECK(r2.best.value == doctest::Approx(4.0 / std::sqrt(std::numbers::pi)).epsilon(1e-6));
  const Domain ball = Domain::ball(3, 1.0);
  const double h = std::pow(3.0 / (4.0 * std::numbers::pi), 2.0 / 3.0);
  const ContinuumReport r3 = minimize_continuum(ball, Density::uniform(ball), CutFamily::line, 8);
  CHECK(r3.best.value == doctest::Approx(2.0 * std::numbers::pi * h).epsilon(1e-6));
  const Domain cube = Domain::box({1.0, 1.0, 1.0});
  CHECK(minimize_continuum(cube, Density::uniform(cube), CutFamily::line, 8).best.value ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("dumbbell neck family") {
  const Domain db = Domain::dumbbell({1.0, 1.0}, 0.5, 0.25);
  const Density rho = Density::uniform(db);
  const double vol = 2.0 + 0.5 * 0.25;
  const double expected = 0.25 * std::sqrt(1.0 / vol) / 0.5;
  const ContinuumReport r = minimize_continuum(db, rho, CutFamily::vertical_neck, 32);
  CHECK(r.best.family == CutFamily::vertical_neck);
  CHECK(r.best.value == doctest::Approx(expected).epsilon(1e-6));
  CHECK(r.best.offset == doctest::Approx(1.25).epsilon(1e-6));
  for (const ScanPoint& p : r.scan) CHECK(r.best.value <= p.value);
  const double left[] = {0.5, 0.5};
  const double right[] = {2.0, 0.5};
  CHECK(continuum_indicator(db, r.best, left) != continuum_indicator(db, r.best, right));
  CHECK_THROWS_AS(minimize_continuum(Domain::unit_square(), Density::uniform(Domain::unit_square()),
                                     CutFamily::vertical_neck, 8),
                  ArgumentError);
  CHECK_THROWS_AS(evaluate_neck_cut(db, rho, 0.5), ArgumentError);
}

TEST_CASE("indicator conventions") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::uniform(sq);
  const ContinuumCut mid = evaluate_line_cut(sq, rho, 0.0, 0.5);
  // Equal halves: the left side has the smaller centroid.
  CHECK(mid.a_is_lower);
  const double left[] = {0.25, 0.5};
  const double on[] = {0.5, 0.9};
  const double right[] = {0.75, 0.5};
  CHECK(continuum_indicator(sq, mid, left) == 1);
  CHECK(continuum_indicator(sq, mid, on) == 1);
  CHECK(continuum_indicator(sq, mid, right) == 0);

  const ContinuumCut flat = evaluate_line_cut(sq, rho, std::numbers::pi / 2, 0.5);
  const double low[] = {0.5, 0.2};
  CHECK(continuum_indicator(sq, flat, low) == 1);

  // Smaller side is A even when it is the upper one.
  const ContinuumCut upper = evaluate_line_cut(sq, rho, 0.0, 0.8);
  CHECK_FALSE(upper.a_is_lower);
  const double far[] = {0.9, 0.1};
  const double at[] = {0.8, 0.1};
  CHECK(continuum_indicator(sq, upper, far) == 1);
  CHECK(continuum_indicator(sq, upper, at) == 1);
  CHECK(upper.nu_A == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("rescaled limit values") {
  ContinuumReport r;
  r.best.value = 2.0;
  CHECK(rescaled_limit_value(r, 2) == doctest::Approx(0.4789).epsilon(1e-3));
  r.best.value = 1.0;
  CHECK(rescaled_limit_value(r, 3) ==
        doctest::Approx((std::numbers::pi / 2) / std::pow(4.0 * std::numbers::pi / 3.0, 4.0 / 3.0)).epsilon(1e-12));
  r.best.value = 0.0;
  CHECK(rescaled_limit_value(r, 2) == 0.0);
}

TEST_CASE("cut family names") {
  CHECK(parse_cut_family(to_string(CutFamily::line)) == CutFamily::line);
  CHECK(parse_cut_family(to_string(CutFamily::vertical_neck)) == CutFamily::vertical_neck);
  CHECK_THROWS_AS(parse_cut_family("arc"), ArgumentError);
}
