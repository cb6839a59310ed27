#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "knncut/domain.hpp"
#include "knncut/errors.hpp"
#include "knncut/knn_graph.hpp"
#include "knncut/math.hpp"
#include "knncut/rng.hpp"
#include "oracles.hpp"

using namespace knncut;

TEST_CASE("Philox4x32-10 matches the Random123 known-answer vector") {
  const auto out = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);
}

TEST_CASE("volume of supported shapes") {
  CHECK(Domain::unit_square().volume() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(Domain::ball(2, 1.0).volume() == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(Domain::ball(3, 1.0).volume() == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
  CHECK(Domain::box({2.0, 1.0, 0.5}).volume() == doctest::Approx(1.0));
  const Domain db = Domain::dumbbell({1.0, 1.0}, 0.5, 0.2);
  CHECK(db.volume() == doctest::Approx(2.1));
  CHECK(Domain::dumbbell({1.0, 1.0, 1.0}, 0.5, 0.2).volume() == doctest::Approx(2.0 + 0.5 * 0.04));
}

TEST_CASE("membership is exact and closed") {
  const Domain sq = Domain::unit_square();
  const double corner[] = {1.0, 1.0};
  const double outside[] = {std::nextafter(1.0, 2.0), 0.5};
  CHECK(sq.contains(corner));
  CHECK_FALSE(sq.contains(outside));

  const Domain db = Domain::dumbbell({1.0, 1.0}, 0.5, 0.2);
  const double neck[] = {1.25, 0.5};
  const double beside_neck[] = {1.25, 0.75};
  const double right_lobe[] = {2.4, 0.9};
  CHECK(db.contains(neck));
  CHECK_FALSE(db.contains(beside_neck));
  CHECK(db.contains(right_lobe));

  const Domain disk = Domain::ball(2, 1.0);
  const double rim[] = {2.0, 1.0};
  const double off[] = {1.8, 1.8};
  CHECK(disk.contains(rim));
  CHECK_FALSE(disk.contains(off));
}

TEST_CASE("densities normalize and respect their bounds") {
  CHECK_THROWS_AS(Density::bump(Domain::unit_square(), 1.0), ConfigurationError);
  for (const Domain& dom : {Domain::unit_square(), Domain::ball(2, 1.0), Domain::ball(3, 0.7),
                            Domain::dumbbell({1.0, 1.0}, 0.5, 0.2), Domain::box({2.0, 1.0, 1.0})}) {
    for (double a : {0.0, 0.5, -0.4}) {
      const Density rho = Density::bump(dom, a);
      const Box bb = dom.bounding_box();
      // Gauss-Legendre over x1 of profile * cross-section, split where the section jumps.
      std::vector<double> cuts = dom.x1_breakpoints();
      std::sort(cuts.begin(), cuts.end());
      double mass = 0.0;
      for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        mass += oracle::gauss_legendre([&](double t) { return rho.profile(t) * dom.cross_section(t); }, cuts[p],
                                       cuts[p + 1], 512);
      }
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(rho.rho_min() > 0.0);
      CHECK(rho.rho_min() <= rho.rho_max());
      for (double t = 0.0; t <= bb.hi[0]; t += bb.hi[0] / 37) {
        CHECK(rho.profile(t) >= rho.rho_min() * (1 - 1e-12));
        CHECK(rho.profile(t) <= rho.rho_max() * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("sample is deterministic and stays in the domain") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::uniform(sq);
  const PointCloud a = sample(sq, rho, 4, 7);
  const PointCloud b = sample(sq, rho, 4, 7);
  REQUIRE(a.size() == 4);
  CHECK(a.coords == b.coords);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(sq.contains(a.point(i)));
  CHECK(sample(sq, rho, 4, 8).coords != a.coords);
  CHECK_THROWS_AS(sample(sq, rho, 0, 1), ArgumentError);
}

TEST_CASE("uniform sample mean obeys the law of large numbers") {
  const Domain sq = Domain::unit_square();
  const PointCloud c = sample(sq, Density::uniform(sq), 100000, 1);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    mx += c.point(i)[0];
    my += c.point(i)[1];
  }
  mx /= c.size();
  my /= c.size();
  // 3 sigma = 3 sqrt(1/12 / 1e5) ~ 0.0027, well inside the 0.01 band.
  CHECK(std::abs(mx - 0.5) < 0.01);
  CHECK(std::abs(my - 0.5) < 0.01);
  CHECK(std::abs(mx - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / 1e5));
}

TEST_CASE("uniform sample passes a chi-square test on a 4x4 grid") {
  const Domain sq = Domain::unit_square();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const PointCloud c = sample(sq, Density::uniform(sq), 10000, seed);
    std::vector<int> counts(16, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int gx = std::min(3, static_cast<int>(c.point(i)[0] * 4));
      const int gy = std::min(3, static_cast<int>(c.point(i)[1] * 4));
      ++counts[gx * 4 + gy];
    }
    double chi2 = 0.0;
    for (int k : counts) chi2 += (k - 625.0) * (k - 625.0) / 625.0;
    // Upper 1e-3 quantile of chi-square with 15 degrees of freedom.
    CHECK(chi2 < 37.697);
  }
}

TEST_CASE("bump sample follows its density in x1") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::bump(sq, 0.5);
  const PointCloud c = sample(sq, rho, 40000, 11);
  int left = 0;
  for (std::size_t i = 0; i < c.size(); ++i) left += c.point(i)[0] < 0.25;
  const double expected = rho.profile_integral(0.0, 0.25);
  const double sd = std::sqrt(expected * (1 - expected) / c.size());
  CHECK(std::abs(left / 40000.0 - expected) < 4 * sd);
}

TEST_CASE("dumbbell sample like the n=120 picture covers both lobes and the neck") {
  const Domain db = Domain::dumbbell({1.0, 1.0}, 0.5, 0.25);
  const PointCloud c = sample(db, Density::uniform(db), 120, 5);
  int left = 0, right = 0, neck = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    REQUIRE(db.contains(c.point(i)));
    const double x = c.point(i)[0];
    if (x < 1.0) ++left;
    else if (x > 1.5) ++right;
    else ++neck;
  }
  CHECK(left > 40);
  CHECK(right > 40);
  CHECK(neck > 0);
}

TEST_CASE("nu_ball closed-form cases") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::uniform(sq);
  const double mid[] = {0.5, 0.5};
  const double origin[] = {0.0, 0.0};
  CHECK(nu_ball(sq, rho, mid, 0.1) == doctest::Approx(std::numbers::pi * 0.01).epsilon(1e-12));
  CHECK(nu_ball(sq, rho, origin, 0.1) == doctest::Approx(std::numbers::pi * 0.01 / 4).epsilon(1e-10));
  CHECK(nu_ball(sq, rho, mid, 0.0) == 0.0);
  CHECK(nu_ball(sq, rho, mid, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(nu_ball(sq, rho, mid, -1.0), ArgumentError);

  const Domain cube = Domain::box({1.0, 1.0, 1.0});
  const double corner3[] = {0.0, 0.0, 0.0};
  CHECK(nu_ball(cube, Density::uniform(cube), corner3, 0.2) ==
        doctest::Approx(4.0 / 3.0 * std::numbers::pi * 0.008 / 8).epsilon(1e-9));

  const Domain disk = Domain::ball(2, 1.0);
  const double centre[] = {1.0, 1.0};
  CHECK(nu_ball(disk, Density::uniform(disk), centre, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
  const double rim[] = {2.0, 1.0};
  // Lens of two unit disks at distance 1: 2 pi / 3 - sqrt(3) / 2.
  CHECK(nu_ball(disk, Density::uniform(disk), rim, 1.0) ==
        doctest::Approx((2 * std::numbers::pi / 3 - std::sqrt(3.0) / 2) / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("nu_ball agrees with Monte-Carlo integration") {
  struct Case {
    Domain dom;
    double a;
    std::vector<double> c;
    double r;
  };
  const std::vector<Case> cases = {
      {Domain::unit_square(), 0.5, {0.5, 0.5}, 0.1},
      {Domain::unit_square(), 0.5, {0.95, 0.1}, 0.3},
      {Domain::ball(2, 1.0), 0.6, {1.8, 1.2}, 0.5},
      {Domain::dumbbell({1.0, 1.0}, 0.5, 0.25), -0.3, {1.1, 0.5}, 0.4},
      {Domain::box({1.0, 1.0, 1.0}), 0.5, {0.1, 0.9, 0.5}, 0.35},
      {Domain::ball(3, 1.0), 0.4, {1.5, 1.0, 1.7}, 0.6},
  };
  std::uint64_t seed = 1;
  for (const Case& cs : cases) {
    const Density rho = Density::bump(cs.dom, cs.a);
    const double value = nu_ball(cs.dom, rho, cs.c, cs.r);
    const oracle::Estimate mc = oracle::monte_carlo(cs.dom.bounding_box(), 1000000, seed++, [&](auto x) {
      const double d2 = squared_distance(x, cs.c);
      return (d2 < cs.r * cs.r && cs.dom.contains(x)) ? rho(x) : 0.0;
    });
    CAPTURE(cs.dom.describe());
    CHECK(std::abs(value - mc.mean) < 3.0 * mc.sigma + 1e-12);
  }
}

TEST_CASE("nu_ball is monotone in r and bounded by the interior-ball mass") {
  const Domain sq = Domain::unit_square();
  const Density rho = Density::bump(sq, 0.5);
  const double c[] = {0.3, 0.6};
  double prev = 0.0;
  for (double r = 0.0; r <= 1.6; r += 0.05) {
    const double v = nu_ball(sq, rho, c, r);
    CHECK(v >= prev - 1e-12);
    CHECK(v <= std::min(1.0, unit_ball_volume(2) * rho.rho_max() * r * r) + 1e-12);
    prev = v;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("nu_box sums to one over a partition of the bounding box") {
  for (const Domain& dom : {Domain::unit_square(), Domain::ball(2, 1.0), Domain::dumbbell({1.0, 1.0}, 0.5, 0.25)}) {
    const Density rho = Density::bump(dom, 0.3);
    const Box bb = dom.bounding_box();
    double total = 0.0;
    const int g = 7;
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        Box cell{{bb.hi[0] * i / g, bb.hi[1] * j / g}, {bb.hi[0] * (i + 1) / g, bb.hi[1] * (j + 1) / g}};
        total += nu_box(dom, rho, cell);
      }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}
