#include "knncut/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "knncut/errors.hpp"
#include "knncut/math.hpp"
#include "knncut/rng.hpp"
#include "quadrature.hpp"

namespace knncut {

using detail::integrate_pieces;
using detail::safe_sqrt;

double Box::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

bool Box::contains(std::span<const double> x) const {
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Domain

Domain Domain::box(std::vector<double> lengths) {
  if (lengths.size() < 2) throw ArgumentError("box domain needs dimension >= 2");
  for (double l : lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ArgumentError("box side lengths must be positive");
  }
  Domain d;
  d.shape_ = Shape::box;
  d.lengths_ = std::move(lengths);
  return d;
}

Domain Domain::ball(int dim, double radius) {
  if (dim < 2) throw ArgumentError("ball domain needs dimension >= 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ArgumentError("ball radius must be positive");
  Domain d;
  d.shape_ = Shape::ball;
  d.lengths_.assign(dim, 2.0 * radius);
  d.radius_ = radius;
  return d;
}

Domain Domain::dumbbell(std::vector<double> lobe, double neck_length, double neck_width) {
  if (lobe.size() < 2) throw ArgumentError("dumbbell domain needs dimension >= 2");
  for (double l : lobe) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ArgumentError("dumbbell lobe lengths must be positive");
  }
  if (!(neck_length > 0.0)) throw ArgumentError("dumbbell neck length must be positive");
  if (!(neck_width > 0.0)) throw ArgumentError("dumbbell neck width must be positive");
  for (std::size_t i = 1; i < lobe.size(); ++i) {
    if (neck_width > lobe[i]) throw ArgumentError("dumbbell neck wider than its lobes");
  }
  Domain d;
  d.shape_ = Shape::dumbbell;
  d.lengths_ = std::move(lobe);
  d.neck_length_ = neck_length;
  d.neck_width_ = neck_width;
  return d;
}

Box Domain::bounding_box() const {
  Box b{std::vector<double>(dim(), 0.0), lengths_};
  if (shape_ == Shape::dumbbell) b.hi[0] = 2.0 * lengths_[0] + neck_length_;
  return b;
}

std::vector<Box> Domain::pieces() const {
  switch (shape_) {
    case Shape::box:
      return {bounding_box()};
    case Shape::ball:
      return {};
    case Shape::dumbbell: {
      const int d = dim();
      const double l1 = lengths_[0];
      Box left{std::vector<double>(d, 0.0), lengths_};
      Box right = left;
      right.lo[0] = l1 + neck_length_;
      right.hi[0] = 2.0 * l1 + neck_length_;
      Box neck = left;
      neck.lo[0] = l1;
      neck.hi[0] = l1 + neck_length_;
      for (int i = 1; i < d; ++i) {
        neck.lo[i] = 0.5 * (lengths_[i] - neck_width_);
        neck.hi[i] = 0.5 * (lengths_[i] + neck_width_);
      }
      return {left, neck, right};
    }
  }
  return {};
}

bool Domain::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  if (shape_ == Shape::ball) {
    double r2 = 0.0;
    for (double xi : x) r2 += (xi - radius_) * (xi - radius_);
    return r2 <= radius_ * radius_;
  }
  for (const Box& p : pieces()) {
    if (p.contains(x)) return true;
  }
  return false;
}

double Domain::volume() const {
  switch (shape_) {
    case Shape::box:
      return bounding_box().volume();
    case Shape::ball:
      return unit_ball_volume(dim()) * std::pow(radius_, dim());
    case Shape::dumbbell: {
      double lobe = 1.0;
      for (double l : lengths_) lobe *= l;
      return 2.0 * lobe + neck_length_ * std::pow(neck_width_, dim() - 1);
    }
  }
  return 0.0;
}

double Domain::cross_section(double t) const {
  const int d = dim();
  switch (shape_) {
    case Shape::box: {
      if (t < 0.0 || t > lengths_[0]) return 0.0;
      double s = 1.0;
      for (int i = 1; i < d; ++i) s *= lengths_[i];
      return s;
    }
    case Shape::ball: {
      const double rt2 = radius_ * radius_ - (t - radius_) * (t - radius_);
      if (rt2 < 0.0) return 0.0;
      return unit_ball_volume(d - 1) * std::pow(rt2, 0.5 * (d - 1));
    }
    case Shape::dumbbell: {
      const double l1 = lengths_[0];
      if (t < 0.0 || t > 2.0 * l1 + neck_length_) return 0.0;
      if (t >= l1 && t <= l1 + neck_length_) return std::pow(neck_width_, d - 1);
      double s = 1.0;
      for (int i = 1; i < d; ++i) s *= lengths_[i];
      return s;
    }
  }
  return 0.0;
}

std::vector<double> Domain::x1_breakpoints() const {
  const Box b = bounding_box();
  std::vector<double> out{b.lo[0], b.hi[0]};
  if (shape_ == Shape::dumbbell) {
    out.push_back(lengths_[0]);
    out.push_back(lengths_[0] + neck_length_);
  }
  return out;
}

std::string Domain::describe() const {
  std::ostringstream os;
  auto list = [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "x" : "") << v[i];
  };
  switch (shape_) {
    case Shape::box:
      os << "box(";
      list(lengths_);
      os << ")";
      break;
    case Shape::ball:
      os << "ball(d=" << dim() << ", R=" << radius_ << ")";
      break;
    case Shape::dumbbell:
      os << "dumbbell(lobe=";
      list(lengths_);
      os << ", neck_length=" << neck_length_ << ", neck_width=" << neck_width_ << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Density

Density Density::uniform(const Domain& domain) {
  Density rho;
  rho.kind_ = DensityKind::uniform;
  rho.finish(domain);
  return rho;
}

Density Density::bump(const Domain& domain, double amplitude) {
  if (!(std::abs(amplitude) < 1.0)) throw ConfigurationError("bump amplitude must satisfy |a| < 1");
  Density rho;
  rho.kind_ = amplitude == 0.0 ? DensityKind::uniform : DensityKind::bump;
  rho.amplitude_ = amplitude;
  rho.finish(domain);
  return rho;
}

double Density::profile(double x1) const {
  if (kind_ == DensityKind::uniform) return 1.0 / z_;
  return (1.0 + amplitude_ * std::sin(std::numbers::pi * x1 / period_)) / z_;
}

double Density::profile_integral(double a, double b) const {
  if (kind_ == DensityKind::uniform) return (b - a) / z_;
  const double w = std::numbers::pi / period_;
  return ((b - a) + amplitude_ / w * (std::cos(w * a) - std::cos(w * b))) / z_;
}

void Density::finish(const Domain& domain) {
  period_ = domain.x1_extent();
  z_ = 1.0;
  // Unnormalized mass: closed form over box pieces, slice quadrature for the ball.
  double mass = 0.0;
  if (domain.shape() == Shape::ball) {
    mass = integrate_pieces([&](double t) { return profile(t) * domain.cross_section(t); }, 0.0, period_,
                            domain.x1_breakpoints());
  } else {
    for (const Box& p : domain.pieces()) {
      double section = 1.0;
      for (int i = 1; i < p.dim(); ++i) section *= p.hi[i] - p.lo[i];
      mass += profile_integral(p.lo[0], p.hi[0]) * section;
    }
  }
  z_ = mass;
  rho_min_ = (1.0 + std::min(0.0, amplitude_)) / z_;
  rho_max_ = (1.0 + std::max(0.0, amplitude_)) / z_;

  const double check = integrate_pieces([&](double t) { return profile(t) * domain.cross_section(t); }, 0.0,
                                        period_, domain.x1_breakpoints());
  if (!(std::abs(check - 1.0) <= 1e-8)) {
    throw ConfigurationError("density does not integrate to one on " + domain.describe());
  }
}

std::string Density::describe() const {
  if (kind_ == DensityKind::uniform) return "uniform";
  std::ostringstream os;
  os << "bump(a=" << amplitude_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Sampling

PointCloud make_cloud(const Domain& domain, const Density& density, int dim, std::vector<double> coords,
                      std::uint64_t seed) {
  if (dim <= 0 || coords.size() % dim != 0) throw ArgumentError("coordinate count is not a multiple of dim");
  PointCloud cloud;
  cloud.dim = dim;
  cloud.coords = std::move(coords);
  cloud.seed = seed;
  cloud.domain = domain;
  cloud.density = density;
  return cloud;
}

PointCloud sample(const Domain& domain, const Density& density, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample size must be positive");
  const int d = domain.dim();
  const Box bb = domain.bounding_box();
  const double envelope = density.rho_max();
  const double budget = 1e6 * static_cast<double>(n);

  Philox4x32 rng(seed);
  std::vector<double> coords;
  coords.reserve(n * d);
  std::vector<double> x(d);
  double proposals = 0.0;
  while (coords.size() < n * d) {
    if (++proposals > budget) {
      throw ConfigurationError("rejection sampler exceeded its proposal budget on " + domain.describe());
    }
    for (int i = 0; i < d; ++i) x[i] = bb.lo[i] + rng.uniform() * (bb.hi[i] - bb.lo[i]);
    const double u = rng.uniform();
    if (!domain.contains(x)) continue;
    if (u * envelope > density(x)) continue;
    coords.insert(coords.end(), x.begin(), x.end());
  }
  return make_cloud(domain, density, d, std::move(coords), seed);
}

// ---------------------------------------------------------------------------
// Ball intersections

namespace {

// Area of disk(center (cx, cy), r) ∩ [x0, x1] x [y0, y1], in closed form.
// Works in offsets u = x - cx so that tangent endpoints land exactly on +-r.
double disk_rect_area(double cx, double cy, double r, double x0, double x1, double y0, double y1) {
  const double a = std::max(x0 - cx, -r);
  const double b = std::min(x1 - cx, r);
  if (!(b > a) || !(y1 > y0)) return 0.0;
  // Antiderivative of sqrt(r^2 - u^2).
  auto H = [&](double u) {
    u = std::clamp(u, -r, r);
    return 0.5 * (u * safe_sqrt(r * r - u * u) + r * r * std::asin(u / r));
  };
  auto half = [&](double u) { return safe_sqrt(r * r - u * u); };

  std::vector<double> cuts{a, b};
  for (double y : {y0, y1}) {
    const double dy = y - cy;
    if (std::abs(dy) < r) {
      const double w = std::sqrt(r * r - dy * dy);
      cuts.push_back(-w);
      cuts.push_back(w);
    }
  }
  std::erase_if(cuts, [&](double t) { return t < a || t > b; });
  std::sort(cuts.begin(), cuts.end());

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    const double h = half(0.5 * (lo + hi));
    const bool top_clipped = cy + h > y1;
    const bool bottom_clipped = cy - h < y0;
    const double top = top_clipped ? y1 : cy + h;
    const double bottom = bottom_clipped ? y0 : cy - h;
    if (!(top > bottom)) continue;
    const double dx = hi - lo;
    const double arc = H(hi) - H(lo);
    const double upper = top_clipped ? y1 * dx : cy * dx + arc;
    const double lower = bottom_clipped ? y0 * dx : cy * dx - arc;
    area += upper - lower;
  }
  return area;
}

// Volume of the cap {x in B(0, r) : x1 >= a} in R^m.
double cap_volume(int m, double r, double a) {
  if (a >= r) return 0.0;
  if (a <= -r) return unit_ball_volume(m) * std::pow(r, m);
  const double section = unit_ball_volume(m - 1);
  return integrate_pieces(
      [&](double x) { return section * std::pow(std::max(0.0, r * r - x * x), 0.5 * (m - 1)); }, a, r, {});
}

double ball_box_rec(std::span<const double> c, double r, std::span<const double> lo, std::span<const double> hi) {
  const int m = static_cast<int>(c.size());
  if (!(r > 0.0)) return 0.0;
  if (m == 1) return std::max(0.0, std::min(hi[0], c[0] + r) - std::max(lo[0], c[0] - r));
  if (m == 2) return disk_rect_area(c[0], c[1], r, lo[0], hi[0], lo[1], hi[1]);

  bool ball_inside = true;
  for (int i = 0; i < m; ++i) {
    if (c[i] - r < lo[i] || c[i] + r > hi[i]) ball_inside = false;
    if (c[i] + r <= lo[i] || c[i] - r >= hi[i]) return 0.0;
  }
  if (ball_inside) return unit_ball_volume(m) * std::pow(r, m);

  const double a = std::max(lo[0], c[0] - r);
  const double b = std::min(hi[0], c[0] + r);
  std::vector<double> breaks;
  for (int i = 1; i < m; ++i) {
    for (double e : {lo[i], hi[i]}) {
      const double rem = r * r - (e - c[i]) * (e - c[i]);
      if (rem > 0.0) {
        breaks.push_back(c[0] - std::sqrt(rem));
        breaks.push_back(c[0] + std::sqrt(rem));
      }
    }
  }
  return integrate_pieces(
      [&](double t) {
        const double rt = safe_sqrt(r * r - (t - c[0]) * (t - c[0]));
        return ball_box_rec(c.subspan(1), rt, lo.subspan(1), hi.subspan(1));
      },
      a, b, std::move(breaks));
}

double ball_ball_rec(std::span<const double> c1, double r1, std::span<const double> c2, double r2) {
  const int m = static_cast<int>(c1.size());
  if (!(r1 > 0.0) || !(r2 > 0.0)) return 0.0;
  double d2 = 0.0;
  for (int i = 0; i < m; ++i) d2 += (c1[i] - c2[i]) * (c1[i] - c2[i]);
  const double dist = std::sqrt(d2);
  if (dist >= r1 + r2) return 0.0;
  if (dist <= std::abs(r1 - r2)) return unit_ball_volume(m) * std::pow(std::min(r1, r2), m);
  if (m == 1) return r1 + r2 - dist;
  // Radical hyperplane at distance a1 from c1 and a2 from c2.
  const double a1 = (d2 + r1 * r1 - r2 * r2) / (2.0 * dist);
  const double a2 = dist - a1;
  if (m == 2) {
    auto segment = [](double r, double a) {
      const double ca = std::clamp(a / r, -1.0, 1.0);
      return r * r * std::acos(ca) - a * safe_sqrt(r * r - a * a);
    };
    return segment(r1, a1) + segment(r2, a2);
  }
  return cap_volume(m, r1, a1) + cap_volume(m, r2, a2);
}

}  // namespace

double ball_box_volume(std::span<const double> center, double r, const Box& box) {
  return ball_box_rec(center, r, box.lo, box.hi);
}

double ball_ball_volume(std::span<const double> c1, double r1, std::span<const double> c2, double r2) {
  return ball_ball_rec(c1, r1, c2, r2);
}

namespace {

// ∫ profile(t) * M(t) dt where M(t) is the (d-1)-measure of the slice of
// B(center, r) ∩ (piece) at x1 = t.
double weighted_ball_box(const Density& rho, std::span<const double> c, double r, const Box& box) {
  const double a = std::max(box.lo[0], c[0] - r);
  const double b = std::min(box.hi[0], c[0] + r);
  if (!(b > a)) return 0.0;
  const int m = box.dim() - 1;
  std::vector<double> breaks;
  for (int i = 1; i <= m; ++i) {
    for (double e : {box.lo[i], box.hi[i]}) {
      const double rem = r * r - (e - c[i]) * (e - c[i]);
      if (rem > 0.0) {
        breaks.push_back(c[0] - std::sqrt(rem));
        breaks.push_back(c[0] + std::sqrt(rem));
      }
    }
  }
  const std::span<const double> lo(box.lo.data() + 1, m);
  const std::span<const double> hi(box.hi.data() + 1, m);
  return integrate_pieces(
      [&](double t) {
        const double rt = safe_sqrt(r * r - (t - c[0]) * (t - c[0]));
        return rho.profile(t) * ball_box_rec(c.subspan(1), rt, lo, hi);
      },
      a, b, std::move(breaks));
}

}  // namespace

double nu_ball(const Domain& domain, const Density& density, std::span<const double> center, double r) {
  if (r < 0.0) throw ArgumentError("nu_ball radius must be nonnegative");
  if (static_cast<int>(center.size()) != domain.dim()) throw ArgumentError("nu_ball centre has wrong dimension");
  if (r == 0.0) return 0.0;
  const int d = domain.dim();

  if (domain.shape() == Shape::ball) {
    const double big_r = domain.radius();
    std::vector<double> dc(d, big_r);
    double dist2 = 0.0;
    for (int i = 0; i < d; ++i) dist2 += (center[i] - big_r) * (center[i] - big_r);
    const double dist = std::sqrt(dist2);
    if (dist >= r + big_r) return 0.0;
    if (density.kind() == DensityKind::uniform) {
      return ball_ball_volume(center, r, dc, big_r) / domain.volume();
    }
    const double a = std::max(0.0, center[0] - r);
    const double b = std::min(2.0 * big_r, center[0] + r);
    const std::vector<double> dc_rest(d - 1, big_r);
    return integrate_pieces(
        [&](double t) {
          const double rt = safe_sqrt(r * r - (t - center[0]) * (t - center[0]));
          const double bt = safe_sqrt(big_r * big_r - (t - big_r) * (t - big_r));
          return density.profile(t) * ball_ball_rec(center.subspan(1), rt, dc_rest, bt);
        },
        a, b, {});
  }

  double total = 0.0;
  for (const Box& p : domain.pieces()) {
    if (density.kind() == DensityKind::uniform) {
      total += ball_box_volume(center, r, p) * density.rho_max();
    } else {
      total += weighted_ball_box(density, center, r, p);
    }
  }
  return total;
}

double nu_box(const Domain& domain, const Density& density, const Box& cell) {
  const int d = domain.dim();
  if (cell.dim() != d) throw ArgumentError("nu_box cell has wrong dimension");
  if (domain.shape() == Shape::ball) {
    const double big_r = domain.radius();
    const std::vector<double> dc(d, big_r);
    if (density.kind() == DensityKind::uniform) return ball_box_volume(dc, big_r, cell) * density.rho_max();
    return weighted_ball_box(density, dc, big_r, cell);
  }
  double total = 0.0;
  for (const Box& p : domain.pieces()) {
    double section = 1.0;
    for (int i = 1; i < d; ++i) section *= std::max(0.0, std::min(p.hi[i], cell.hi[i]) - std::max(p.lo[i], cell.lo[i]));
    const double a = std::max(p.lo[0], cell.lo[0]);
    const double b = std::min(p.hi[0], cell.hi[0]);
    if (section > 0.0 && b > a) total += section * density.profile_integral(a, b);
  }
  return total;
}

}  // namespace knncut
