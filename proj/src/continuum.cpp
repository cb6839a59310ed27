#include "knncut/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "knncut/errors.hpp"
#include "knncut/functionals.hpp"
#include "quadrature.hpp"

namespace knncut {

using detail::integrate_pieces;
using detail::safe_sqrt;

std::string to_string(CutFamily family) {
  return family == CutFamily::line ? "line" : "vertical_neck";
}

CutFamily parse_cut_family(const std::string& name) {
  if (name == "line") return CutFamily::line;
  if (name == "vertical_neck" || name == "neck") return CutFamily::vertical_neck;
  throw ArgumentError("unknown cut family '" + name + "'");
}

int ContinuumCut::indicator(std::span<const double> x) const {
  const double dot = x[0] * std::cos(theta) + x[1] * std::sin(theta);
  if (theta == 0.0) return a_is_lower ? x[0] <= offset : x[0] >= offset;
  return a_is_lower ? dot <= offset : dot >= offset;
}

namespace {

constexpr double kVertical = 1e-12;

enum class Part { lower, upper, surface };

struct Line {
  double c;   // cos theta
  double sn;  // sin theta
  double s;
  [[nodiscard]] bool vertical() const { return sn < kVertical; }
  // x2 on the line at x1 = t.
  [[nodiscard]] double x2(double t) const { return (s - t * c) / sn; }
};

Line make_line(double theta, double offset) {
  if (theta == 0.0) return {1.0, 0.0, offset};
  return {std::cos(theta), std::sin(theta), offset};
}

double clamp_len(double v, double len) { return std::clamp(v, 0.0, len); }

// Area of {y in disk(0, w) : y1 <= delta}.
double disk_segment(double w, double delta) {
  if (!(w > 0.0)) return 0.0;
  if (delta <= -w) return 0.0;
  if (delta >= w) return std::numbers::pi * w * w;
  return w * w * std::acos(-delta / w) + delta * safe_sqrt(w * w - delta * delta);
}

// x1-coordinates where the integrands below change formula.
std::vector<double> line_breaks(const Domain& domain, const Line& ln) {
  std::vector<double> out = domain.x1_breakpoints();
  if (domain.shape() == Shape::ball) {
    const double r = domain.radius();
    const double q = ln.c * r + ln.sn * r - ln.s;
    if (std::abs(q) < r) {
      const double hc = std::sqrt(r * r - q * q);
      out.push_back(r - q * ln.c - hc * ln.sn);
      out.push_back(r - q * ln.c + hc * ln.sn);
    }
  } else if (std::abs(ln.c) > 0.0) {
    for (const Box& p : domain.pieces()) {
      for (double e : {p.lo[1], p.hi[1]}) out.push_back((ln.s - e * ln.sn) / ln.c);
    }
  }
  return out;
}

// Integrand over x1 for one part of a non-vertical line cut: mass or surface
// density of the slice {x in D : x1 = t}, before multiplying by the density weight.
double slice_measure(const Domain& domain, const Line& ln, Part part, double t) {
  const double x2 = ln.x2(t);
  const int d = domain.dim();
  if (domain.shape() == Shape::ball) {
    const double r = domain.radius();
    const double w = safe_sqrt(r * r - (t - r) * (t - r));
    const double delta = x2 - r;
    if (d == 2) {
      switch (part) {
        case Part::lower: return clamp_len(delta + w, 2 * w);
        case Part::upper: return clamp_len(w - delta, 2 * w);
        case Part::surface: return std::abs(delta) <= w ? 1.0 : 0.0;
      }
      return 0.0;
    }
    switch (part) {
      case Part::lower: return disk_segment(w, delta);
      case Part::upper: return disk_segment(w, -delta);
      case Part::surface: return 2.0 * safe_sqrt(w * w - delta * delta);
    }
    return 0.0;
  }
  double total = 0.0;
  for (const Box& p : domain.pieces()) {
    if (t < p.lo[0] || t > p.hi[0]) continue;
    double extra = 1.0;
    for (int i = 2; i < d; ++i) extra *= p.hi[i] - p.lo[i];
    const double len = p.hi[1] - p.lo[1];
    double m = 0.0;
    switch (part) {
      case Part::lower: m = clamp_len(x2 - p.lo[1], len); break;
      case Part::upper: m = clamp_len(p.hi[1] - x2, len); break;
      case Part::surface: m = (x2 >= p.lo[1] && x2 <= p.hi[1]) ? 1.0 : 0.0; break;
    }
    // Adjacent dumbbell pieces share the interface slice; the larger one wins.
    total = std::max(total, m * extra);
  }
  return total;
}

// ∫ g(t) rho(t) slice_part(t) dt for a non-vertical line, g = 1 or t.
template <class G>
double line_integral(const Domain& domain, const Density& rho, const Line& ln, Part part, G&& g) {
  const Box bb = domain.bounding_box();
  return integrate_pieces(
      [&](double t) { return g(t) * rho.profile(t) * slice_measure(domain, ln, part, t); }, bb.lo[0], bb.hi[0],
      line_breaks(domain, ln));
}

// ν({x1 <= v}) or ν({x1 >= v}), optionally with weight x1.
template <class G>
double vertical_integral(const Domain& domain, const Density& rho, double v, bool below, G&& g) {
  const Box bb = domain.bounding_box();
  const double a = below ? bb.lo[0] : std::clamp(v, bb.lo[0], bb.hi[0]);
  const double b = below ? std::clamp(v, bb.lo[0], bb.hi[0]) : bb.hi[0];
  return integrate_pieces([&](double t) { return g(t) * rho.profile(t) * domain.cross_section(t); }, a, b,
                          domain.x1_breakpoints());
}

double h_weight(const Density& rho, int d, double t) {
  return std::pow(rho.profile(t), 1.0 - 1.0 / d);
}

struct Sides {
  double lower = 0.0;
  double upper = 0.0;
};

template <class G>
Sides side_integrals(const Domain& domain, const Density& rho, const Line& ln, G&& g) {
  if (ln.vertical()) {
    const double v = ln.s / ln.c;
    const double below = vertical_integral(domain, rho, v, true, g);
    const double above = vertical_integral(domain, rho, v, false, g);
    return ln.c > 0 ? Sides{below, above} : Sides{above, below};
  }
  return {line_integral(domain, rho, ln, Part::lower, g), line_integral(domain, rho, ln, Part::upper, g)};
}

}  // namespace

double weighted_tv_line(const Domain& domain, const Density& density, double theta, double offset) {
  if (!(theta >= 0.0 && theta < std::numbers::pi)) throw ArgumentError("theta must lie in [0, pi)");
  const int d = domain.dim();
  const Line ln = make_line(theta, offset);
  if (ln.vertical()) {
    const double v = ln.s / ln.c;
    const Box bb = domain.bounding_box();
    if (v < bb.lo[0] || v > bb.hi[0]) return 0.0;
    return h_weight(density, d, v) * domain.cross_section(v);
  }
  const Box bb = domain.bounding_box();
  const double integral = integrate_pieces(
      [&](double t) { return h_weight(density, d, t) * slice_measure(domain, ln, Part::surface, t); }, bb.lo[0],
      bb.hi[0], line_breaks(domain, ln));
  return integral / ln.sn;
}

ContinuumCut evaluate_line_cut(const Domain& domain, const Density& density, double theta, double offset) {
  if (domain.dim() < 2 || domain.dim() > 3) throw ArgumentError("continuum cuts support d = 2 and d = 3");
  ContinuumCut cut;
  cut.family = CutFamily::line;
  cut.theta = theta;
  cut.offset = offset;
  cut.weighted_tv = weighted_tv_line(domain, density, theta, offset);
  const Line ln = make_line(theta, offset);
  const Sides mass = side_integrals(domain, density, ln, [](double) { return 1.0; });

  if (std::abs(mass.lower - mass.upper) > 1e-10) {
    cut.a_is_lower = mass.lower < mass.upper;
  } else {
    const Sides moment = side_integrals(domain, density, ln, [](double t) { return t; });
    const double cl = moment.lower / mass.lower;
    const double cu = moment.upper / mass.upper;
    // Equal x1-centroids force the lower side to have the smaller x2-centroid.
    cut.a_is_lower = std::abs(cl - cu) > 1e-10 ? cl < cu : true;
  }
  cut.nu_A = cut.a_is_lower ? mass.lower : mass.upper;
  cut.nu_Ac = cut.a_is_lower ? mass.upper : mass.lower;
  const double smaller = std::min(cut.nu_A, cut.nu_Ac);
  cut.valid = smaller > 1e-14;
  cut.value = cut.valid ? cut.weighted_tv / smaller : std::numeric_limits<double>::infinity();
  return cut;
}

ContinuumCut evaluate_neck_cut(const Domain& domain, const Density& density, double offset) {
  if (domain.shape() != Shape::dumbbell) throw ArgumentError("the vertical_neck family needs a dumbbell domain");
  const double l1 = domain.lengths()[0];
  if (offset < l1 || offset > l1 + domain.neck_length()) throw ArgumentError("neck cut offset outside the neck");
  ContinuumCut cut = evaluate_line_cut(domain, density, 0.0, offset);
  cut.family = CutFamily::vertical_neck;
  return cut;
}

int continuum_indicator(const Domain& domain, const ContinuumCut& cut, std::span<const double> x) {
  if (static_cast<int>(x.size()) != domain.dim()) throw ArgumentError("point has wrong dimension");
  return cut.indicator(x);
}

std::pair<double, double> offset_range(const Domain& domain, double theta) {
  const Box bb = domain.bounding_box();
  const double c = theta == 0.0 ? 1.0 : std::cos(theta);
  const double sn = theta == 0.0 ? 0.0 : std::sin(theta);
  if (domain.shape() == Shape::ball) {
    const double r = domain.radius();
    const double mid = c * r + sn * r;
    return {mid - r, mid + r};
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double x : {bb.lo[0], bb.hi[0]}) {
    for (double y : {bb.lo[1], bb.hi[1]}) {
      lo = std::min(lo, c * x + sn * y);
      hi = std::max(hi, c * x + sn * y);
    }
  }
  return {lo, hi};
}

namespace {

template <class F>
ContinuumCut golden_section(F&& eval, double a, double b, ContinuumCut best) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  ContinuumCut f1 = eval(x1);
  ContinuumCut f2 = eval(x2);
  while (b - a > 1e-8) {
    if (f1.value <= f2.value) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    }
  }
  for (const ContinuumCut& c : {f1, f2}) {
    if (c.value < best.value) best = c;
  }
  return best;
}

}  // namespace

ContinuumReport minimize_continuum(const Domain& domain, const Density& density, CutFamily family,
                                   int resolution) {
  if (resolution < 2) throw ArgumentError("grid resolution must be at least 2");
  ContinuumReport report;
  report.dim = domain.dim();
  std::vector<ContinuumCut> per_angle;

  if (family == CutFamily::vertical_neck) {
    if (domain.shape() != Shape::dumbbell) throw ArgumentError("the vertical_neck family needs a dumbbell domain");
    const double lo = domain.lengths()[0];
    const double hi = lo + domain.neck_length();
    auto eval = [&](double s) { return evaluate_neck_cut(domain, density, std::clamp(s, lo, hi)); };
    ContinuumCut best;
    best.value = std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (int j = 0; j <= resolution; ++j) {
      const double s = lo + (hi - lo) * j / resolution;
      const ContinuumCut c = eval(s);
      report.scan.push_back({0.0, s, c.value});
      if (c.value < best.value) {
        best = c;
        best_j = j;
      }
    }
    const double step = (hi - lo) / resolution;
    per_angle.push_back(golden_section(eval, std::max(lo, lo + (best_j - 1) * step),
                                       std::min(hi, lo + (best_j + 1) * step), best));
    report.note = "minimum over vertical cuts through the neck";
  } else {
    for (int i = 0; i < resolution; ++i) {
      const double theta = std::numbers::pi * i / resolution;
      const auto [lo, hi] = offset_range(domain, theta);
      auto eval = [&](double s) { return evaluate_line_cut(domain, density, theta, s); };
      ContinuumCut best;
      best.value = std::numeric_limits<double>::infinity();
      int best_j = -1;
      for (int j = 1; j < resolution; ++j) {
        const double s = lo + (hi - lo) * j / resolution;
        const ContinuumCut c = eval(s);
        report.scan.push_back({theta, s, c.value});
        if (c.value < best.value) {
          best = c;
          best_j = j;
        }
      }
      if (best_j < 0) continue;
      const double step = (hi - lo) / resolution;
      per_angle.push_back(golden_section(eval, lo + (best_j - 1) * step, lo + (best_j + 1) * step, best));
    }
    report.note = "minimum over hyperplane cuts with normal in the x1-x2 plane; not a global Cheeger minimizer";
  }

  if (per_angle.empty()) throw StructureError("no admissible cut found on " + domain.describe());
  report.best = per_angle.front();
  for (const ContinuumCut& c : per_angle) {
    if (c.value < report.best.value) report.best = c;
  }
  for (const ContinuumCut& c : per_angle) {
    if (c.value <= report.best.value * (1.0 + 1e-6)) report.co_minimizers.push_back(c);
  }
  report.rescaled_target = rescaled_limit_value(report, report.dim);
  return report;
}

double rescaled_limit_value(const ContinuumReport& report, int d) {
  if (report.best.value == 0.0) return 0.0;
  return limit_constants(d).factor * report.best.value;
}

}  // namespace knncut
