#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace knncut {

/// Axis-aligned box [lo, hi] in R^d.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  [[nodiscard]] int dim() const { return static_cast<int>(lo.size()); }
  [[nodiscard]] double volume() const;
  [[nodiscard]] bool contains(std::span<const double> x) const;
};

enum class Shape { box, ball, dumbbell };

/// Bounded domain D in R^d, d >= 2, with its lower bounding corner at the origin.
///
/// Supported shapes:
///   box      [0, L1] x ... x [0, Ld]
///   ball     centre (R, ..., R), radius R
///   dumbbell two lobes [0, L1] x ... joined along x1 by a neck of length
///            `neck_length` whose cross-section is a cube of side `neck_width`
///            centred on the lobe cross-section.
/// Membership is exact and closed (boundary points are inside).
class Domain {
 public:
  static Domain box(std::vector<double> lengths);
  static Domain unit_square() { return box({1.0, 1.0}); }
  static Domain ball(int dim, double radius);
  static Domain dumbbell(std::vector<double> lobe, double neck_length, double neck_width);

  [[nodiscard]] Shape shape() const { return shape_; }
  [[nodiscard]] int dim() const { return static_cast<int>(lengths_.size()); }
  [[nodiscard]] bool contains(std::span<const double> x) const;
  [[nodiscard]] double volume() const;
  [[nodiscard]] Box bounding_box() const;
  [[nodiscard]] double x1_extent() const { return bounding_box().hi[0]; }

  /// Box: side lengths. Dumbbell: lobe side lengths. Ball: (2R, ..., 2R).
  [[nodiscard]] const std::vector<double>& lengths() const { return lengths_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double neck_length() const { return neck_length_; }
  [[nodiscard]] double neck_width() const { return neck_width_; }

  /// Boxes whose union is D (box: itself; dumbbell: left lobe, neck, right lobe).
  /// Empty for the ball.
  [[nodiscard]] std::vector<Box> pieces() const;

  /// (d-1)-volume of the cross-section {x in D : x1 = t}. At the lobe/neck
  /// interface of a dumbbell this is the neck section (interior of D).
  [[nodiscard]] double cross_section(double t) const;

  /// x1-coordinates where the cross-section changes formula.
  [[nodiscard]] std::vector<double> x1_breakpoints() const;

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain() = default;
  Shape shape_ = Shape::box;
  std::vector<double> lengths_;
  double radius_ = 0.0;
  double neck_length_ = 0.0;
  double neck_width_ = 0.0;
};

enum class DensityKind { uniform, bump };

/// Probability density on a domain, a function of x1 only:
///   rho(x) = (1 + a sin(pi x1 / L1)) / Z,  L1 = x1-extent of D, |a| < 1.
/// a = 0 is the uniform density. Construction checks that rho integrates to 1.
class Density {
 public:
  static Density uniform(const Domain& domain);
  static Density bump(const Domain& domain, double amplitude);

  [[nodiscard]] DensityKind kind() const { return kind_; }
  [[nodiscard]] double amplitude() const { return amplitude_; }
  [[nodiscard]] double normalization() const { return z_; }
  [[nodiscard]] double rho_min() const { return rho_min_; }
  [[nodiscard]] double rho_max() const { return rho_max_; }

  /// Density as a function of the first coordinate.
  [[nodiscard]] double profile(double x1) const;
  [[nodiscard]] double operator()(std::span<const double> x) const { return profile(x[0]); }

  /// Closed-form antiderivative of `profile` in x1.
  [[nodiscard]] double profile_integral(double a, double b) const;

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Density&, const Density&) = default;

 private:
  Density() = default;
  void finish(const Domain& domain);

  DensityKind kind_ = DensityKind::uniform;
  double amplitude_ = 0.0;
  double period_ = 1.0;
  double z_ = 1.0;
  double rho_min_ = 1.0;
  double rho_max_ = 1.0;
};

/// n points stored row-major, with the parameters that produced them.
struct PointCloud {
  int dim = 0;
  std::vector<double> coords;
  std::uint64_t seed = 0;
  Domain domain = Domain::unit_square();
  Density density = Density::uniform(Domain::unit_square());

  [[nodiscard]] std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * dim, static_cast<std::size_t>(dim)};
  }
};

/// Rejection sampling against the bounding box with envelope rho_max.
/// Throws ConfigurationError after 10^6 n proposals.
PointCloud sample(const Domain& domain, const Density& density, std::size_t n, std::uint64_t seed);

/// Builds a cloud from explicit coordinates (tests, CLI input).
PointCloud make_cloud(const Domain& domain, const Density& density, int dim,
                      std::vector<double> coords, std::uint64_t seed = 0);

/// nu(B(center, r) ∩ D), absolute accuracy ~1e-10.
double nu_ball(const Domain& domain, const Density& density, std::span<const double> center, double r);

/// nu(cell ∩ D) for an axis-aligned cell.
double nu_box(const Domain& domain, const Density& density, const Box& cell);

/// Lebesgue volume of the intersection of a ball with a box, in any dimension.
double ball_box_volume(std::span<const double> center, double r, const Box& box);

/// Lebesgue volume of the intersection of two balls, in any dimension.
double ball_ball_volume(std::span<const double> c1, double r1, std::span<const double> c2, double r2);

}  // namespace knncut
