#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace lpmult {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Thrown when a geometric object would violate its construction invariants.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Wraps an angle into [0, 2pi).
double wrap_angle(double t);

/// An open arc of the unit circle, starting at `start` and running
/// counter-clockwise for `length` radians.
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const { return start + length; }
  double midpoint() const { return start + 0.5 * length; }
};

/// A finite closed subset F of the unit circle, stored as sorted angles.
///
/// Every complementary arc must be shorter than pi; this keeps the chord over
/// each arc a proper chord and lets a triangle be erected over it.
class ClosedCircleSet {
 public:
  /// Accepts angles in any order; they are wrapped into [0, 2pi) and sorted.
  /// `accumulation` lists angles (matched to 1e-12) that are limits of a
  /// truncated generator tail.
  static ClosedCircleSet from_angles(std::vector<double> angles,
                                     std::span<const double> accumulation = {});

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool is_accumulation(std::size_t i) const { return flags_.at(i); }
  std::vector<double> accumulation_points() const;

  /// Index of the arc containing angle t, or npos when t is a point of the set.
  std::size_t arc_index(double t) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  ClosedCircleSet() = default;
  std::vector<double> points_;
  std::vector<bool> flags_;
};

/// Arcs complementary to F, in counter-clockwise order starting at the first
/// point. Arc i runs from point i to point i+1 (the last one wraps).
std::vector<Arc> complementary_arcs(const ClosedCircleSet& set);

/// min over s in F of |e^{it} - e^{is}|.
double chordal_dist(double t, const ClosedCircleSet& set);

/// Isosceles triangle erected outside the disk over the chord of an arc.
struct Triangle {
  Arc arc;
  double base_angle = 0.0;  // angle between the chord and each side

  /// Angle between the circle and a side at the chord endpoints.
  double theta() const { return base_angle - 0.5 * arc.length; }

  cplx left() const;   // e^{i start}
  cplx right() const;  // e^{i end}
  cplx apex() const;
};

/// D united with one triangle per complementary arc.
class StarDomain {
 public:
  const ClosedCircleSet& set() const { return set_; }
  std::span<const Triangle> triangles() const { return triangles_; }
  double theta_min() const { return theta_min_; }
  double theta0() const { return theta0_; }

  /// Open-domain membership: |z| < 1 or z inside some open triangle.
  bool contains(cplx z) const;

  /// c(Omega_F) with default sampling options; computed once and shared by
  /// copies of this domain.
  double inscribed_constant() const;

  /// Euclidean distance from z to the boundary of the domain, i.e. to the
  /// union of all triangle sides. Exact (segment geometry), no sampling.
  double boundary_distance(cplx z) const;

  friend StarDomain build_star_domain(const ClosedCircleSet&, double, double);

 private:
  struct Cache {
    std::once_flag once;
    double inscribed = 0.0;
  };

  explicit StarDomain(ClosedCircleSet set)
      : set_(std::move(set)), cache_(std::make_shared<Cache>()) {}
  ClosedCircleSet set_;
  std::shared_ptr<Cache> cache_;
  std::vector<Triangle> triangles_;
  double theta_min_ = 0.0;
  double theta0_ = 0.0;
};

/// Base angles beyond pi/2 - kBaseAngleSlack are clamped.
inline constexpr double kBaseAngleSlack = 1e-6;

/// Builds the star domain with base angle theta0 + |J|/2 over every arc.
/// Throws GeometryError for theta0 <= 0 or when clamping drives some effective
/// angle below theta_floor.
StarDomain build_star_domain(const ClosedCircleSet& set, double theta0,
                             double theta_floor = 1e-3);

bool contains(const StarDomain& domain, cplx z);

struct InscribedOptions {
  std::size_t samples_per_arc = 128;  // >= 64
  std::size_t probes = 512;           // probe points on each test circle
  double rel_tol = 1e-4;              // bisection tolerance relative to dist
  int endpoint_levels = 20;           // geometric refinement toward arc ends
};

/// Largest radius r with the disk about e^{it} (probed on its boundary
/// circle) inside the domain, found by bisection on [0, dist(e^{it}, F)].
double max_inscribed_radius(const StarDomain& domain, double t,
                            const InscribedOptions& opts = {});

/// c(Omega_F): min over sampled t of max_inscribed_radius / dist(e^{it}, F).
/// Samples are nested when samples_per_arc doubles.
double inscribed_constant(const StarDomain& domain,
                          const InscribedOptions& opts = {});

/// Conservative closed-form lower bound on c used as a sanity seed.
double inscribed_constant_seed(const StarDomain& domain);

/// Vinogradov's domain {|z| < r, alpha < arg(z - 1) < 2pi - alpha}.
bool vinogradov_contains(double r, double alpha, cplx z);

}  // namespace lpmult
