#include "lpmult/circle_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lpmult {

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_distance(cplx z, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double u = ((z - a) * std::conj(ab)).real() / len2;
  u = std::clamp(u, 0.0, 1.0);
  return std::abs(z - (a + u * ab));
}

bool strictly_inside(const Triangle& tri, cplx z) {
  const cplx p = tri.left(), q = tri.right(), a = tri.apex();
  const double s = cross(q - p, a - p);
  const double c1 = cross(q - p, z - p);
  const double c2 = cross(a - q, z - q);
  const double c3 = cross(p - a, z - a);
  if (s > 0) return c1 > 0 && c2 > 0 && c3 > 0;
  return c1 < 0 && c2 < 0 && c3 < 0;
}

}  // namespace

double wrap_angle(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

ClosedCircleSet ClosedCircleSet::from_angles(std::vector<double> angles,
                                             std::span<const double> accumulation) {
  if (angles.size() < 2)
    throw GeometryError("closed set needs at least 2 points, got " +
                        std::to_string(angles.size()));
  for (double& a : angles) {
    if (!std::isfinite(a)) throw GeometryError("closed set angle is not finite");
    a = wrap_angle(a);
  }
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 1; i < angles.size(); ++i)
    if (!(angles[i] > angles[i - 1]))
      throw GeometryError("closed set has duplicate angle " + std::to_string(angles[i]));

  ClosedCircleSet set;
  set.points_ = std::move(angles);
  set.flags_.assign(set.points_.size(), false);
  for (double acc : accumulation) {
    const double w = wrap_angle(acc);
    bool found = false;
    for (std::size_t i = 0; i < set.points_.size(); ++i) {
      const double d = std::abs(set.points_[i] - w);
      if (std::min(d, kTwoPi - d) <= 1e-12) {
        set.flags_[i] = true;
        found = true;
      }
    }
    if (!found)
      throw GeometryError("accumulation angle " + std::to_string(acc) +
                          " is not a point of the set");
  }
  for (const Arc& arc : complementary_arcs(set))
    if (!(arc.length < kPi))
      throw GeometryError("complementary arc starting at " + std::to_string(arc.start) +
                          " has length " + std::to_string(arc.length) + " >= pi");
  return set;
}

std::vector<double> ClosedCircleSet::accumulation_points() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (flags_[i]) out.push_back(points_[i]);
  return out;
}

std::size_t ClosedCircleSet::arc_index(double t) const {
  const double w = wrap_angle(t);
  const auto it = std::upper_bound(points_.begin(), points_.end(), w);
  const auto i = static_cast<std::size_t>(it - points_.begin());
  if (i > 0 && points_[i - 1] == w) return npos;
  return i == 0 ? points_.size() - 1 : i - 1;
}

std::vector<Arc> complementary_arcs(const ClosedCircleSet& set) {
  const auto pts = set.points();
  std::vector<Arc> arcs;
  arcs.reserve(pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    arcs.push_back({pts[i], pts[i + 1] - pts[i]});
  arcs.push_back({pts.back(), pts.front() + kTwoPi - pts.back()});
  return arcs;
}

double chordal_dist(double t, const ClosedCircleSet& set) {
  const auto pts = set.points();
  const double w = wrap_angle(t);
  const auto it = std::lower_bound(pts.begin(), pts.end(), w);
  const std::size_t n = pts.size();
  const auto hi = static_cast<std::size_t>(it - pts.begin()) % n;
  const std::size_t lo = (hi + n - 1) % n;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : {lo, hi}) {
    if (pts[i] == w) return 0.0;
    best = std::min(best, 2.0 * std::abs(std::sin(0.5 * (w - pts[i]))));
  }
  return best;
}

cplx Triangle::left() const { return std::polar(1.0, arc.start); }
cplx Triangle::right() const { return std::polar(1.0, arc.end()); }

cplx Triangle::apex() const {
  const double half = 0.5 * arc.length;
  const double radius = std::cos(half) + std::sin(half) * std::tan(base_angle);
  return std::polar(radius, arc.midpoint());
}

StarDomain build_star_domain(const ClosedCircleSet& set, double theta0, double theta_floor) {
  if (!(theta0 > 0.0) || !std::isfinite(theta0))
    throw GeometryError("theta0 must be positive, got " + std::to_string(theta0));
  StarDomain domain(set);
  domain.theta0_ = theta0;
  domain.theta_min_ = std::numeric_limits<double>::infinity();
  for (const Arc& arc : complementary_arcs(set)) {
    double phi = theta0 + 0.5 * arc.length;
    phi = std::min(phi, 0.5 * kPi - kBaseAngleSlack);
    Triangle tri{arc, phi};
    if (tri.theta() < theta_floor)
      throw GeometryError("clamped triangle over arc at " + std::to_string(arc.start) +
                          " has angle " + std::to_string(tri.theta()) + " below floor " +
                          std::to_string(theta_floor));
    domain.theta_min_ = std::min(domain.theta_min_, tri.theta());
    domain.triangles_.push_back(tri);
  }
  return domain;
}

bool StarDomain::contains(cplx z) const {
  if (std::norm(z) < 1.0) return true;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  const std::size_t idx = set_.arc_index(std::arg(z));
  if (idx == ClosedCircleSet::npos) return false;
  return strictly_inside(triangles_[idx], z);
}

bool contains(const StarDomain& domain, cplx z) { return domain.contains(z); }

double StarDomain::boundary_distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Triangle& tri : triangles_) {
    const cplx a = tri.apex();
    best = std::min(best, segment_distance(z, tri.left(), a));
    best = std::min(best, segment_distance(z, tri.right(), a));
  }
  return best;
}

double StarDomain::inscribed_constant() const {
  std::call_once(cache_->once,
                 [this] { cache_->inscribed = lpmult::inscribed_constant(*this); });
  return cache_->inscribed;
}

double max_inscribed_radius(const StarDomain& domain, double t, const InscribedOptions& opts) {
  const double d = chordal_dist(t, domain.set());
  if (d == 0.0) return 0.0;
  const cplx center = std::polar(1.0, t);
  const std::size_t probes = std::max<std::size_t>(opts.probes, 8);
  std::vector<cplx> dirs(probes);
  for (std::size_t k = 0; k < probes; ++k)
    dirs[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(probes));

  auto disk_inside = [&](double r) {
    return std::all_of(dirs.begin(), dirs.end(),
                       [&](cplx u) { return domain.contains(center + r * u); });
  };

  double lo = 0.0, hi = d;
  const double seed = inscribed_constant_seed(domain) * d;
  if (disk_inside(seed)) lo = seed;
  while (hi - lo > opts.rel_tol * d) {
    const double mid = 0.5 * (lo + hi);
    (disk_inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

double inscribed_constant(const StarDomain& domain, const InscribedOptions& opts) {
  if (opts.samples_per_arc < 64)
    throw std::invalid_argument("inscribed_constant needs at least 64 samples per arc");
  const auto n = static_cast<double>(opts.samples_per_arc);
  std::vector<double> fractions;
  for (std::size_t k = 1; k < opts.samples_per_arc; ++k)
    fractions.push_back(0.5 * (1.0 - std::cos(kPi * static_cast<double>(k) / n)));
  for (int j = 1; j <= opts.endpoint_levels; ++j) {
    const double u = std::ldexp(1.0, -j - 6);
    fractions.push_back(u);
    fractions.push_back(1.0 - u);
  }

  double c = std::numeric_limits<double>::infinity();
  for (const Arc& arc : complementary_arcs(domain.set())) {
    for (double u : fractions) {
      const double t = arc.start + u * arc.length;
      const double d = chordal_dist(t, domain.set());
      if (d == 0.0) continue;
      const double r = max_inscribed_radius(domain, t, opts);
      if (r <= 0.0)
        throw GeometryError("zero inscribed radius at t = " + std::to_string(t));
      c = std::min(c, r / d);
    }
  }
  return std::min(c, 1.0);
}

double inscribed_constant_seed(const StarDomain& domain) {
  return 0.5 * std::sin(0.5 * domain.theta_min());
}

bool vinogradov_contains(double r, double alpha, cplx z) {
  if (!(std::abs(z) < r)) return false;
  const cplx w = z - 1.0;
  if (w == cplx(0.0, 0.0)) return false;
  double a = std::arg(w);
  if (a < 0) a += kTwoPi;
  return alpha < a && a < kTwoPi - alpha;
}

}  // namespace lpmult
