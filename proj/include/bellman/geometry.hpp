#pragma once

#include "bellman/rational.hpp"

#include <span>
#include <vector>

namespace bellman::geometry {

/// A point of the (x, lambda) or (x, A) plane.
struct PlanePoint {
  Rational x;
  Rational y;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// Two-point interpolation through p1 and p2, evaluated at x in [p1.x, p2.x].
Rational lerp(const PlanePoint& p1, const PlanePoint& p2, const Rational& x);

/// J(x, lambda) = (x, lambda + x).
PlanePoint jump_map(const PlanePoint& p);
/// C(x, lambda) = (x / 2, lambda).
PlanePoint scale_map(const PlanePoint& p);
/// T = J o C, i.e. (x / 2, lambda + x / 2).
PlanePoint t_map(const PlanePoint& p);

/// a / (1 + a); requires a > 0.
Rational phi(const Rational& a);

/// The upward ray {(a (lambda - lambda0) + x0, lambda) : lambda >= lambda0}.
/// `parameter` is the reciprocal slope and is always positive.
class Ray {
 public:
  Ray(PlanePoint center, Rational parameter);

  const PlanePoint& center() const { return center_; }
  const Rational& parameter() const { return parameter_; }

  friend bool operator==(const Ray&, const Ray&) = default;

 private:
  PlanePoint center_;
  Rational parameter_;
};

/// x-coordinate of the ray at height lambda (lambda >= center.y).
Rational ray_x(const Ray& r, const Rational& lambda);

/// Image of a ray under jump_map; again a ray, with parameter phi(a).
Ray jump_ray(const Ray& r);

/// Fan of rays from `center` with parameters a_lo <= a <= a_hi, 0 < a_lo < a_hi.
class AngleSector {
 public:
  AngleSector(PlanePoint center, Rational a_lo, Rational a_hi);

  const PlanePoint& center() const { return center_; }
  const Rational& a_lo() const { return a_lo_; }
  const Rational& a_hi() const { return a_hi_; }

  bool contains(const PlanePoint& p) const;

  friend bool operator==(const AngleSector&, const AngleSector&) = default;

 private:
  PlanePoint center_;
  Rational a_lo_;
  Rational a_hi_;
};

AngleSector jump_sector(const AngleSector& s);

/// Value, constant along each ray of the sector, of the horizontal
/// interpolation taking v_lo on the a_lo edge and v_hi on the a_hi edge.
Rational sector_interp_value(const AngleSector& s, const Rational& v_lo, const Rational& v_hi,
                             const Rational& a);

/// Ray parameter of a point strictly above the sector center.
Rational ray_parameter_of(const PlanePoint& center, const PlanePoint& p);

/// Piecewise-linear function on a closed interval, given by its vertices.
/// Evaluation outside [front.x, back.x] is an error.
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn() = default;
  explicit PiecewiseLinearFn(std::vector<PlanePoint> vertices);

  std::span<const PlanePoint> vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }

  Rational operator()(const Rational& x) const;

  /// Slopes of consecutive segments, ordered by increasing x.
  std::vector<Rational> slopes() const;

  /// Non-increasing slopes.
  bool is_concave() const;

 private:
  std::vector<PlanePoint> vertices_;
};

}  // namespace bellman::geometry
