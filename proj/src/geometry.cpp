#include "bellman/geometry.hpp"

#include <algorithm>

namespace bellman::geometry {

Rational lerp(const PlanePoint& p1, const PlanePoint& p2, const Rational& x) {
  if (p1.x == p2.x) throw DomainError("lerp: degenerate segment at x = " + p1.x.to_string());
  if (p2.x < p1.x) throw DomainError("lerp: endpoints out of order");
  if (x < p1.x || x > p2.x)
    throw DomainError("lerp: " + x.to_string() + " outside [" + p1.x.to_string() + ", " +
                      p2.x.to_string() + "]");
  return p1.y + (p2.y - p1.y) / (p2.x - p1.x) * (x - p1.x);
}

PlanePoint jump_map(const PlanePoint& p) { return {p.x, p.y + p.x}; }

PlanePoint scale_map(const PlanePoint& p) { return {p.x / 2, p.y}; }

PlanePoint t_map(const PlanePoint& p) {
  const Rational half = p.x / 2;
  return {half, p.y + half};
}

Rational phi(const Rational& a) {
  if (a.sign() <= 0) throw DomainError("phi: parameter must be positive, got " + a.to_string());
  return a / (a + 1);
}

Ray::Ray(PlanePoint center, Rational parameter) : center_(std::move(center)), parameter_(std::move(parameter)) {
  if (parameter_.sign() <= 0) throw DomainError("ray parameter must be positive");
}

Rational ray_x(const Ray& r, const Rational& lambda) {
  if (lambda < r.center().y)
    throw DomainError("ray_x: lambda " + lambda.to_string() + " below ray center " + r.center().y.to_string());
  return r.parameter() * (lambda - r.center().y) + r.center().x;
}

Ray jump_ray(const Ray& r) { return Ray(jump_map(r.center()), phi(r.parameter())); }

AngleSector::AngleSector(PlanePoint center, Rational a_lo, Rational a_hi)
    : center_(std::move(center)), a_lo_(std::move(a_lo)), a_hi_(std::move(a_hi)) {
  if (a_lo_.sign() <= 0 || !(a_lo_ < a_hi_)) throw DomainError("angle sector requires 0 < a_lo < a_hi");
}

bool AngleSector::contains(const PlanePoint& p) const {
  if (p.y < center_.y) return false;
  const Rational dy = p.y - center_.y;
  const Rational lo = a_lo_ * dy + center_.x;
  const Rational hi = a_hi_ * dy + center_.x;
  return lo <= p.x && p.x <= hi;
}

AngleSector jump_sector(const AngleSector& s) {
  return AngleSector(jump_map(s.center()), phi(s.a_lo()), phi(s.a_hi()));
}

Rational sector_interp_value(const AngleSector& s, const Rational& v_lo, const Rational& v_hi,
                             const Rational& a) {
  if (a < s.a_lo() || a > s.a_hi())
    throw DomainError("sector_interp_value: parameter " + a.to_string() + " outside sector");
  return (v_hi - v_lo) * (a - s.a_lo()) / (s.a_hi() - s.a_lo()) + v_lo;
}

Rational ray_parameter_of(const PlanePoint& center, const PlanePoint& p) {
  if (p.y <= center.y) throw DomainError("ray_parameter_of: point not above center");
  return (p.x - center.x) / (p.y - center.y);
}

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<PlanePoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw DomainError("piecewise-linear function needs at least one vertex");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (!(vertices_[i - 1].x < vertices_[i].x))
      throw DomainError("piecewise-linear vertices must have strictly increasing x");
}

Rational PiecewiseLinearFn::operator()(const Rational& x) const {
  if (vertices_.empty()) throw DomainError("evaluating an empty piecewise-linear function");
  if (x < vertices_.front().x || x > vertices_.back().x)
    throw DomainError("piecewise-linear evaluation outside span at x = " + x.to_string());
  if (vertices_.size() == 1) return vertices_.front().y;
  // First vertex with vertex.x >= x.
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x,
                             [](const PlanePoint& v, const Rational& t) { return v.x < t; });
  if (it->x == x) return it->y;
  return lerp(*(it - 1), *it, x);
}

std::vector<Rational> PiecewiseLinearFn::slopes() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    out.push_back((vertices_[i].y - vertices_[i - 1].y) / (vertices_[i].x - vertices_[i - 1].x));
  return out;
}

bool PiecewiseLinearFn::is_concave() const {
  const auto s = slopes();
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] > s[i - 1]) return false;
  return true;
}

}  // namespace bellman::geometry
