#include "bellman/candidate.hpp"

#include <algorithm>

namespace bellman::candidate {

namespace {

void check_indices(int k, int m) {
  if (k < 0 || m < 0 || k > m)
    throw DomainError("curve vertex index requires 0 <= k <= m, got k=" + std::to_string(k) +
                      " m=" + std::to_string(m));
}

void check_unit(const Rational& x, const char* what) {
  if (x.sign() < 0 || x > Rational(1)) throw DomainError(std::string(what) + ": x outside [0,1]: " + x.to_string());
}

Rational top_height(Family family, int m) { return family == Family::F ? Rational(m + 2) : Rational(m + 1); }

// First strip index to try: curves below it cannot reach lambda.
int first_strip(const Rational& lambda, int offset) {
  return static_cast<int>(std::max<std::int64_t>(0, lambda.ceil() - offset));
}

}  // namespace

PlanePoint vertex(Family family, int k, int m) {
  check_indices(k, m);
  const Rational x = Rational::pow2(-k);
  const Rational drop = family == Family::F ? Rational::pow2(-k) : Rational::pow2(1 - k);
  return {x, Rational(m - k + 3) - drop};
}

Rational lambda_km(int k, int m) { return vertex_F(k, m).y; }

Rational origin_param_F(int m) { return Rational(1) / (Rational(3) * Rational::pow2(m) - 1); }
Rational origin_param_G(int m) { return Rational(1) / (Rational(3) * Rational::pow2(m) - 2); }

Curve make_curve(Family family, int m) {
  if (m < 0) throw DomainError("curve index must be nonnegative");
  Curve c{family, m, {}};
  c.vertices.push_back({Rational(0), Rational(0)});
  for (int k = m; k >= 0; --k) c.vertices.push_back(vertex(family, k, m));
  return c;
}

Rational gamma(Family family, int m, const Rational& x) {
  if (m < 0) throw DomainError("gamma: negative curve index");
  check_unit(x, "gamma");
  if (x.sign() == 0) return Rational(0);
  const PlanePoint origin{Rational(0), Rational(0)};
  if (x <= Rational::pow2(-m)) return geometry::lerp(origin, vertex(family, m, m), x);
  // Segment [2^-k, 2^(1-k)] for the smallest k >= 1 with 2^-k <= x.
  int k = 1;
  while (x < Rational::pow2(-k)) ++k;
  return geometry::lerp(vertex(family, k, m), vertex(family, k - 1, m), x);
}

Rational alpha_inv(Family family, int m, const Rational& lambda) {
  if (m < 0) throw DomainError("alpha_inv: negative curve index");
  if (lambda.sign() < 0 || lambda > top_height(family, m))
    throw DomainError("alpha_inv: lambda " + lambda.to_string() + " outside curve range");
  if (lambda.sign() == 0) return Rational(0);
  const PlanePoint low = vertex(family, m, m);
  if (lambda <= low.y) return lambda * low.x / low.y;
  for (int k = m; k >= 1; --k) {
    const PlanePoint a = vertex(family, k, m);
    const PlanePoint b = vertex(family, k - 1, m);
    if (lambda <= b.y) return a.x + (lambda - a.y) * (b.x - a.x) / (b.y - a.y);
  }
  return Rational(1);  // unreachable: lambda <= top height
}

int segment_index(Family family, int m, const Rational& lambda) {
  if (m < 0) throw DomainError("segment_index: negative curve index");
  if (lambda.sign() <= 0 || lambda > top_height(family, m))
    throw DomainError("segment_index: lambda " + lambda.to_string() + " outside curve range");
  if (lambda <= vertex(family, m, m).y) return m + 1;
  for (int k = m; k >= 1; --k)
    if (lambda <= vertex(family, k - 1, m).y) return k;
  return 1;
}

std::string Location::to_string() const {
  switch (kind) {
    case Kind::Zero: return "x=0";
    case Kind::Base: return "S₀";
    case Kind::Strip: return "strip m=" + std::to_string(m);
    case Kind::Plateau: return "plateau m=" + std::to_string(m);
    case Kind::ScaledF: return "scaled f";
    case Kind::Interpolated: return "interpolation";
  }
  return "?";
}

Evaluation f_locate(const Rational& x, const Rational& lambda) {
  check_unit(x, "f");
  if (lambda.sign() <= 0) throw DomainError("f: lambda must be positive, got " + lambda.to_string());
  if (x.sign() == 0) return {Rational(0), {Location::Kind::Zero, 0}};
  int m = first_strip(lambda, 2);
  while (lambda > gamma(Family::F, m, x)) ++m;
  if (m == 0) return {Rational(1), {Location::Kind::Base, 0}};
  const Rational level = Rational::pow2(-m);
  if (lambda > Rational(m + 1)) return {level, {Location::Kind::Plateau, m}};
  const PlanePoint lo{alpha_inv(Family::F, m, lambda), level};
  const PlanePoint hi{alpha_inv(Family::F, m - 1, lambda), level * 2};
  return {geometry::lerp(lo, hi, x), {Location::Kind::Strip, m}};
}

Rational f_eval(const Rational& x, const Rational& lambda) { return f_locate(x, lambda).value; }

Rational f_ext_eval(const Rational& x, const Rational& lambda) {
  if (x.sign() < 0) throw DomainError("f_ext: x must be nonnegative");
  return f_eval(min(x, Rational(1)), lambda);
}

Evaluation g_locate(const Rational& x, const Rational& lambda) {
  check_unit(x, "g");
  if (lambda.sign() <= 0) throw DomainError("g: lambda must be positive, got " + lambda.to_string());
  if (lambda <= Rational(1)) {
    if (x <= lambda / 4) return {f_eval(x * 2, lambda) / 2, {Location::Kind::ScaledF, 0}};
    if (x <= lambda)
      return {geometry::lerp({lambda / 4, Rational(1, 2)}, {lambda, Rational(1)}, x),
              {Location::Kind::Interpolated, 0}};
    return {Rational(1), {Location::Kind::Base, 0}};
  }
  if (x.sign() == 0) return {Rational(0), {Location::Kind::Zero, 0}};
  int m = first_strip(lambda, 1);
  while (lambda > gamma(Family::G, m, x)) ++m;
  if (m == 0) return {Rational(1), {Location::Kind::Base, 0}};
  const Rational level = Rational::pow2(-m);
  if (lambda > Rational(m)) return {level, {Location::Kind::Plateau, m}};
  const PlanePoint lo{alpha_inv(Family::G, m, lambda), level};
  const PlanePoint hi{alpha_inv(Family::G, m - 1, lambda), level * 2};
  return {geometry::lerp(lo, hi, x), {Location::Kind::Strip, m}};
}

Rational g_eval(const Rational& x, const Rational& lambda) { return g_locate(x, lambda).value; }

std::string RegionTag::to_string() const {
  switch (kind) {
    case Kind::Obstacle: return "obstacle";
    case Kind::Sigma0Prime: return "Σ₀′";
    case Kind::Sigma0: return "Σ₀";
    case Kind::Sigma1: return "Σ₁";
    case Kind::Sigma2: return "Σ₂";
    case Kind::Strip: return "strip m=" + std::to_string(strip);
    case Kind::Zero: return "A=0";
  }
  return "?";
}

namespace {

void check_box(const Rational& x, const Rational& A) {
  if (x.sign() < 0 || x > Rational(1) || A.sign() < 0 || A > Rational(2))
    throw DomainError("(x, A) = (" + x.to_string() + ", " + A.to_string() + ") outside [0,1] x [0,2]");
}

// Argument fed to f when lambda > 1; requires A > 0.
Rational reduced_x(const Rational& x, const Rational& A) { return min(x * 2 / A, Rational(1)); }

}  // namespace

RegionTag region_classify(const Rational& x, const Rational& A, const Rational& lambda) {
  check_box(x, A);
  using K = RegionTag::Kind;
  if (lambda.sign() <= 0) return {K::Obstacle};
  if (lambda <= Rational(1)) {
    if (A >= Rational(1) && x * 2 >= lambda * (Rational(3) - A)) return {K::Sigma0Prime};
    if (A <= Rational(1) && x >= lambda * A) return {K::Sigma1};
    if (x * 4 <= lambda * A) return {K::Sigma2};
    return {K::Sigma0};
  }
  if (A.sign() == 0) return {K::Zero};
  const auto loc = f_locate(reduced_x(x, A), lambda).where;
  if (loc.kind == Location::Kind::Zero) return {K::Zero};
  return {K::Strip, loc.m, loc.kind == Location::Kind::Plateau};
}

BEvaluation B_evaluate(const Rational& x, const Rational& A, const Rational& lambda) {
  const RegionTag tag = region_classify(x, A, lambda);
  using K = RegionTag::Kind;
  switch (tag.kind) {
    case K::Obstacle:
    case K::Sigma0Prime: return {Rational(1), tag};
    case K::Sigma1: return {A, tag};
    case K::Sigma0: return {(A + x * 2 / lambda) / 3, tag};
    case K::Sigma2: return {A / 2 * f_eval(x * 2 / A, lambda), tag};
    case K::Zero: return {Rational(0), tag};
    case K::Strip: return {A / 2 * f_eval(reduced_x(x, A), lambda), tag};
  }
  return {Rational(0), tag};
}

Rational B_eval(const Rational& x, const Rational& A, const Rational& lambda) {
  return B_evaluate(x, A, lambda).value;
}

PiecewiseLinearFn f_vertices(const Rational& lambda, const Rational& x_min) {
  if (lambda.sign() <= 0) throw DomainError("f_vertices: lambda must be positive");
  if (x_min.sign() <= 0 || x_min > Rational(1)) throw DomainError("f_vertices: x_min must lie in (0, 1]");
  std::vector<PlanePoint> pts;
  for (int m = first_strip(lambda, 2);; ++m) {
    const Rational p = alpha_inv(Family::F, m, lambda);
    if (p < x_min) break;
    pts.push_back({p, Rational::pow2(-m)});
  }
  std::reverse(pts.begin(), pts.end());
  if (pts.empty() || pts.front().x > x_min) pts.insert(pts.begin(), {x_min, f_eval(x_min, lambda)});
  if (pts.back().x < Rational(1)) pts.push_back({Rational(1), f_eval(Rational(1), lambda)});
  return PiecewiseLinearFn(std::move(pts));
}

std::vector<Rational> f_slopes(const Rational& lambda, const Rational& x_min) {
  return f_vertices(lambda, x_min).slopes();
}

Rational corollary_bound(int n, int N) {
  if (n < 0) throw DomainError("corollary_bound: n must be nonnegative");
  if (N < 3) throw DomainError("corollary_bound: N must be at least 3");
  return Rational::pow2(-n) * Rational::pow2(3 - N);
}

namespace slopes {

namespace {
Rational mersenne(int e) { return Rational::pow2(e) - 1; }
Rational three_pow(int m, int sub) { return Rational(3) * Rational::pow2(m) - sub; }
}  // namespace

Rational a23(int m, const Rational& lambda) {
  const Rational inv = Rational::pow2(m + 1) * lambda * (Rational(1) / three_pow(m, 1) - Rational(1) / three_pow(m + 1, 1));
  return Rational(1) / inv;
}

Rational b23(int m, const Rational& lambda) {
  const Rational inv = Rational::pow2(m + 1) * ((lambda - 2) / mersenne(m) - lambda / three_pow(m + 1, 1));
  return Rational(1) / inv;
}

Rational c23(int m, const Rational& lambda) {
  const Rational inv =
      Rational::pow2(m + 1) * (lambda - 2) * (Rational(1) / mersenne(m) - Rational(1) / mersenne(m + 1));
  return Rational(1) / inv;
}

Rational ak(int k, int m, const Rational& lambda) {
  const Rational inv = Rational::pow2(m + 1) * (lambda - (k - 1)) *
                       (Rational(1) / mersenne(m - k + 3) - Rational(1) / mersenne(m - k + 4));
  return Rational(1) / inv;
}

Rational bk(int k, int m, const Rational& lambda) {
  const Rational inv =
      Rational::pow2(m + 1) * ((lambda - k) / mersenne(m - k + 2) - (lambda - (k - 1)) / mersenne(m - k + 4));
  return Rational(1) / inv;
}

Rational ck(int k, int m, const Rational& lambda) {
  const Rational inv = Rational::pow2(m + 1) * (lambda - k) *
                       (Rational(1) / mersenne(m - k + 2) - Rational(1) / mersenne(m - k + 3));
  return Rational(1) / inv;
}

}  // namespace slopes

}  // namespace bellman::candidate
