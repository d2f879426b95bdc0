#pragma once

// Exact evaluation of the candidate Bellman function B(x, A, lambda) and of
// its boundary profiles f(x, lambda) = B(x, 2, lambda), g(x, lambda) = B(x, 1, lambda).
//
// f and g are built on two families of piecewise-linear level curves in the
// (x, lambda) plane:
//   family F: Gamma_m through (0,0), F_m^m, ..., F_0^m,  F_k^m = (2^-k, m-k+3-2^-k)
//   family G: Gamma'_m through (0,0), G_m^m, ..., G_0^m, G_k^m = (2^-k, m-k+3-2^(1-k))
// f equals 2^-m on Gamma_m and is interpolated horizontally between
// consecutive curves; g is built the same way on the G family.

#include "bellman/geometry.hpp"
#include "bellman/rational.hpp"

#include <string>
#include <vector>

namespace bellman::candidate {

using geometry::PiecewiseLinearFn;
using geometry::PlanePoint;

enum class Family { F, G };

PlanePoint vertex(Family family, int k, int m);
inline PlanePoint vertex_F(int k, int m) { return vertex(Family::F, k, m); }
inline PlanePoint vertex_G(int k, int m) { return vertex(Family::G, k, m); }

/// lambda_k^m = m - k + 3 - 2^-k, the height of F_k^m.
Rational lambda_km(int k, int m);

/// Reciprocal slope of the origin segment of Gamma_m: 1 / (3 * 2^m - 1).
Rational origin_param_F(int m);
/// Reciprocal slope of the origin segment of Gamma'_m: 1 / (3 * 2^m - 2).
Rational origin_param_G(int m);

struct Curve {
  Family family;
  int m;
  /// (0,0) followed by the k = m, m-1, ..., 0 vertices.
  std::vector<PlanePoint> vertices;
};

Curve make_curve(Family family, int m);

/// Height of the curve over x in [0, 1].
Rational gamma(Family family, int m, const Rational& x);

/// Inverse of gamma over [0, m+2] (F) or [0, m+1] (G). On the horizontal
/// top segment of the G family the leftmost preimage is returned.
Rational alpha_inv(Family family, int m, const Rational& lambda);

/// Segment of the curve crossed at height lambda in (0, top]: k in 1..m for
/// the segment from vertex k to vertex k-1, m+1 for the origin segment.
int segment_index(Family family, int m, const Rational& lambda);

/// Which closed-form branch produced a value of f or g.
struct Location {
  enum class Kind {
    Zero,         // x = 0
    Base,         // strip S_0, value 1
    Strip,        // interpolation between curves m and m-1
    Plateau,      // no curve below: constant 2^-m
    ScaledF,      // g with lambda <= 1 and x <= lambda / 4
    Interpolated  // g with lambda <= 1 and lambda / 4 < x <= lambda
  };
  Kind kind = Kind::Base;
  int m = 0;

  std::string to_string() const;
  friend bool operator==(const Location&, const Location&) = default;
};

struct Evaluation {
  Rational value;
  Location where;
};

Evaluation f_locate(const Rational& x, const Rational& lambda);
Evaluation g_locate(const Rational& x, const Rational& lambda);

Rational f_eval(const Rational& x, const Rational& lambda);
/// f(min(x, 1), lambda) for x >= 0.
Rational f_ext_eval(const Rational& x, const Rational& lambda);
Rational g_eval(const Rational& x, const Rational& lambda);

struct RegionTag {
  enum class Kind { Obstacle, Sigma0Prime, Sigma0, Sigma1, Sigma2, Strip, Zero };
  Kind kind = Kind::Obstacle;
  /// Strip index and plateau flag of the underlying f evaluation (Strip only).
  int strip = 0;
  bool plateau = false;

  std::string to_string() const;
  friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

/// Region of (x, A) in [0,1] x [0,2] used by B at this lambda. Boundary
/// points are resolved with priority Sigma0' > Sigma1 > Sigma2 > Sigma0.
RegionTag region_classify(const Rational& x, const Rational& A, const Rational& lambda);

struct BEvaluation {
  Rational value;
  RegionTag region;
};

BEvaluation B_evaluate(const Rational& x, const Rational& A, const Rational& lambda);
Rational B_eval(const Rational& x, const Rational& A, const Rational& lambda);

/// f(., lambda) restricted to [x_min, 1] as an explicit piecewise-linear function.
PiecewiseLinearFn f_vertices(const Rational& lambda, const Rational& x_min);
/// Consecutive slopes of f_vertices, ordered by increasing x.
std::vector<Rational> f_slopes(const Rational& lambda, const Rational& x_min);

/// |E| 2^(3 - |E| - lambda) at |E| = 2^-n, lambda = N - 2^-n, i.e. 2^-n 2^(3-N).
Rational corollary_bound(int n, int N);

/// Closed-form slopes of f(., lambda) on strip S_{m+1}.
///
/// For 2 < lambda <= 3 the three regimes (both crossing points on origin
/// segments / one on an origin segment / both on the steep segments) give
/// a_m, b_m, c_m. For k < lambda <= k+1 with k >= 3 the same three regimes
/// give the k-indexed versions.
namespace slopes {
Rational a23(int m, const Rational& lambda);
Rational b23(int m, const Rational& lambda);
Rational c23(int m, const Rational& lambda);
Rational ak(int k, int m, const Rational& lambda);
Rational bk(int k, int m, const Rational& lambda);
Rational ck(int k, int m, const Rational& lambda);
}  // namespace slopes

}  // namespace bellman::candidate
