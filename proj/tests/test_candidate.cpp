#include "bellman/candidate.hpp"

#include "support.hpp"

using namespace testing;
using namespace bellman::candidate;
using bellman::DomainError;
using bellman::geometry::jump_map;
using bellman::geometry::scale_map;
using bellman::verify::Sampler;

namespace {

PlanePoint P(const char* x, const char* y) { return {Q(x), Q(y)}; }

// L[{(lambda / (3 2^k - 1), 2^-k) : k >= 0}](x), written out independently of
// the strip search.
Rational node_interp(const Rational& x, const Rational& lambda) {
  if (x.sign() == 0) return Rational(0);
  int k = 0;
  auto node = [&](int j) { return lambda / Rational(3 * (std::int64_t{1} << j) - 1); };
  while (node(k) > x) ++k;
  if (k == 0) return Rational(1);
  const Rational xa = node(k), xb = node(k - 1);
  const Rational va = Rational::pow2(-k), vb = Rational::pow2(1 - k);
  return va + (vb - va) * (x - xa) / (xb - xa);
}

}  // namespace

TEST_CASE("curve vertices") {
  CHECK(vertex_F(0, 0) == P("1", "2"));
  CHECK(vertex_F(1, 1) == P("1/2", "5/2"));
  CHECK(vertex_F(1, 2) == P("1/2", "7/2"));
  CHECK(vertex_G(1, 1) == P("1/2", "2"));
  CHECK(vertex_G(0, 0) == P("1", "1"));
  CHECK(jump_map(vertex_G(2, 3)) == vertex_F(2, 3));
  CHECK(lambda_km(2, 3) == Q("15/4"));
  CHECK_THROWS_AS(vertex_F(2, 1), DomainError);
  CHECK_THROWS_AS(vertex_G(-1, 1), DomainError);
}

TEST_CASE("property: vertex transport") {
  for (int m = 1; m <= 12; ++m)
    for (int k = 1; k <= m; ++k) {
      CAPTURE(m);
      CAPTURE(k);
      CHECK(jump_map(vertex_G(k, m)) == vertex_F(k, m));
      CHECK(scale_map(vertex_F(k - 1, m - 1)) == vertex_G(k, m));
    }
}

TEST_CASE("curve shape") {
  for (Family fam : {Family::F, Family::G})
    for (int m = 0; m <= 12; ++m) {
      const Curve c = make_curve(fam, m);
      REQUIRE(c.vertices.size() == static_cast<std::size_t>(m + 2));
      CHECK(c.vertices.front() == P("0", "0"));
      for (std::size_t i = 1; i < c.vertices.size(); ++i) {
        CHECK(c.vertices[i - 1].x < c.vertices[i].x);
        // The G curves end with a horizontal segment from (1/2, m+1) to (1, m+1).
        if (fam == Family::G && m >= 1 && i + 1 == c.vertices.size())
          CHECK(c.vertices[i - 1].y == c.vertices[i].y);
        else
          CHECK(c.vertices[i - 1].y < c.vertices[i].y);
      }
      const Rational origin = fam == Family::F ? origin_param_F(m) : origin_param_G(m);
      CHECK(c.vertices[1].x / c.vertices[1].y == origin);
    }
  CHECK(origin_param_F(2) == Q("1/11"));
  CHECK(origin_param_G(1) == Q("1/4"));
}

TEST_CASE("gamma and its inverse") {
  CHECK(gamma(Family::F, 1, Q("1/2")) == Q("5/2"));
  CHECK(gamma(Family::F, 0, Q(1)) == Q(2));
  CHECK(gamma(Family::F, 2, Q("1/8")) == Q("11/8"));
  CHECK(alpha_inv(Family::F, 0, Q(2)) == Q(1));
  CHECK(alpha_inv(Family::F, 1, Q("5/2")) == Q("1/2"));
  CHECK(alpha_inv(Family::G, 1, Q(2)) == Q("1/2"));
  for (int m = 0; m <= 10; ++m) {
    const Rational top = 3 - Rational::pow2(-m);
    for (const Rational& lambda : {top, top / 2, top / 7, Q("1/100")})
      CHECK(alpha_inv(Family::F, m, lambda) == lambda / Rational(3 * (std::int64_t{1} << m) - 1));
  }
  CHECK_THROWS_AS(alpha_inv(Family::F, 1, Q(4)), DomainError);
  CHECK(segment_index(Family::F, 2, Q(1)) == 3);
  CHECK(segment_index(Family::F, 2, Q(3)) == 2);
  // Segments are closed at the top: the vertex F_1^2 = (1/2, 7/2) belongs to segment 2.
  CHECK(segment_index(Family::F, 2, Q("7/2")) == 2);
  CHECK(segment_index(Family::F, 2, Q("15/4")) == 1);
}

TEST_CASE("f values") {
  for (int k = 0; k <= 8; ++k) CHECK(f_eval(Rational::pow2(-k), 3 - Rational::pow2(-k)) == Rational::pow2(-k));
  CHECK(f_eval(Q(1), Q("7/2")) == Q("1/4"));
  // Nodes at lambda = 1 are x_0 = 1/2 and x_1 = 1/5.
  CHECK(f_eval(Q("4/15"), Q(1)) == Q("11/18"));
  CHECK(f_eval(Q("7/20"), Q(1)) == Q("3/4"));
  CHECK(f_eval(Q("7/40"), Q("1/2")) == Q("3/4"));
  CHECK(f_eval(Q(0), Q(5)) == Q(0));
  CHECK(f_ext_eval(Q(2), Q(2)) == Q(1));
  CHECK(f_ext_eval(Q("3/2"), Q("7/2")) == Q("1/4"));
  CHECK(f_ext_eval(Q("1/2"), Q("5/2")) == Q("1/2"));
  CHECK_THROWS_AS(f_eval(Q(2), Q(1)), DomainError);
  CHECK_THROWS_AS(f_eval(Q("1/2"), Q(0)), DomainError);
}

TEST_CASE("f locations") {
  CHECK(f_locate(Q("1/4"), Q("5/2")).where.to_string() == "strip m=2");
  CHECK(f_locate(Q("1/2"), Q("5/2")).where.to_string() == "plateau m=1");
  CHECK(f_locate(Q(1), Q("7/2")).where.to_string() == "plateau m=2");
  CHECK(f_locate(Q(1), Q(2)).where.to_string() == "S₀");
  CHECK(f_locate(Q(0), Q(2)).where.to_string() == "x=0");
}

TEST_CASE("g values") {
  CHECK(g_eval(Q("1/10"), Q(1)) == Q("1/4"));
  CHECK(g_eval(Q("5/8"), Q(1)) == Q("3/4"));
  CHECK(g_eval(Q("1/2"), Q(2)) == Q("1/2"));
  CHECK(g_locate(Q("1/10"), Q(1)).where.to_string() == "scaled f");
  CHECK(g_locate(Q("5/8"), Q(1)).where.to_string() == "interpolation");
}

TEST_CASE("region classification") {
  CHECK(region_classify(Q("3/4"), Q("1/2"), Q("1/2")).to_string() == "Σ₁");
  CHECK(region_classify(Q("1/4"), Q(1), Q("1/2")).to_string() == "Σ₀");
  CHECK(region_classify(Q("7/80"), Q(1), Q("1/2")).to_string() == "Σ₂");
  CHECK(region_classify(Q("1"), Q(2), Q("1/2")).to_string() == "Σ₀′");
  CHECK(region_classify(Q("1/3"), Q(2), Q(-5)).to_string() == "obstacle");
  CHECK(region_classify(Q("1/2"), Q(2), Q("5/2")).to_string() == "strip m=1");
  CHECK(region_classify(Q("1/2"), Q(0), Q("5/2")).to_string() == "A=0");
  CHECK_THROWS_AS(region_classify(Q(2), Q(1), Q(1)), DomainError);
  CHECK_THROWS_AS(region_classify(Q(1), Q(3), Q(1)), DomainError);
}

TEST_CASE("B values") {
  for (const char* x : {"0", "1/3", "1"})
    for (const char* A : {"0", "1", "2"}) CHECK(B_eval(Q(x), Q(A), Q(-1)) == Q(1));
  CHECK(B_eval(Q("1/2"), Q(2), Q("5/2")) == Q("1/2"));
  CHECK(B_eval(Q("1/4"), Q(1), Q("1/2")) == Q("2/3"));
  CHECK(B_eval(Q("1/4"), Q(1), Q("5/2")) == Q("1/4"));
  CHECK(B_eval(Q(1), Q(1), Q(1)) == Q(1));
  CHECK(B_eval(Q(1), Q(1), Q("101/100")) == Q("1/2"));
  CHECK(B_eval(Q(1), Q(0), Q(2)) == Q(0));
  CHECK(B_eval(Q(1), Q(1), Q(2)) == Q("1/2"));
  CHECK(B_eval(Q(1), Q(2), Q(2)) == Q(1));
}

TEST_CASE("f as an explicit piecewise-linear function") {
  const auto at1 = f_vertices(Q(1), Q("1/5"));
  CHECK(std::vector<PlanePoint>(at1.vertices().begin(), at1.vertices().end()) ==
        std::vector<PlanePoint>{P("1/5", "1/2"), P("1/2", "1"), P("1", "1")});
  CHECK(f_slopes(Q(1), Q("1/5")) == std::vector<Rational>{Q("5/3"), Q(0)});
  // f(., 5/2) is 1/2 on [1/2, 1]: the point (1, 5/2) is on the m = 1 plateau.
  const auto at52 = f_vertices(Q("5/2"), Q("1/2"));
  CHECK(std::vector<PlanePoint>(at52.vertices().begin(), at52.vertices().end()) ==
        std::vector<PlanePoint>{P("1/2", "1/2"), P("1", "1/2")});
  const auto at72 = f_vertices(Q("7/2"), Q("1/4"));
  CHECK(at72(Q(1)) == Q("1/4"));
  CHECK(f_slopes(Q("7/2"), Q("1/4")).back() == Q(0));
  for (const Rational& lambda : bellman::verify::default_slope_grid()) {
    const auto fn = f_vertices(lambda, Q(1, 1024));
    CHECK(fn.is_concave());
    for (const auto& v : fn.vertices()) CHECK(f_eval(v.x, lambda) == v.y);
  }
}

TEST_CASE("corollary bound") {
  CHECK(corollary_bound(0, 3) == Q(1));
  CHECK(corollary_bound(1, 3) == Q("1/2"));
  CHECK(corollary_bound(1, 4) == Q("1/4"));
  CHECK(corollary_bound(0, 3) == B_eval(Q(1), Q(2), Q(2)));
  CHECK(corollary_bound(1, 3) == B_eval(Q("1/2"), Q(2), Q("5/2")));
  CHECK(corollary_bound(1, 4) == B_eval(Q("1/2"), Q(2), Q("7/2")));
  CHECK_THROWS_AS(corollary_bound(0, 2), DomainError);
}

TEST_CASE("slope closed forms on strip boundaries") {
  // a_m is the reciprocal-slope formula for both crossings on origin segments.
  for (int m = 0; m <= 6; ++m) {
    const Rational lambda = Q("5/2");
    const Rational xm = origin_param_F(m), xm1 = origin_param_F(m + 1);
    const Rational expected = 1 / (Rational::pow2(m + 1) * lambda * (xm - xm1));
    CHECK(bellman::candidate::slopes::a23(m, lambda) == expected);
  }
}

TEST_CASE("property: curve values") {
  for (int m = 0; m <= 12; ++m)
    for (const auto& v : make_curve(Family::F, m).vertices)
      if (v.x.sign() > 0) CHECK(f_eval(v.x, v.y) == Rational::pow2(-m));
}

TEST_CASE("property: strip coherence") {
  Sampler rng(21);
  for (int i = 0; i < 2000; ++i) {
    const Rational x = rng.rational(Q("1/256"), Q(1), 256);
    const Rational lambda = rng.rational(Q("1/64"), Q(12), 64);
    for (int m = 1; m <= 14; ++m) REQUIRE(gamma(Family::F, m, x) - gamma(Family::F, m - 1, x) > 0);
    const auto loc = f_locate(x, lambda).where;
    if (loc.kind == Location::Kind::Base) {
      REQUIRE(lambda <= gamma(Family::F, 0, x));
      continue;
    }
    REQUIRE(loc.m >= 1);
    REQUIRE(gamma(Family::F, loc.m - 1, x) < lambda);
    REQUIRE(lambda <= gamma(Family::F, loc.m, x));
  }
}

TEST_CASE("property: boundary agreement between regions") {
  Sampler rng(22);
  for (int i = 0; i < 1000; ++i) {
    const Rational lambda = rng.rational(Q("1/64"), Q(1), 64);
    // x = lambda A with A <= 1: both branches give A.
    const Rational A1 = rng.rational(Q(0), Q(1), 64);
    const Rational x1 = lambda * A1;
    CHECK(A1 == (A1 + x1 * 2 / lambda) / 3);
    CHECK(B_eval(x1, A1, lambda) == A1);
    // x = lambda A / 4 with A > 0: both branches give A / 2.
    const Rational A2 = rng.rational(Q("1/64"), Q(2), 64);
    const Rational x2 = lambda * A2 / 4;
    CHECK((A2 + x2 * 2 / lambda) / 3 == A2 / 2);
    CHECK(A2 / 2 * f_eval(x2 * 2 / A2, lambda) == A2 / 2);
    CHECK(B_eval(x2, A2, lambda) == A2 / 2);
    // Segment from (lambda, 1) to (lambda / 2, 2): value 1.
    const Rational A3 = rng.rational(Q(1), Q(2), 64);
    const Rational x3 = lambda * (3 - A3) / 2;
    CHECK((A3 + x3 * 2 / lambda) / 3 == Q(1));
    CHECK(B_eval(x3, A3, lambda) == Q(1));
  }
}

TEST_CASE("property: strip logic matches node interpolation for lambda <= 1") {
  Sampler rng(23);
  for (int i = 0; i < 200; ++i) {
    const Rational x = rng.rational(Q(0), Q(1), 97);
    const Rational lambda = rng.rational(Q("1/97"), Q(1), 97);
    CAPTURE(x);
    CAPTURE(lambda);
    CHECK(f_eval(x, lambda) == node_interp(x, lambda));
  }
}

TEST_CASE("property: g is half of extended f for lambda > 1") {
  Sampler rng(24);
  for (int i = 0; i < 2000; ++i) {
    const Rational x = rng.rational(Q(0), Q(1), 64);
    const Rational lambda = Q(1) + rng.rational(Q("1/64"), Q(10), 64);
    REQUIRE(g_eval(x, lambda) == f_ext_eval(x * 2, lambda) / 2);
    REQUIRE(g_eval(x, lambda) == B_eval(x, Q(1), lambda));
  }
}

TEST_CASE("property: f is non-increasing in lambda") {
  Sampler rng(25);
  for (int i = 0; i < 2000; ++i) {
    const Rational x = rng.rational(Q(0), Q(1), 64);
    const Rational l1 = rng.rational(Q("1/64"), Q(10), 64);
    const Rational l2 = l1 + rng.rational(Q(0), Q(3), 64);
    REQUIRE(f_eval(x, l1) >= f_eval(x, l2));
  }
}

TEST_CASE("property: B is homogeneous for lambda > 1") {
  Sampler rng(26);
  for (int i = 0; i < 2000; ++i) {
    const Rational x = rng.rational(Q(0), Q(1), 64);
    const Rational A = rng.rational(Q(0), Q(2), 64);
    const Rational t = rng.rational(Q("1/64"), Q(1), 64);
    const Rational lambda = Q(1) + rng.rational(Q("1/64"), Q(8), 64);
    REQUIRE(B_eval(t * x, t * A, lambda) == t * B_eval(x, A, lambda));
  }
}
