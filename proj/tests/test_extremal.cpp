#include "bellman/extremal.hpp"

#include "bellman/candidate.hpp"

#include "support.hpp"

#include <functional>

using namespace testing;
using namespace bellman::extremal;
using bellman::DomainError;
using bellman::candidate::B_eval;
using bellman::candidate::lambda_km;
using bellman::dyadic::check_dynamics;
using bellman::dyadic::is_carleson;

TEST_CASE("base configurations") {
  const Config r1 = base_root_config(Q(1));
  CHECK(r1.V(Q(1)) == Q(1));
  const Config rh = base_root_config(Q("1/2"));
  CHECK(rh.x() == Q("1/2"));
  CHECK(rh.A() == Q(1));
  CHECK(rh.V(Q("1/2")) == Q(1));
  CHECK(B_eval(Q("1/2"), Q(1), Q("1/2")) == Q(1));
  CHECK(rh.V(Q("3/4")) == Q(0));
  CHECK(B_eval(Q("1/2"), Q(1), Q("3/4")) > Q(0));

  const Config d1 = base_double_config(Q(1));
  CHECK(d1.A() == Q(2));
  CHECK(d1.V(Q(2)) == Q(1));
  CHECK(B_eval(Q(1), Q(2), Q(2)) == Q(1));
  const Config dh = base_double_config(Q("1/2"));
  CHECK(dh.x() == Q("1/2"));
  CHECK(dh.V(Q(1)) == Q(1));
  CHECK(B_eval(Q("1/2"), Q(2), Q(1)) == Q(1));
  CHECK(base_double_config(Q("1/4")).V(Q("1/2")) == Q(1));
  CHECK(base_empty_config(Q("1/4")).A() == Q(0));
  CHECK_THROWS_AS(base_root_config(Q("1/3")), DomainError);
  CHECK_THROWS_AS(base_double_config(Q(2)), DomainError);
}

TEST_CASE("x = 1 chain") {
  CHECK(x1_chain_config(0).V(Q(2)) == Q(1));
  CHECK(x1_chain_config(1).V(Q(3)) == Q("1/2"));
  CHECK(x1_chain_config(3).V(Q(5)) == Q("1/8"));
  for (int m = 0; m <= 8; ++m) {
    const Config c = x1_chain_config(m);
    CHECK(c.x() == Q(1));
    CHECK(c.A() == Q(2));
    CHECK(c.V(Q(m + 2)) == Rational::pow2(-m));
    CHECK(c.V(Q(m + 2)) == B_eval(Q(1), Q(2), Q(m + 2)));
    CHECK(x1_chain_recipe(m).height() == 2 * m);
    CHECK(c.depth() == 2 * m + 1);
  }
}

TEST_CASE("gamma vertex examples") {
  CHECK(gamma_vertex_config(1, 1).V(Q("5/2")) == Q("1/2"));
  CHECK(gamma_vertex_config(1, 1).x() == Q("1/2"));
  CHECK(gamma_vertex_config(0, 0).V(Q(2)) == Q(1));
  CHECK(gamma_vertex_config(3, 2).V(Q("15/4")) == Q("1/8"));
  CHECK_THROWS_AS(gamma_vertex_config(1, 2), DomainError);
  CHECK_THROWS_AS(gamma_vertex_recipe(2, -1), DomainError);
}

TEST_CASE("property: attainment at every lattice vertex") {
  for (int m = 0; m <= 8; ++m)
    for (int k = 0; k <= m; ++k) {
      CAPTURE(m);
      CAPTURE(k);
      const Config c = gamma_vertex_config(m, k);
      CHECK(c.x() == Rational::pow2(-k));
      CHECK(c.A() == Q(2));
      CHECK(is_carleson(c.seq()));
      const Rational lambda = lambda_km(k, m);
      CHECK(c.V(lambda) == Rational::pow2(-m));
      CHECK(B_eval(c.x(), Q(2), lambda) == Rational::pow2(-m));
      CHECK(check_attainment(c, gamma_vertex_target(m, k)).attained());
    }
}

TEST_CASE("corollary configurations") {
  CHECK(corollary_config(0, 3).V(Q(2)) == Q(1));
  CHECK(corollary_config(1, 3).V(Q("5/2")) == Q("1/2"));
  CHECK(corollary_config(2, 4).V(Q("15/4")) == Q("1/8"));
  CHECK_THROWS_AS(corollary_config(0, 2), DomainError);
  const auto t = corollary_target(2, 4);
  CHECK(t.x == Q("1/4"));
  CHECK(t.lambda == Q("15/4"));
  CHECK(t.value == Q("1/8"));
}

TEST_CASE("tower configurations") {
  CHECK(tower_config(2).V(Q(2)) == Q("1/2"));
  CHECK(tower_config(2).V(Q(3)) == Q("1/4"));
  for (int N = 0; N <= 10; ++N) {
    CHECK(tower_config(N).V(Q(0)) == Q(1));
    for (int lambda = 1; lambda <= N + 1; ++lambda) {
      const Rational v = tower_config(N).V(Q(lambda));
      CHECK(v == Rational::pow2(1 - lambda));
      CHECK(v <= Rational::pow2(2 - lambda));
    }
  }
}

TEST_CASE("mixing configurations") {
  const Config c = gamma_vertex_config(2, 1);
  const Rational lambda = lambda_km(1, 2);
  const Config same = mix_config(c, c);
  CHECK(same.x() == c.x());
  CHECK(same.A() == c.A());
  CHECK(same.V(lambda) == c.V(lambda));
  const Config halved = mix_config(c, Config::empty());
  CHECK(halved.x() == c.x() / 2);
  CHECK(halved.A() == c.A() / 2);
  CHECK(halved.V(lambda) == c.V(lambda) / 2);
  // Two vertices of the same curve at a common height: V is the average.
  const Config a = gamma_vertex_config(2, 1), b = gamma_vertex_config(2, 2);
  for (const Rational& l : {lambda_km(1, 2), lambda_km(2, 2)}) CHECK(mix_config(a, b).V(l) == (a.V(l) + b.V(l)) / 2);
}

TEST_CASE("recipes") {
  const Recipe r = gamma_vertex_recipe(2, 1);
  CHECK(r.kind() == Recipe::Kind::Jump);
  CHECK(r.gamma() == Q(1));
  CHECK(r.left().kind() == Recipe::Kind::Halve);
  CHECK(r.height() == gamma_vertex_recipe(1, 0).height() + 2);
  CHECK(Recipe::base(Q("1/2"), Recipe::BaseVariant::RootOne).base_x() == Q("1/2"));
  CHECK_THROWS_AS(Recipe::base(Q("1/2"), Recipe::BaseVariant::Empty).left(), DomainError);
  CHECK(!r.to_string().empty());
  // Jumping a configuration of height 2 leaves the Carleson class.
  const Recipe too_much = Recipe::jump(Recipe::base(Q(1), Recipe::BaseVariant::DoubleRoot));
  CHECK_THROWS_AS(interpret(too_much), DomainError);
}

TEST_CASE("property: each recipe node satisfies the step algebra") {
  // Walk every node of the extremizer recipes and check the dynamics identity
  // at the node's breakpoints.
  std::function<void(const Recipe&)> walk = [&](const Recipe& r) {
    if (r.kind() == Recipe::Kind::Base) return;
    const Config c1 = interpret(r.left()), c2 = interpret(r.right());
    const Config joined = interpret(r);
    CHECK(joined.x() == (c1.x() + c2.x()) / 2);
    CHECK(joined.A() == (c1.A() + c2.A()) / 2 + r.gamma());
    for (const auto& [v, mass] : c1.distribution()) CHECK(check_dynamics(c1, c2, r.gamma(), v));
    for (const auto& [v, mass] : c2.distribution()) CHECK(check_dynamics(c1, c2, r.gamma(), v));
    if (r.kind() == Recipe::Kind::Halve) CHECK(joined.V(Q(1)) == c1.V(Q(1)) / 2);
    walk(r.left());
    if (r.kind() == Recipe::Kind::Mix) walk(r.right());
  };
  for (int m = 0; m <= 3; ++m)
    for (int k = 0; k <= m; ++k) walk(gamma_vertex_recipe(m, k));
}
