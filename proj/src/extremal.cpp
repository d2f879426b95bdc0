#include "bellman/extremal.hpp"

#include "bellman/candidate.hpp"

namespace bellman::extremal {

using dyadic::CarlesonSequence;
using dyadic::DyadicInterval;
using dyadic::DyadicSet;

struct Recipe::Node {
  Kind kind;
  // Base
  Rational x;
  BaseVariant variant = BaseVariant::Empty;
  // Composite
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;  // null for Jump/Halve/MixZero
  Rational gamma;
  int height = 0;
};

namespace {

void check_dyadic_unit(const Rational& x) {
  if (x.sign() < 0 || x > Rational(1)) throw DomainError("base measure outside [0,1]: " + x.to_string());
  if (!x.is_dyadic()) throw DomainError("base measure must be dyadic: " + x.to_string());
}

}  // namespace

Recipe Recipe::base(const Rational& x, BaseVariant variant) {
  check_dyadic_unit(x);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->x = x;
  n->variant = variant;
  return Recipe(std::move(n));
}

namespace {

template <class NodeT>
std::shared_ptr<const NodeT> unary(std::shared_ptr<const NodeT> child, Recipe::Kind kind, Rational gamma) {
  auto n = std::make_shared<NodeT>();
  n->kind = kind;
  n->height = child->height + 1;
  n->left = std::move(child);
  n->gamma = std::move(gamma);
  return n;
}

}  // namespace

Recipe Recipe::jump(const Recipe& r) { return Recipe(unary(r.node_, Kind::Jump, Rational(1))); }
Recipe Recipe::halve(const Recipe& r) { return Recipe(unary(r.node_, Kind::Halve, Rational(0))); }
Recipe Recipe::mix_zero(const Recipe& r) { return Recipe(unary(r.node_, Kind::MixZero, Rational(0))); }

Recipe Recipe::mix(const Recipe& r1, const Recipe& r2, const Rational& gamma) {
  if (gamma.sign() < 0 || gamma > Rational(1)) throw DomainError("mix weight outside [0,1]: " + gamma.to_string());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mix;
  n->left = r1.node_;
  n->right = r2.node_;
  n->gamma = gamma;
  n->height = std::max(r1.height(), r2.height()) + 1;
  return Recipe(std::move(n));
}

Recipe::Kind Recipe::kind() const { return node_->kind; }
int Recipe::height() const { return node_->height; }

Recipe Recipe::left() const {
  if (node_->kind == Kind::Base) throw DomainError("base recipe has no operands");
  return Recipe(node_->left);
}

Recipe Recipe::right() const {
  switch (node_->kind) {
    case Kind::Base: throw DomainError("base recipe has no operands");
    case Kind::Jump: return Recipe(node_->left);
    case Kind::Halve: return Recipe::base(Rational(0), BaseVariant::Empty);
    case Kind::MixZero: return Recipe::base(Rational(1), BaseVariant::Empty);
    case Kind::Mix: break;
  }
  return Recipe(node_->right);
}

const Rational& Recipe::gamma() const {
  if (node_->kind == Kind::Base) throw DomainError("base recipe has no root weight");
  return node_->gamma;
}

const Rational& Recipe::base_x() const {
  if (node_->kind != Kind::Base) throw DomainError("not a base recipe");
  return node_->x;
}

Recipe::BaseVariant Recipe::base_variant() const {
  if (node_->kind != Kind::Base) throw DomainError("not a base recipe");
  return node_->variant;
}

std::string Recipe::to_string() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Base: {
      const char* v = n.variant == BaseVariant::RootOne ? "root-one"
                      : n.variant == BaseVariant::DoubleRoot ? "double-root"
                                                              : "empty";
      return "Base(" + n.x.to_string() + ", " + v + ")";
    }
    case Kind::Jump: return "Jump(" + Recipe(n.left).to_string() + ")";
    case Kind::Halve: return "Halve(" + Recipe(n.left).to_string() + ")";
    case Kind::MixZero: return "MixZero(" + Recipe(n.left).to_string() + ")";
    case Kind::Mix:
      return "Mix(" + Recipe(n.left).to_string() + ", " + Recipe(n.right).to_string() + ", " + n.gamma.to_string() +
             ")";
  }
  return "?";
}

Config base_root_config(const Rational& x) {
  check_dyadic_unit(x);
  return Config(DyadicSet::left_packed(x), CarlesonSequence::root_one());
}

Config base_double_config(const Rational& x) {
  check_dyadic_unit(x);
  const DyadicSet half = DyadicSet::left_packed(x);
  CarlesonSequence seq;
  seq.set(DyadicInterval::root(), Rational(1));
  seq.set({1, 0}, Rational(1));
  seq.set({1, 1}, Rational(1));
  return Config(dyadic::concat_sets(half, half), std::move(seq));
}

Config base_empty_config(const Rational& x) {
  check_dyadic_unit(x);
  return Config(DyadicSet::left_packed(x), CarlesonSequence());
}

namespace {

struct Interpreted {
  Config config;
  Rational constant;  // Carleson constant of config.seq()
};

Interpreted interpret_node(const Recipe& r) {
  if (r.kind() == Recipe::Kind::Base) {
    switch (r.base_variant()) {
      case Recipe::BaseVariant::RootOne: return {base_root_config(r.base_x()), Rational(1)};
      case Recipe::BaseVariant::DoubleRoot: return {base_double_config(r.base_x()), Rational(2)};
      case Recipe::BaseVariant::Empty: return {base_empty_config(r.base_x()), Rational(0)};
    }
  }
  const Interpreted a = interpret_node(r.left());
  const Interpreted b = r.kind() == Recipe::Kind::Jump ? a : interpret_node(r.right());
  Config joined = dyadic::concat(a.config, b.config, r.gamma());
  // Heights are scale invariant, so only the new root can raise the constant.
  Rational constant = max(max(a.constant, b.constant), joined.A());
  if (constant > Rational(2))
    throw DomainError("recipe leaves the Carleson class: constant " + constant.to_string() + " at " + r.to_string());
  return {std::move(joined), std::move(constant)};
}

}  // namespace

Config interpret(const Recipe& r) { return interpret_node(r).config; }

Recipe x1_chain_recipe(int m) {
  if (m < 0) throw DomainError("x1_chain: m must be nonnegative");
  Recipe r = Recipe::base(Rational(1), Recipe::BaseVariant::DoubleRoot);
  for (int j = 0; j < m; ++j) r = Recipe::jump(Recipe::mix_zero(r));
  return r;
}

Recipe gamma_vertex_recipe(int m, int k) {
  if (k < 0 || m < 0 || k > m)
    throw DomainError("gamma_vertex requires 0 <= k <= m, got m=" + std::to_string(m) + " k=" + std::to_string(k));
  Recipe r = x1_chain_recipe(m - k);
  for (int j = 0; j < k; ++j) r = Recipe::jump(Recipe::halve(r));
  return r;
}

Config x1_chain_config(int m) { return interpret(x1_chain_recipe(m)); }

Config gamma_vertex_config(int m, int k) { return interpret(gamma_vertex_recipe(m, k)); }

Config corollary_config(int n, int N) {
  if (n < 0) throw DomainError("corollary: n must be nonnegative");
  if (N < 3) throw DomainError("corollary: N must be at least 3");
  return gamma_vertex_config(N + n - 3, n);
}

Config tower_config(int N) { return Config(DyadicSet::full(), CarlesonSequence::tower(N)); }

Config mix_config(const Config& c1, const Config& c2) { return dyadic::concat(c1, c2, Rational(0)); }

AttainmentTarget make_target(const Rational& x, const Rational& A, const Rational& lambda) {
  return {x, A, lambda, candidate::B_eval(x, A, lambda)};
}

AttainmentTarget gamma_vertex_target(int m, int k) {
  if (k < 0 || m < 0 || k > m) throw DomainError("gamma_vertex target requires 0 <= k <= m");
  return make_target(Rational::pow2(-k), Rational(2), candidate::lambda_km(k, m));
}

AttainmentTarget corollary_target(int n, int N) {
  if (n < 0) throw DomainError("corollary: n must be nonnegative");
  if (N < 3) throw DomainError("corollary: N must be at least 3");
  return make_target(Rational::pow2(-n), Rational(2), Rational(N) - Rational::pow2(-n));
}

Attainment check_attainment(const Config& c, const AttainmentTarget& target) {
  return {target, c.V(target.lambda), c.x() == target.x && c.A() == target.A};
}

}  // namespace bellman::extremal
