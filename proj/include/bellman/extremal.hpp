#pragma once

// Constructive extremizers. A Recipe is a small expression tree of
// concatenation moves; interpreting it yields a Config (E, alpha) whose
// level-set measure matches the candidate B at the targeted lattice point.

#include "bellman/dyadic.hpp"
#include "bellman/rational.hpp"

#include <memory>
#include <string>

namespace bellman::extremal {

using dyadic::Config;

class Recipe {
 public:
  enum class Kind { Base, Jump, Halve, MixZero, Mix };
  enum class BaseVariant { RootOne, DoubleRoot, Empty };

  static Recipe base(const Rational& x, BaseVariant variant);
  /// Mix(r, r, 1): adds the root with weight 1.
  static Recipe jump(const Recipe& r);
  /// Mix(r, empty config, 0).
  static Recipe halve(const Recipe& r);
  /// Mix(r, full set with empty sequence, 0).
  static Recipe mix_zero(const Recipe& r);
  static Recipe mix(const Recipe& r1, const Recipe& r2, const Rational& gamma);

  Kind kind() const;
  /// Number of Mix levels above the deepest base.
  int height() const;
  std::string to_string() const;

  /// For non-base recipes: the two concatenated operands and the root weight.
  /// Jump, Halve and MixZero report their implicit right operand.
  Recipe left() const;
  Recipe right() const;
  const Rational& gamma() const;
  /// For base recipes.
  const Rational& base_x() const;
  BaseVariant base_variant() const;

 private:
  struct Node;
  explicit Recipe(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// E of measure x packed to the left, alpha = weight 1 on the root.
Config base_root_config(const Rational& x);
/// E split evenly between the halves (left-packed in each), alpha = weight 1
/// on the root and both children; A = 2.
Config base_double_config(const Rational& x);
/// E of measure x packed to the left, empty alpha.
Config base_empty_config(const Rational& x);

/// Interprets the recipe. Throws DomainError if a node leaves the Carleson
/// class (constant above 2).
Config interpret(const Recipe& r);

Recipe x1_chain_recipe(int m);
Recipe gamma_vertex_recipe(int m, int k);

/// x = 1, A = 2, V_{m+2} = 2^-m.
Config x1_chain_config(int m);
/// x = 2^-k, A = 2, V at lambda_k^m equal to 2^-m.
Config gamma_vertex_config(int m, int k);
/// gamma_vertex_config(N+n-3, n): |E| = 2^-n, attains the corollary bound at lambda = N - 2^-n.
Config corollary_config(int n, int N);
/// E = [0,1), weight 1 on [0, 2^-j) for j = 0..N.
Config tower_config(int N);
/// Concatenation with root weight 0.
Config mix_config(const Config& c1, const Config& c2);

struct AttainmentTarget {
  Rational x;
  Rational A;
  Rational lambda;
  Rational value;  // B(x, A, lambda)
};

AttainmentTarget make_target(const Rational& x, const Rational& A, const Rational& lambda);
AttainmentTarget gamma_vertex_target(int m, int k);
AttainmentTarget corollary_target(int n, int N);

struct Attainment {
  AttainmentTarget target;
  Rational achieved;  // V_lambda of the config
  bool config_matches;  // config x and A equal the target's
  bool attained() const { return config_matches && achieved == target.value; }
};

Attainment check_attainment(const Config& c, const AttainmentTarget& target);

}  // namespace bellman::extremal
