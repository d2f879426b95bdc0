#pragma once

// Dyadic model of the sparse operator: sets E that are finite unions of
// dyadic intervals of [0,1), finitely supported Carleson sequences alpha,
// the operator A_alpha 1_E and its level-set measure V_lambda(E, alpha).

#include "bellman/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace bellman::dyadic {

/// Deepest interval the simulator accepts; indices must fit in 64 bits.
inline constexpr int kMaxDepth = 62;
/// Deepest uniform partition that sparse_apply will materialize.
inline constexpr int kMaxCellDepth = 26;

/// [i 2^-d, (i+1) 2^-d).
struct DyadicInterval {
  int depth = 0;
  std::int64_t index = 0;

  DyadicInterval() = default;
  DyadicInterval(int d, std::int64_t i);

  static DyadicInterval root() { return {}; }

  Rational left() const;
  Rational right() const;
  Rational measure() const { return Rational::pow2(-depth); }

  DyadicInterval parent() const;
  DyadicInterval left_child() const;
  DyadicInterval right_child() const;
  DyadicInterval sibling() const;

  /// True if `other` is this interval or one of its descendants.
  bool contains(const DyadicInterval& other) const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  /// By left endpoint; on ties the shallower (longer) interval first.
  friend std::strong_ordering operator<=>(const DyadicInterval& a, const DyadicInterval& b);
};

/// Finite union of dyadic intervals kept in canonical form: pairwise
/// disjoint, complete sibling pairs merged, sorted. Equal point sets have
/// equal representations.
class DyadicSet {
 public:
  DyadicSet() = default;
  /// Any finite family; overlaps are absorbed.
  explicit DyadicSet(std::vector<DyadicInterval> intervals);

  static DyadicSet full() { return DyadicSet({DyadicInterval::root()}); }
  /// [0, x) for dyadic x in [0, 1], at minimal depth.
  static DyadicSet left_packed(const Rational& x);
  /// Union of the depth-d cells whose bit is set in `cells` (size 2^d).
  static DyadicSet from_cells(int depth, const std::vector<bool>& cells);

  const std::vector<DyadicInterval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  Rational measure() const;
  /// Depth of the deepest interval, 0 when empty.
  int max_depth() const;
  /// Indicator of the set on the depth-d cells; d >= max_depth().
  std::vector<bool> cells(int depth) const;

  friend bool operator==(const DyadicSet&, const DyadicSet&) = default;

 private:
  std::vector<DyadicInterval> intervals_;
};

/// Finitely supported weights in [0, 1] on dyadic intervals. Zero weights
/// are not stored.
class CarlesonSequence {
 public:
  CarlesonSequence() = default;
  explicit CarlesonSequence(const std::map<DyadicInterval, Rational>& weights);

  /// Weight 1 on the root only.
  static CarlesonSequence root_one();
  /// Weight 1 on [0, 2^-j) for j = 0..N.
  static CarlesonSequence tower(int N);

  void set(const DyadicInterval& J, const Rational& w);
  Rational weight(const DyadicInterval& J) const;

  const std::map<DyadicInterval, Rational>& weights() const { return weights_; }
  bool empty() const { return weights_.empty(); }
  /// All stored weights equal 1, i.e. the sequence is a collection.
  bool is_binary() const;
  int max_depth() const;

  friend bool operator==(const CarlesonSequence&, const CarlesonSequence&) = default;

 private:
  std::map<DyadicInterval, Rational> weights_;
};

/// (1/|base|) sum over J inside base of alpha_J |J|.
Rational carleson_height(const CarlesonSequence& seq, const DyadicInterval& base = DyadicInterval::root());
/// Supremum of carleson_height over all dyadic intervals.
Rational carleson_constant(const CarlesonSequence& seq);
/// carleson_constant <= 2.
bool is_carleson(const CarlesonSequence& seq);

/// A function on [0,1) constant on the depth-d cells.
class StepFunction {
 public:
  StepFunction(int depth, std::vector<Rational> values);

  int depth() const { return depth_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Rational>& values() const { return values_; }
  DyadicInterval cell(std::size_t i) const { return {depth_, static_cast<std::int64_t>(i)}; }
  const Rational& value(std::size_t i) const { return values_.at(i); }

  /// Measure of {t : value(t) >= lambda}.
  Rational level_set_measure(const Rational& lambda) const;

 private:
  int depth_;
  std::vector<Rational> values_;
};

/// Values of A_alpha 1_E with the measure each one occupies. Sorted by value.
using ValueDistribution = std::map<Rational, Rational>;

/// A_alpha 1_E on the uniform partition at depth max(depth E, depth alpha).
StepFunction sparse_apply(const DyadicSet& E, const CarlesonSequence& seq);
/// Same operator, summarized as value -> measure. Cheaper than sparse_apply
/// at large depth.
ValueDistribution value_distribution(const DyadicSet& E, const CarlesonSequence& seq);
/// V_lambda(E, alpha) = |{A_alpha 1_E >= lambda}|.
Rational level_set_measure(const DyadicSet& E, const CarlesonSequence& seq, const Rational& lambda);
Rational level_set_measure(const ValueDistribution& dist, const Rational& lambda);

/// (E1 / 2) union (E2 / 2 + 1/2).
DyadicSet concat_sets(const DyadicSet& E1, const DyadicSet& E2);
/// Root weight gamma, a moved into the left half and b into the right half.
CarlesonSequence concat_seqs(const CarlesonSequence& a, const CarlesonSequence& b, const Rational& gamma);

/// A pair (E, alpha) with cached measure and height.
class Config {
 public:
  Config();
  Config(DyadicSet set, CarlesonSequence seq);

  /// E = empty, alpha = empty.
  static Config empty() { return {}; }
  /// E = [0,1), alpha = empty.
  static Config full_set() { return Config(DyadicSet::full(), CarlesonSequence()); }

  const DyadicSet& set() const { return set_; }
  const CarlesonSequence& seq() const { return seq_; }
  const Rational& x() const { return x_; }
  const Rational& A() const { return A_; }
  int depth() const;

  /// Computed on first use and cached; safe to call concurrently.
  const ValueDistribution& distribution() const;
  Rational V(const Rational& lambda) const;

  /// Recomputes x and A and compares with the cache.
  bool caches_consistent() const;

 private:
  DyadicSet set_;
  CarlesonSequence seq_;
  Rational x_;
  Rational A_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

Config concat(const Config& c1, const Config& c2, const Rational& gamma);

/// V_{lambda + gamma x}(c1 (+)_gamma c2) == (V_lambda(c1) + V_lambda(c2)) / 2,
/// where x is the measure of the concatenated set.
bool check_dynamics(const Config& c1, const Config& c2, const Rational& gamma, const Rational& lambda);

}  // namespace bellman::dyadic
