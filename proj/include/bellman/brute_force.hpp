#pragma once

// Brute-force lower bound for the true Bellman function: scan binary
// Carleson sequences (constant <= 2) on the intervals of depth <= d and all
// sets E that are unions of depth-d cells, recording for each reachable
// (x, A) and each value lambda taken by A_alpha 1_E the largest V_lambda.

#include "bellman/rational.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace bellman::verify {

/// Largest depth scanned exhaustively.
inline constexpr int kExhaustiveDepthCap = 3;
/// Largest depth accepted in sampling mode.
inline constexpr int kSampleDepthCap = 16;

struct BruteForceOptions {
  int depth = 1;
  /// Unset: exhaustive scan. Set: this many seeded random configurations.
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 1;
  /// Worker threads; results do not depend on this.
  int workers = 1;
};

struct BruteForceEntry {
  Rational x;
  Rational A;
  Rational lambda;
  Rational max_v;
  Rational B;
  bool attained() const { return max_v == B; }
  bool dominated() const { return max_v <= B; }
};

struct BruteForceReport {
  int depth = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t sequences = 0;
  std::uint64_t configs_scanned = 0;
  /// Sorted by (x, A, lambda).
  std::vector<BruteForceEntry> table;
  /// Every (x, A) reached by some scanned configuration.
  std::set<std::pair<Rational, Rational>> points;
  bool domination = true;

  /// Largest V_lambda over the scanned configurations with this (x, A):
  /// 1 for lambda <= 0, 0 if none reach lambda, nullopt if (x, A) was never seen.
  std::optional<Rational> max_v(const Rational& x, const Rational& A, const Rational& lambda) const;
  /// max_v equals B at the point.
  bool attained(const Rational& x, const Rational& A, const Rational& lambda) const;
  std::vector<BruteForceEntry> violations() const;
};

/// Throws DomainError for depth < 1, exhaustive depth above the cap, or
/// sampling depth above kSampleDepthCap.
BruteForceReport brute_force_sup(const BruteForceOptions& opts);

/// One binary sequence on the intervals of depth <= d, as a bitmask over the
/// heap numbering (bit 2^j - 1 + i is interval (j, i)), with its height
/// scaled by 2^d.
struct BinarySequence {
  std::uint64_t mask;
  std::uint32_t height_scaled;
};

/// All binary sequences of depth <= d with Carleson constant <= 2, built by
/// combining valid subtrees so invalid branches are never expanded.
/// d <= kExhaustiveDepthCap.
std::vector<BinarySequence> enumerate_carleson_sequences(int depth);
/// Same set, by filtering all 2^(2^(d+1)-1) masks with the general
/// carleson_constant. Reference for small d only.
std::vector<BinarySequence> enumerate_carleson_sequences_unpruned(int depth);

}  // namespace bellman::verify
