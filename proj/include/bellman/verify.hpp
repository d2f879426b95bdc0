#pragma once

// Property checks of the candidate B with exact arithmetic. Every check
// draws its inputs from a seeded stream, evaluates a named relation
// lhs (>= or ==) rhs and reports the failures as replayable Violations.

#include "bellman/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace bellman::verify {

struct SampleSpec {
  std::uint64_t seed = 1;
  std::int64_t count = 10000;
  std::vector<Rational> lambda_grid;
  /// Sampled rationals have denominators in [1, denominator_bound].
  std::int64_t denominator_bound = 64;
};

/// Default grid for the concavity check.
std::vector<Rational> default_concavity_grid();
/// i/5 for i = 1..50.
std::vector<Rational> default_slope_grid();

using Witness = std::vector<std::pair<std::string, Rational>>;

struct Violation {
  std::string check;
  Witness witness;
  Rational lhs;
  Rational rhs;
};

struct CheckReport {
  std::string check;
  std::int64_t samples = 0;
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

/// Re-evaluates a violation's relation from its witness alone.
std::pair<Rational, Rational> replay(const Violation& v);

/// True when lhs and rhs satisfy the relation named by `check`.
bool relation_holds(const std::string& check, const Rational& lhs, const Rational& rhs);

/// B(x, A, lambda) = 1 for lambda <= 0.
CheckReport check_obstacle(const SampleSpec& spec);
/// B(midpoint) >= mean of B at two sampled points, per lambda in the grid
/// (count pairs per lambda; empty grid means default_concavity_grid()).
CheckReport check_midpoint_concavity(const SampleSpec& spec);
/// B(x, A+1, lambda+x) >= B(x, A, lambda) with A in [0, 1].
CheckReport check_jump(const SampleSpec& spec);
/// f(x, lambda + x) >= g(x, lambda).
CheckReport check_fJ_ge_g(const SampleSpec& spec);
/// Concavity of f(., lambda) on the grid, the closed-form slopes against
/// the computed ones, and the four slope inequalities for m, k <= 10.
CheckReport check_slopes(const std::vector<Rational>& lambda_grid);
/// g(x, lambda) = f(min(2x, 1), lambda) / 2 for lambda > 1 and
/// g(x, lambda) = B(x, 1, lambda) for lambda <= 1.
CheckReport check_g_consistency(const SampleSpec& spec);
/// The concatenation identity for V on random configuration pairs.
CheckReport check_dynamics_suite(const SampleSpec& spec);
/// B(x, A, .) is non-increasing: B(x, A, lambda) >= B(x, A, lambda + t).
CheckReport check_monotone_lambda(const SampleSpec& spec);

/// Suites accepted by run_suite, "all" included.
const std::vector<std::string>& suite_names();
/// Runs the named suite ("all" runs every suite). Throws DomainError on an
/// unknown name.
std::vector<CheckReport> run_suite(const std::string& name, const SampleSpec& spec);

/// Deterministic sample stream. Only the raw engine output is used, so the
/// stream is identical on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  /// Stream number `index` derived from `seed`.
  Sampler(std::uint64_t seed, std::uint64_t index);

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  /// Rational in [lo, hi] with denominator in [1, den_bound].
  Rational rational(const Rational& lo, const Rational& hi, std::int64_t den_bound);
  bool coin() { return (rng_() >> 63) != 0; }
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace bellman::verify
