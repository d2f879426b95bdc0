#include "bellman/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <unordered_map>

namespace bellman::dyadic {

// ---------------------------------------------------------------- intervals

DyadicInterval::DyadicInterval(int d, std::int64_t i) : depth(d), index(i) {
  if (d < 0 || d > kMaxDepth) throw DomainError("dyadic depth out of range: " + std::to_string(d));
  if (i < 0 || i >= (std::int64_t{1} << d))
    throw DomainError("dyadic index " + std::to_string(i) + " out of range at depth " + std::to_string(d));
}

Rational DyadicInterval::left() const { return Rational(index) * Rational::pow2(-depth); }
Rational DyadicInterval::right() const { return Rational(index + 1) * Rational::pow2(-depth); }

DyadicInterval DyadicInterval::parent() const {
  if (depth == 0) throw DomainError("the root interval has no parent");
  return {depth - 1, index >> 1};
}

DyadicInterval DyadicInterval::left_child() const { return {depth + 1, index << 1}; }
DyadicInterval DyadicInterval::right_child() const { return {depth + 1, (index << 1) | 1}; }

DyadicInterval DyadicInterval::sibling() const {
  if (depth == 0) throw DomainError("the root interval has no sibling");
  return {depth, index ^ 1};
}

bool DyadicInterval::contains(const DyadicInterval& other) const {
  return other.depth >= depth && (other.index >> (other.depth - depth)) == index;
}

std::strong_ordering operator<=>(const DyadicInterval& a, const DyadicInterval& b) {
  const int D = std::max(a.depth, b.depth);
  const std::int64_t la = a.index << (D - a.depth);
  const std::int64_t lb = b.index << (D - b.depth);
  if (la != lb) return la <=> lb;
  return a.depth <=> b.depth;
}

// ---------------------------------------------------------------- sets

DyadicSet::DyadicSet(std::vector<DyadicInterval> intervals) {
  std::sort(intervals.begin(), intervals.end());
  intervals.erase(std::unique(intervals.begin(), intervals.end()), intervals.end());

  // Drop intervals covered by an earlier (hence ancestor) interval.
  std::set<DyadicInterval> kept;
  const DyadicInterval* last = nullptr;
  for (const auto& J : intervals) {
    if (last && last->contains(J)) continue;
    last = &J;
    kept.insert(J);
  }

  // Merge complete sibling pairs, deepest first, so parents can merge again.
  int max_d = 0;
  for (const auto& J : kept) max_d = std::max(max_d, J.depth);
  for (int d = max_d; d >= 1; --d) {
    std::vector<DyadicInterval> at_depth;
    for (const auto& J : kept)
      if (J.depth == d && (J.index & 1) == 0) at_depth.push_back(J);
    for (const auto& J : at_depth) {
      const DyadicInterval sib = J.sibling();
      if (kept.count(sib)) {
        kept.erase(J);
        kept.erase(sib);
        kept.insert(J.parent());
      }
    }
  }
  intervals_.assign(kept.begin(), kept.end());
}

DyadicSet DyadicSet::left_packed(const Rational& x) {
  if (x.sign() < 0 || x > Rational(1)) throw DomainError("left_packed: measure outside [0,1]: " + x.to_string());
  if (!x.is_dyadic()) throw DomainError("left_packed: measure is not dyadic: " + x.to_string());
  const int e = x.dyadic_exponent();
  if (e > kMaxDepth) throw DomainError("left_packed: measure too fine: " + x.to_string());
  if (x == Rational(1)) return full();
  const std::int64_t p = x.numerator_i64();
  std::vector<DyadicInterval> out;
  std::int64_t left = 0;  // in units of 2^-e
  for (int j = 1; j <= e; ++j) {
    const std::int64_t len = std::int64_t{1} << (e - j);
    if (p & len) {
      out.emplace_back(j, left >> (e - j));
      left += len;
    }
  }
  return DyadicSet(std::move(out));
}

DyadicSet DyadicSet::from_cells(int depth, const std::vector<bool>& cells) {
  if (depth < 0 || depth > kMaxCellDepth) throw DomainError("from_cells: depth out of range");
  if (cells.size() != (std::size_t{1} << depth)) throw DomainError("from_cells: expected 2^depth cells");
  std::vector<DyadicInterval> out;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i]) out.emplace_back(depth, static_cast<std::int64_t>(i));
  return DyadicSet(std::move(out));
}

Rational DyadicSet::measure() const {
  Rational m(0);
  for (const auto& J : intervals_) m += J.measure();
  return m;
}

int DyadicSet::max_depth() const {
  int d = 0;
  for (const auto& J : intervals_) d = std::max(d, J.depth);
  return d;
}

std::vector<bool> DyadicSet::cells(int depth) const {
  if (depth < max_depth() || depth > kMaxCellDepth) throw DomainError("cells: depth out of range");
  std::vector<bool> out(std::size_t{1} << depth, false);
  for (const auto& J : intervals_) {
    const int shift = depth - J.depth;
    const auto lo = static_cast<std::size_t>(J.index) << shift;
    const auto hi = static_cast<std::size_t>(J.index + 1) << shift;
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi), true);
  }
  return out;
}

// ---------------------------------------------------------------- sequences

CarlesonSequence::CarlesonSequence(const std::map<DyadicInterval, Rational>& weights) {
  for (const auto& [J, w] : weights) set(J, w);
}

CarlesonSequence CarlesonSequence::root_one() {
  CarlesonSequence s;
  s.set(DyadicInterval::root(), Rational(1));
  return s;
}

CarlesonSequence CarlesonSequence::tower(int N) {
  if (N < 0) throw DomainError("tower: N must be nonnegative");
  CarlesonSequence s;
  for (int j = 0; j <= N; ++j) s.set({j, 0}, Rational(1));
  return s;
}

void CarlesonSequence::set(const DyadicInterval& J, const Rational& w) {
  if (w.sign() < 0 || w > Rational(1)) throw DomainError("Carleson weight outside [0,1]: " + w.to_string());
  if (w.sign() == 0)
    weights_.erase(J);
  else
    weights_[J] = w;
}

Rational CarlesonSequence::weight(const DyadicInterval& J) const {
  auto it = weights_.find(J);
  return it == weights_.end() ? Rational(0) : it->second;
}

bool CarlesonSequence::is_binary() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const auto& kv) { return kv.second == Rational(1); });
}

int CarlesonSequence::max_depth() const {
  int d = 0;
  for (const auto& kv : weights_) d = std::max(d, kv.first.depth);
  return d;
}

Rational carleson_height(const CarlesonSequence& seq, const DyadicInterval& base) {
  Rational sum(0);
  for (const auto& [J, w] : seq.weights())
    if (base.contains(J)) sum += w * J.measure();
  return sum * Rational::pow2(base.depth);
}

Rational carleson_constant(const CarlesonSequence& seq) {
  if (seq.empty()) return Rational(0);
  // Only the support and its ancestors have nonzero height. Accumulate
  // alpha_J |J| upwards one level at a time.
  const int max_d = seq.max_depth();
  std::vector<std::unordered_map<std::int64_t, Rational>> level(static_cast<std::size_t>(max_d) + 1);
  for (const auto& [J, w] : seq.weights()) level[static_cast<std::size_t>(J.depth)][J.index] += w * J.measure();
  Rational best(0);
  for (int d = max_d; d >= 0; --d) {
    for (const auto& [i, total] : level[static_cast<std::size_t>(d)]) {
      best = max(best, total * Rational::pow2(d));
      if (d > 0) level[static_cast<std::size_t>(d) - 1][i >> 1] += total;
    }
  }
  return best;
}

bool is_carleson(const CarlesonSequence& seq) { return carleson_constant(seq) <= Rational(2); }

// ---------------------------------------------------------------- operator

StepFunction::StepFunction(int depth, std::vector<Rational> values) : depth_(depth), values_(std::move(values)) {
  if (depth < 0 || depth > kMaxCellDepth) throw DomainError("step function depth out of range");
  if (values_.size() != (std::size_t{1} << depth)) throw DomainError("step function needs 2^depth values");
}

Rational StepFunction::level_set_measure(const Rational& lambda) const {
  std::int64_t count = 0;
  for (const auto& v : values_)
    if (v >= lambda) ++count;
  return Rational(count) * Rational::pow2(-depth_);
}

namespace {

// Cell values of A_alpha 1_E at depth N. If every weight is dyadic and the
// magnitudes fit, values are returned scaled by 2^shift as int64;
// otherwise as exact rationals.
struct Kernel {
  int depth = 0;
  int shift = 0;
  bool scaled = false;
  std::vector<std::int64_t> ints;
  std::vector<Rational> rats;
};

int bit_length(std::uint64_t v) { return static_cast<int>(std::bit_width(v)); }

Kernel compute_kernel(const DyadicSet& E, const CarlesonSequence& seq) {
  Kernel k;
  const int N = std::max(E.max_depth(), seq.max_depth());
  if (N > kMaxCellDepth) throw DomainError("configuration too deep to evaluate: depth " + std::to_string(N));
  k.depth = N;
  const std::size_t n_cells = std::size_t{1} << N;

  // prefix[c] = number of E cells before cell c.
  const auto cells = E.cells(N);
  std::vector<std::uint32_t> prefix(n_cells + 1, 0);
  for (std::size_t c = 0; c < n_cells; ++c) prefix[c + 1] = prefix[c] + (cells[c] ? 1u : 0u);
  auto count_in = [&](const DyadicInterval& J) -> std::int64_t {
    const int s = N - J.depth;
    const auto lo = static_cast<std::size_t>(J.index) << s;
    const auto hi = static_cast<std::size_t>(J.index + 1) << s;
    return static_cast<std::int64_t>(prefix[hi] - prefix[lo]);
  };

  std::vector<std::vector<std::pair<DyadicInterval, Rational>>> by_depth(static_cast<std::size_t>(N) + 1);
  int e = 0;
  bool all_dyadic = true;
  for (const auto& [J, w] : seq.weights()) {
    by_depth[static_cast<std::size_t>(J.depth)].emplace_back(J, w);
    if (w.is_dyadic())
      e = std::max(e, w.dyadic_exponent());
    else
      all_dyadic = false;
  }

  // cell value = sum over J containing the cell of w_J count_J 2^(d_J - N).
  // Scaled by 2^(N+e) each term is (w_J 2^e) count_J 2^d_J <= 2^(e+2N).
  k.scaled = all_dyadic && 2 * N + e + bit_length(static_cast<std::uint64_t>(N) + 1) <= 62;
  if (k.scaled) {
    k.shift = N + e;
    std::vector<std::int64_t> cur(1, 0);
    for (int d = 0; d <= N; ++d) {
      if (d > 0) {
        std::vector<std::int64_t> next(cur.size() * 2);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = cur[i >> 1];
        cur.swap(next);
      }
      for (const auto& [J, w] : by_depth[static_cast<std::size_t>(d)]) {
        const std::int64_t w_scaled = w.numerator_i64() << (e - w.dyadic_exponent());
        cur[static_cast<std::size_t>(J.index)] += w_scaled * count_in(J) * (std::int64_t{1} << d);
      }
    }
    k.ints = std::move(cur);
  } else {
    std::vector<Rational> cur(1, Rational(0));
    for (int d = 0; d <= N; ++d) {
      if (d > 0) {
        std::vector<Rational> next(cur.size() * 2);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = cur[i >> 1];
        cur.swap(next);
      }
      for (const auto& [J, w] : by_depth[static_cast<std::size_t>(d)])
        cur[static_cast<std::size_t>(J.index)] += w * Rational(count_in(J)) * Rational::pow2(d - N);
    }
    k.rats = std::move(cur);
  }
  return k;
}

}  // namespace

StepFunction sparse_apply(const DyadicSet& E, const CarlesonSequence& seq) {
  Kernel k = compute_kernel(E, seq);
  if (!k.scaled) return StepFunction(k.depth, std::move(k.rats));
  std::vector<Rational> values;
  values.reserve(k.ints.size());
  const Rational unit = Rational::pow2(-k.shift);
  for (auto v : k.ints) values.push_back(Rational(v) * unit);
  return StepFunction(k.depth, std::move(values));
}

ValueDistribution value_distribution(const DyadicSet& E, const CarlesonSequence& seq) {
  Kernel k = compute_kernel(E, seq);
  ValueDistribution dist;
  const Rational cell = Rational::pow2(-k.depth);
  if (k.scaled) {
    std::sort(k.ints.begin(), k.ints.end());
    const Rational unit = Rational::pow2(-k.shift);
    for (std::size_t i = 0; i < k.ints.size();) {
      std::size_t j = i;
      while (j < k.ints.size() && k.ints[j] == k.ints[i]) ++j;
      dist.emplace(Rational(k.ints[i]) * unit, Rational(static_cast<std::int64_t>(j - i)) * cell);
      i = j;
    }
  } else {
    for (const auto& v : k.rats) dist[v] += cell;
  }
  return dist;
}

Rational level_set_measure(const ValueDistribution& dist, const Rational& lambda) {
  if (lambda.sign() <= 0) return Rational(1);
  Rational m(0);
  for (auto it = dist.lower_bound(lambda); it != dist.end(); ++it) m += it->second;
  return m;
}

Rational level_set_measure(const DyadicSet& E, const CarlesonSequence& seq, const Rational& lambda) {
  return level_set_measure(value_distribution(E, seq), lambda);
}

// ---------------------------------------------------------------- concatenation

namespace {

DyadicInterval into_half(const DyadicInterval& J, bool right) {
  return {J.depth + 1, J.index + (right ? (std::int64_t{1} << J.depth) : 0)};
}

}  // namespace

DyadicSet concat_sets(const DyadicSet& E1, const DyadicSet& E2) {
  std::vector<DyadicInterval> out;
  out.reserve(E1.intervals().size() + E2.intervals().size());
  for (const auto& J : E1.intervals()) out.push_back(into_half(J, false));
  for (const auto& J : E2.intervals()) out.push_back(into_half(J, true));
  return DyadicSet(std::move(out));
}

CarlesonSequence concat_seqs(const CarlesonSequence& a, const CarlesonSequence& b, const Rational& gamma) {
  if (gamma.sign() < 0 || gamma > Rational(1)) throw DomainError("concatenation weight outside [0,1]: " + gamma.to_string());
  std::map<DyadicInterval, Rational> w;
  for (const auto& [J, v] : a.weights()) w.emplace_hint(w.end(), into_half(J, false), v);
  for (const auto& [J, v] : b.weights()) w.emplace_hint(w.end(), into_half(J, true), v);
  w.emplace(DyadicInterval::root(), gamma);
  return CarlesonSequence(w);
}

// ---------------------------------------------------------------- configs

struct Config::Cache {
  std::once_flag once;
  ValueDistribution dist;
};

Config::Config() : cache_(std::make_shared<Cache>()) {}

Config::Config(DyadicSet set, CarlesonSequence seq)
    : set_(std::move(set)),
      seq_(std::move(seq)),
      x_(set_.measure()),
      A_(carleson_height(seq_)),
      cache_(std::make_shared<Cache>()) {}

int Config::depth() const { return std::max(set_.max_depth(), seq_.max_depth()); }

const ValueDistribution& Config::distribution() const {
  std::call_once(cache_->once, [this] { cache_->dist = value_distribution(set_, seq_); });
  return cache_->dist;
}

Rational Config::V(const Rational& lambda) const { return level_set_measure(distribution(), lambda); }

bool Config::caches_consistent() const { return x_ == set_.measure() && A_ == carleson_height(seq_); }

Config concat(const Config& c1, const Config& c2, const Rational& gamma) {
  return Config(concat_sets(c1.set(), c2.set()), concat_seqs(c1.seq(), c2.seq(), gamma));
}

bool check_dynamics(const Config& c1, const Config& c2, const Rational& gamma, const Rational& lambda) {
  const Config joined = concat(c1, c2, gamma);
  return joined.V(lambda + gamma * joined.x()) == (c1.V(lambda) + c2.V(lambda)) / 2;
}

}  // namespace bellman::dyadic
