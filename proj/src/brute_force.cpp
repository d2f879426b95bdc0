#include "bellman/brute_force.hpp"

#include "bellman/candidate.hpp"
#include "bellman/dyadic.hpp"
#include "bellman/verify.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <unordered_map>

namespace bellman::verify {

namespace {

constexpr std::size_t heap_pos(int j, std::int64_t i) {
  return (std::size_t{1} << j) - 1 + static_cast<std::size_t>(i);
}

// Per-worker table: packed (x, A, v) at scale 2^d -> largest cell count.
using Table = std::unordered_map<std::uint64_t, std::uint32_t>;

std::uint64_t pack(std::uint64_t x2, std::uint64_t a2, std::uint64_t v2) { return (x2 << 42) | (a2 << 21) | v2; }

void record(Table& t, std::uint32_t x2, std::uint32_t a2, std::vector<std::int64_t>& vals) {
  // Each distinct positive value v contributes V_v = #{cells >= v}.
  std::sort(vals.begin(), vals.end(), std::greater<>());
  for (std::size_t i = 0; i < vals.size();) {
    const std::int64_t v = vals[i];
    if (v <= 0) break;
    std::size_t j = i;
    while (j < vals.size() && vals[j] == v) ++j;
    auto& slot = t[pack(x2, a2, static_cast<std::uint64_t>(v))];
    slot = std::max(slot, static_cast<std::uint32_t>(j));
    i = j;
  }
}

// Exhaustive scan of every depth-d set against one sequence.
void scan_sequence(Table& t, int d, const BinarySequence& seq, std::vector<std::uint64_t>& seen) {
  const int n = 1 << d;
  struct Node {
    std::uint32_t cells;
    std::int64_t factor;
  };
  std::vector<Node> nodes;
  for (int j = 0; j <= d; ++j)
    for (std::int64_t i = 0; i < (std::int64_t{1} << j); ++i)
      if (seq.mask >> heap_pos(j, i) & 1) {
        const int w = 1 << (d - j);
        nodes.push_back({((1u << w) - 1) << (static_cast<int>(i) * w), std::int64_t{1} << j});
      }
  std::vector<std::int64_t> vals(static_cast<std::size_t>(n));
  for (std::uint32_t E = 0; E < (1u << n); ++E) {
    std::fill(vals.begin(), vals.end(), 0);
    for (const auto& J : nodes) {
      const std::int64_t add = std::popcount(E & J.cells) * J.factor;
      if (add == 0) continue;
      for (int c = 0; c < n; ++c)
        if (J.cells >> c & 1) vals[static_cast<std::size_t>(c)] += add;
    }
    const auto x2 = static_cast<std::uint32_t>(std::popcount(E));
    seen.push_back(pack(x2, seq.height_scaled, 0));
    record(t, x2, seq.height_scaled, vals);
  }
}

// One random configuration at depth d: a binary Carleson sequence grown
// bottom-up (a root bit is set only if the subtree stays within height 2)
// and a random union of depth-d cells.
void scan_random(Table& t, int d, Sampler& s, std::vector<std::uint64_t>& seen) {
  const std::size_t n_nodes = (std::size_t{1} << (d + 1)) - 1;
  const std::size_t n_cells = std::size_t{1} << d;
  std::vector<std::uint8_t> bit(n_nodes, 0);
  // mass[node] = sum over J inside node of alpha_J 2^(d - depth J).
  std::vector<std::int64_t> mass(n_nodes, 0);
  const std::int64_t weight_p = s.integer(1, 7);
  for (int j = d; j >= 0; --j) {
    for (std::int64_t i = 0; i < (std::int64_t{1} << j); ++i) {
      const std::size_t p = heap_pos(j, i);
      std::int64_t m = j < d ? mass[heap_pos(j + 1, 2 * i)] + mass[heap_pos(j + 1, 2 * i + 1)] : 0;
      const std::int64_t with_root = m + (std::int64_t{1} << (d - j));
      // height = mass 2^j / 2^d <= 2
      if (s.integer(1, 8) <= weight_p && (with_root << j) <= (std::int64_t{2} << d)) {
        bit[p] = 1;
        m = with_root;
      }
      mass[p] = m;
    }
  }
  const std::int64_t cell_p = s.integer(0, 8);
  std::vector<std::uint32_t> prefix(n_cells + 1, 0);
  for (std::size_t c = 0; c < n_cells; ++c) prefix[c + 1] = prefix[c] + (s.integer(1, 8) <= cell_p ? 1u : 0u);

  std::vector<std::int64_t> cur(1, 0);
  for (int j = 0; j <= d; ++j) {
    if (j > 0) {
      std::vector<std::int64_t> next(cur.size() * 2);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = cur[i >> 1];
      cur.swap(next);
    }
    for (std::int64_t i = 0; i < (std::int64_t{1} << j); ++i) {
      if (!bit[heap_pos(j, i)]) continue;
      const auto lo = static_cast<std::size_t>(i) << (d - j);
      const auto hi = static_cast<std::size_t>(i + 1) << (d - j);
      cur[static_cast<std::size_t>(i)] += static_cast<std::int64_t>(prefix[hi] - prefix[lo]) << j;
    }
  }
  const auto x2 = prefix[n_cells];
  const auto a2 = static_cast<std::uint32_t>(mass[0]);
  seen.push_back(pack(x2, a2, 0));
  record(t, x2, a2, cur);
}

Rational scaled(std::uint64_t v, int d) { return Rational(static_cast<std::int64_t>(v)) * Rational::pow2(-d); }

}  // namespace

std::vector<BinarySequence> enumerate_carleson_sequences(int depth) {
  if (depth < 0 || depth > kExhaustiveDepthCap)
    throw DomainError("sequence enumeration supports depth 0.." + std::to_string(kExhaustiveDepthCap));
  // Subtrees of height h, heights scaled by 2^h.
  std::vector<BinarySequence> cur = {{0, 0}, {1, 1}};
  for (int h = 1; h <= depth; ++h) {
    // Relocate a height-(h-1) subtree into the left or right child.
    auto relocate = [h](std::uint64_t mask, bool right) {
      std::uint64_t out = 0;
      for (int j = 0; j < h; ++j)
        for (std::int64_t i = 0; i < (std::int64_t{1} << j); ++i)
          if (mask >> heap_pos(j, i) & 1)
            out |= std::uint64_t{1} << heap_pos(j + 1, i + (right ? (std::int64_t{1} << j) : 0));
      return out;
    };
    std::vector<std::uint64_t> left(cur.size()), right(cur.size());
    for (std::size_t a = 0; a < cur.size(); ++a) {
      left[a] = relocate(cur[a].mask, false);
      right[a] = relocate(cur[a].mask, true);
    }
    const std::uint32_t cap = 2u << h;  // height <= 2 at scale 2^h
    std::vector<BinarySequence> next;
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = 0; b < cur.size(); ++b) {
        const std::uint32_t children = cur[a].height_scaled + cur[b].height_scaled;
        for (std::uint32_t r = 0; r <= 1; ++r) {
          const std::uint32_t height = (r << h) + children;
          if (height <= cap) next.push_back({r | left[a] | right[b], height});
        }
      }
    cur.swap(next);
  }
  std::sort(cur.begin(), cur.end(), [](const auto& p, const auto& q) { return p.mask < q.mask; });
  return cur;
}

std::vector<BinarySequence> enumerate_carleson_sequences_unpruned(int depth) {
  if (depth < 0 || depth > 3) throw DomainError("unpruned enumeration supports depth 0..3");
  const int bits = (1 << (depth + 1)) - 1;
  std::vector<BinarySequence> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    dyadic::CarlesonSequence seq;
    for (int j = 0; j <= depth; ++j)
      for (std::int64_t i = 0; i < (std::int64_t{1} << j); ++i)
        if (mask >> heap_pos(j, i) & 1) seq.set({j, i}, Rational(1));
    if (!dyadic::is_carleson(seq)) continue;
    const Rational h = dyadic::carleson_height(seq) * Rational::pow2(depth);
    out.push_back({mask, static_cast<std::uint32_t>(h.numerator_i64())});
  }
  return out;
}

BruteForceReport brute_force_sup(const BruteForceOptions& opts) {
  const int d = opts.depth;
  if (d < 1) throw DomainError("brute force depth must be at least 1");
  if (!opts.samples && d > kExhaustiveDepthCap)
    throw DomainError("depth " + std::to_string(d) + " exceeds the exhaustive cap of " +
                      std::to_string(kExhaustiveDepthCap) + "; use random sampling instead");
  if (opts.samples && d > kSampleDepthCap)
    throw DomainError("sampling depth is capped at " + std::to_string(kSampleDepthCap));
  const int workers = std::max(1, opts.workers);

  BruteForceReport report;
  report.depth = d;
  report.exhaustive = !opts.samples;
  report.seed = opts.seed;

  std::vector<BinarySequence> seqs;
  std::uint64_t units = 0;
  if (report.exhaustive) {
    seqs = enumerate_carleson_sequences(d);
    units = seqs.size();
    report.sequences = seqs.size();
    report.configs_scanned = seqs.size() << (1 << d);
  } else {
    units = *opts.samples;
    report.sequences = units;
    report.configs_scanned = units;
  }

  std::vector<Table> tables(static_cast<std::size_t>(workers));
  std::vector<std::vector<std::uint64_t>> seen(static_cast<std::size_t>(workers));
  auto work = [&](int w) {
    auto& t = tables[static_cast<std::size_t>(w)];
    auto& sn = seen[static_cast<std::size_t>(w)];
    for (std::uint64_t u = static_cast<std::uint64_t>(w); u < units; u += static_cast<std::uint64_t>(workers)) {
      if (report.exhaustive) {
        scan_sequence(t, d, seqs[u], sn);
      } else {
        Sampler s(opts.seed, u);
        scan_random(t, d, s, sn);
      }
      if (sn.size() > (1u << 16)) {
        std::sort(sn.begin(), sn.end());
        sn.erase(std::unique(sn.begin(), sn.end()), sn.end());
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }

  // Deterministic merge: max is order independent, then sort by key.
  Table merged;
  for (const auto& t : tables)
    for (const auto& [k, v] : t) {
      auto& slot = merged[k];
      slot = std::max(slot, v);
    }
  std::vector<std::uint64_t> points;
  for (auto& sn : seen) points.insert(points.end(), sn.begin(), sn.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (auto p : points) report.points.emplace(scaled(p >> 42, d), scaled((p >> 21) & 0x1FFFFF, d));

  std::vector<std::pair<std::uint64_t, std::uint32_t>> rows(merged.begin(), merged.end());
  std::sort(rows.begin(), rows.end());
  report.table.reserve(rows.size());
  for (const auto& [k, v] : rows) {
    BruteForceEntry e{scaled(k >> 42, d), scaled((k >> 21) & 0x1FFFFF, d), scaled(k & 0x1FFFFF, d),
                      scaled(v, d), Rational(0)};
    e.B = candidate::B_eval(e.x, e.A, e.lambda);
    if (!e.dominated()) report.domination = false;
    report.table.push_back(std::move(e));
  }
  return report;
}

std::optional<Rational> BruteForceReport::max_v(const Rational& x, const Rational& A, const Rational& lambda) const {
  if (!points.count({x, A})) return std::nullopt;
  if (lambda.sign() <= 0) return Rational(1);
  Rational best(0);
  for (const auto& e : table)
    if (e.x == x && e.A == A && e.lambda >= lambda) best = max(best, e.max_v);
  return best;
}

bool BruteForceReport::attained(const Rational& x, const Rational& A, const Rational& lambda) const {
  const auto v = max_v(x, A, lambda);
  return v && *v == candidate::B_eval(x, A, lambda);
}

std::vector<BruteForceEntry> BruteForceReport::violations() const {
  std::vector<BruteForceEntry> out;
  for (const auto& e : table)
    if (!e.dominated()) out.push_back(e);
  return out;
}

}  // namespace bellman::verify
