#include "bellman/verify.hpp"

#include "bellman/candidate.hpp"
#include "bellman/dyadic.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace bellman::verify {

using candidate::B_eval;
using candidate::f_eval;
using candidate::f_ext_eval;
using candidate::g_eval;

// ---------------------------------------------------------------- sampling

Sampler::Sampler(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  rng_.seed(seq);
}

std::int64_t Sampler::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("Sampler::integer: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng_());  // full 64-bit range
  return lo + static_cast<std::int64_t>(rng_() % span);
}

Rational Sampler::rational(const Rational& lo, const Rational& hi, std::int64_t den_bound) {
  if (hi < lo) throw DomainError("Sampler::rational: empty range");
  if (den_bound < 1) throw DomainError("Sampler::rational: denominator bound must be positive");
  // Endpoints are where the piecewise formulas switch; hit them often.
  switch (integer(0, 15)) {
    case 0: return lo;
    case 1: return hi;
    default: break;
  }
  for (;;) {
    const std::int64_t q = integer(1, den_bound);
    const Rational qq(q);
    const std::int64_t p_lo = (lo * qq).ceil();
    const std::int64_t p_hi = (hi * qq).floor();
    if (p_lo <= p_hi) return Rational(integer(p_lo, p_hi), q);
  }
}

std::vector<Rational> default_concavity_grid() {
  return {Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2), Rational(5, 2), Rational(7, 2), Rational(9, 2)};
}

std::vector<Rational> default_slope_grid() {
  std::vector<Rational> grid;
  for (int i = 1; i <= 50; ++i) grid.emplace_back(i, 5);
  return grid;
}

// ---------------------------------------------------------------- relations

namespace {

const Rational kSlopeXMin(1, 4096);
constexpr int kSlopeIndexMax = 10;

const Rational& get(const Witness& w, const std::string& name) {
  for (const auto& [k, v] : w)
    if (k == name) return v;
  throw DomainError("witness has no field '" + name + "'");
}

int get_int(const Witness& w, const std::string& name) { return static_cast<int>(get(w, name).numerator_i64()); }

// Random configuration pair for the concatenation identity. Weights come
// from {0, 1/2, 1} so non-binary sequences are exercised too.
dyadic::Config random_config(Sampler& s) {
  const int depth = static_cast<int>(s.integer(0, 4));
  std::vector<bool> cells(std::size_t{1} << depth);
  const std::int64_t density = s.integer(0, 4);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = s.integer(1, 4) <= density;
  dyadic::CarlesonSequence seq;
  const std::int64_t weight_density = s.integer(0, 4);
  for (int d = 0; d <= depth; ++d)
    for (std::int64_t i = 0; i < (std::int64_t{1} << d); ++i)
      if (s.integer(1, 4) <= weight_density) seq.set({d, i}, Rational(s.integer(1, 2), 2));
  return dyadic::Config(dyadic::DyadicSet::from_cells(depth, cells), std::move(seq));
}

std::pair<dyadic::Config, dyadic::Config> dynamics_pair(std::uint64_t seed, std::uint64_t index) {
  Sampler s(seed, index);
  dyadic::Config c1 = random_config(s);
  dyadic::Config c2 = s.integer(0, 3) == 0 ? c1 : random_config(s);
  return {std::move(c1), std::move(c2)};
}

// Slope of f(., lambda) between curves m+1 and m, i.e. on strip m+1.
Rational strip_slope(int m, const Rational& lambda) {
  using candidate::Family;
  const Rational width = candidate::alpha_inv(Family::F, m, lambda) - candidate::alpha_inv(Family::F, m + 1, lambda);
  return Rational::pow2(-(m + 1)) / width;
}

// Closed-form slope on strip m+1 for lambda > 2, chosen by which segments
// of the two bounding curves lambda crosses. Returns false outside the
// regimes the closed forms describe.
bool closed_form_slope(int m, const Rational& lambda, Rational& out) {
  using candidate::Family;
  namespace sl = candidate::slopes;
  if (lambda <= Rational(2) || m < 1 || lambda > Rational(m + 2)) return false;
  const int k = static_cast<int>(lambda.ceil()) - 1;  // k < lambda <= k+1
  const int j0 = candidate::segment_index(Family::F, m, lambda);
  const int j1 = candidate::segment_index(Family::F, m + 1, lambda);
  const int base = m - k;
  if (j0 == base + 3 && j1 == base + 4) {
    out = k == 2 ? sl::a23(m, lambda) : sl::ak(k, m, lambda);
  } else if (j0 == base + 2 && j1 == base + 4) {
    out = k == 2 ? sl::b23(m, lambda) : sl::bk(k, m, lambda);
  } else if (j0 == base + 2 && j1 == base + 3) {
    out = k == 2 ? sl::c23(m, lambda) : sl::ck(k, m, lambda);
  } else {
    return false;
  }
  return true;
}

using Evaluator = std::function<std::pair<Rational, Rational>(const Witness&)>;

struct Relation {
  bool equality;
  Evaluator eval;
};

const std::map<std::string, Relation>& relations() {
  namespace sl = candidate::slopes;
  static const std::map<std::string, Relation> table = {
      {"obstacle",
       {true, [](const Witness& w) { return std::pair{B_eval(get(w, "x"), get(w, "A"), get(w, "lambda")), Rational(1)}; }}},
      {"concavity",
       {false,
        [](const Witness& w) {
          const Rational &x1 = get(w, "x1"), &A1 = get(w, "A1"), &x2 = get(w, "x2"), &A2 = get(w, "A2"),
                         &l = get(w, "lambda");
          return std::pair{B_eval((x1 + x2) / 2, (A1 + A2) / 2, l), (B_eval(x1, A1, l) + B_eval(x2, A2, l)) / 2};
        }}},
      {"jump",
       {false,
        [](const Witness& w) {
          const Rational &x = get(w, "x"), &A = get(w, "A"), &l = get(w, "lambda");
          return std::pair{B_eval(x, A + 1, l + x), B_eval(x, A, l)};
        }}},
      {"fjg",
       {false,
        [](const Witness& w) {
          const Rational &x = get(w, "x"), &l = get(w, "lambda");
          return std::pair{f_eval(x, l + x), g_eval(x, l)};
        }}},
      {"gconsist",
       {true,
        [](const Witness& w) {
          const Rational &x = get(w, "x"), &l = get(w, "lambda");
          const Rational rhs = l > Rational(1) ? f_ext_eval(x * 2, l) / 2 : B_eval(x, Rational(1), l);
          return std::pair{g_eval(x, l), rhs};
        }}},
      {"monotone",
       {false,
        [](const Witness& w) {
          const Rational &x = get(w, "x"), &A = get(w, "A"), &l = get(w, "lambda"), &t = get(w, "t");
          return std::pair{B_eval(x, A, l), B_eval(x, A, l + t)};
        }}},
      {"slopes.concave",
       {false,
        [](const Witness& w) {
          const auto s = candidate::f_slopes(get(w, "lambda"), get(w, "x_min"));
          const auto i = static_cast<std::size_t>(get_int(w, "i"));
          if (i + 1 >= s.size()) throw DomainError("slope index out of range");
          return std::pair{s[i], s[i + 1]};
        }}},
      {"slopes.closed_form",
       {true,
        [](const Witness& w) {
          const int m = get_int(w, "m");
          const Rational& l = get(w, "lambda");
          Rational closed;
          if (!closed_form_slope(m, l, closed)) throw DomainError("no closed-form slope regime");
          return std::pair{strip_slope(m, l), closed};
        }}},
      {"slopes.C23c1",
       {false,
        [](const Witness& w) {
          const int m = get_int(w, "m");
          const Rational& l = get(w, "lambda");
          return std::pair{sl::a23(m + 1, l), sl::b23(m, l)};
        }}},
      {"slopes.C23c2",
       {false,
        [](const Witness& w) {
          const int m = get_int(w, "m");
          const Rational& l = get(w, "lambda");
          return std::pair{sl::b23(m + 1, l), sl::c23(m, l)};
        }}},
      {"slopes.Ckc1",
       {false,
        [](const Witness& w) {
          const int k = get_int(w, "k"), m = get_int(w, "m");
          const Rational& l = get(w, "lambda");
          return std::pair{sl::ak(k, m + 1, l), sl::bk(k, m, l)};
        }}},
      {"slopes.Ckc2",
       {false,
        [](const Witness& w) {
          const int k = get_int(w, "k"), m = get_int(w, "m");
          const Rational& l = get(w, "lambda");
          return std::pair{sl::bk(k, m + 1, l), sl::ck(k, m, l)};
        }}},
      {"dynamics",
       {true,
        [](const Witness& w) {
          const auto seed = static_cast<std::uint64_t>(get(w, "seed").numerator_i64());
          const auto index = static_cast<std::uint64_t>(get(w, "index").numerator_i64());
          const Rational &gamma = get(w, "gamma"), &l = get(w, "lambda");
          const auto [c1, c2] = dynamics_pair(seed, index);
          const dyadic::Config joined = dyadic::concat(c1, c2, gamma);
          return std::pair{joined.V(l + gamma * joined.x()), (c1.V(l) + c2.V(l)) / 2};
        }}},
  };
  return table;
}

const Relation& relation(const std::string& check) {
  const auto& t = relations();
  auto it = t.find(check);
  if (it == t.end()) throw DomainError("unknown check '" + check + "'");
  return it->second;
}

// Evaluates one sample and records a violation if the relation fails.
void run_sample(CheckReport& report, const std::string& check, Witness witness) {
  const auto [lhs, rhs] = relation(check).eval(witness);
  ++report.samples;
  if (!relation_holds(check, lhs, rhs)) report.violations.push_back({check, std::move(witness), lhs, rhs});
}

}  // namespace

bool relation_holds(const std::string& check, const Rational& lhs, const Rational& rhs) {
  return relation(check).equality ? lhs == rhs : lhs >= rhs;
}

std::pair<Rational, Rational> replay(const Violation& v) { return relation(v.check).eval(v.witness); }

// ---------------------------------------------------------------- checks

CheckReport check_obstacle(const SampleSpec& spec) {
  CheckReport r{"obstacle", 0, {}};
  Sampler s(spec.seed);
  const auto b = spec.denominator_bound;
  for (std::int64_t i = 0; i < spec.count; ++i) {
    run_sample(r, "obstacle",
               {{"x", s.rational(0, 1, b)}, {"A", s.rational(0, 2, b)}, {"lambda", s.rational(-10, 0, b)}});
  }
  return r;
}

CheckReport check_midpoint_concavity(const SampleSpec& spec) {
  CheckReport r{"concavity", 0, {}};
  const auto grid = spec.lambda_grid.empty() ? default_concavity_grid() : spec.lambda_grid;
  const auto b = spec.denominator_bound;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Sampler s(spec.seed, g);
    for (std::int64_t i = 0; i < spec.count; ++i) {
      Rational x1 = s.rational(0, 1, b), A1 = s.rational(0, 2, b);
      Rational x2 = s.rational(0, 1, b), A2 = s.rational(0, 2, b);
      // Pairs sharing a coordinate probe the one-dimensional sections.
      switch (s.integer(0, 3)) {
        case 0: x2 = x1; break;
        case 1: A2 = A1; break;
        default: break;
      }
      run_sample(r, "concavity", {{"x1", x1}, {"A1", A1}, {"x2", x2}, {"A2", A2}, {"lambda", grid[g]}});
    }
  }
  return r;
}

CheckReport check_jump(const SampleSpec& spec) {
  CheckReport r{"jump", 0, {}};
  Sampler s(spec.seed);
  const auto b = spec.denominator_bound;
  for (std::int64_t i = 0; i < spec.count; ++i)
    run_sample(r, "jump", {{"x", s.rational(0, 1, b)}, {"A", s.rational(0, 1, b)}, {"lambda", s.rational(-1, 10, b)}});
  return r;
}

CheckReport check_fJ_ge_g(const SampleSpec& spec) {
  CheckReport r{"fjg", 0, {}};
  Sampler s(spec.seed);
  const auto b = spec.denominator_bound;
  for (std::int64_t i = 0; i < spec.count; ++i) {
    Rational lambda;
    do lambda = s.rational(0, 10, b);
    while (lambda.sign() == 0);
    run_sample(r, "fjg", {{"x", s.rational(0, 1, b)}, {"lambda", lambda}});
  }
  return r;
}

CheckReport check_g_consistency(const SampleSpec& spec) {
  CheckReport r{"gconsist", 0, {}};
  Sampler s(spec.seed);
  const auto b = spec.denominator_bound;
  for (std::int64_t i = 0; i < spec.count; ++i) {
    Rational lambda;
    do lambda = s.rational(0, 10, b);
    while (lambda.sign() == 0);
    run_sample(r, "gconsist", {{"x", s.rational(0, 1, b)}, {"lambda", lambda}});
  }
  return r;
}

CheckReport check_monotone_lambda(const SampleSpec& spec) {
  CheckReport r{"monotone", 0, {}};
  Sampler s(spec.seed);
  const auto b = spec.denominator_bound;
  for (std::int64_t i = 0; i < spec.count; ++i)
    run_sample(r, "monotone",
               {{"x", s.rational(0, 1, b)},
                {"A", s.rational(0, 2, b)},
                {"lambda", s.rational(-1, 10, b)},
                {"t", s.rational(0, 2, b)}});
  return r;
}

CheckReport check_slopes(const std::vector<Rational>& lambda_grid) {
  CheckReport r{"slopes", 0, {}};
  for (const auto& lambda : lambda_grid) {
    if (lambda.sign() <= 0) throw DomainError("check_slopes: lambda must be positive");
    const auto s = candidate::f_slopes(lambda, kSlopeXMin);
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      run_sample(r, "slopes.concave",
                 {{"lambda", lambda}, {"x_min", kSlopeXMin}, {"i", Rational(static_cast<std::int64_t>(i))}});
    for (int m = 1; m <= kSlopeIndexMax; ++m) {
      Rational closed;
      if (closed_form_slope(m, lambda, closed))
        run_sample(r, "slopes.closed_form", {{"m", Rational(m)}, {"lambda", lambda}});
    }
  }

  // The four inequalities, at the right end and eight interior points of
  // each stated lambda range.
  auto sweep = [&](const std::string& check, const Rational& lo, const Rational& hi, Witness base) {
    for (int i = 1; i <= 8; ++i) {
      Witness w = base;
      w.emplace_back("lambda", lo + (hi - lo) * Rational(i, 8));
      run_sample(r, check, std::move(w));
    }
  };
  using candidate::lambda_km;
  for (int m = 1; m <= kSlopeIndexMax; ++m) {
    sweep("slopes.C23c1", lambda_km(m, m), lambda_km(m + 1, m + 1), {{"m", Rational(m)}});
    sweep("slopes.C23c2", lambda_km(m + 1, m + 1), lambda_km(m + 2, m + 2), {{"m", Rational(m)}});
  }
  for (int k = 3; k <= kSlopeIndexMax; ++k) {
    for (int m = k - 1; m <= kSlopeIndexMax; ++m) {
      const Witness base{{"k", Rational(k)}, {"m", Rational(m)}};
      sweep("slopes.Ckc1", lambda_km(m - k + 2, m), lambda_km(m - k + 3, m + 1), base);
      sweep("slopes.Ckc2", lambda_km(m - k + 3, m + 1), lambda_km(m - k + 4, m + 2), base);
    }
  }
  return r;
}

CheckReport check_dynamics_suite(const SampleSpec& spec) {
  CheckReport r{"dynamics", 0, {}};
  const Rational gammas[] = {Rational(0), Rational(1, 2), Rational(1)};
  for (std::int64_t i = 0; i < spec.count; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    const auto [c1, c2] = dynamics_pair(spec.seed, index);
    // Thresholds drawn from the configs' own values hit the jumps of V.
    Sampler s(spec.seed, index + (std::uint64_t{1} << 40));
    const Rational& gamma = gammas[s.integer(0, 2)];
    Rational lambda;
    const auto& dist = s.coin() ? c1.distribution() : c2.distribution();
    if (s.coin() && !dist.empty()) {
      auto it = dist.begin();
      std::advance(it, s.integer(0, static_cast<std::int64_t>(dist.size()) - 1));
      lambda = it->first;
    } else {
      lambda = s.rational(-1, 4, spec.denominator_bound);
    }
    run_sample(r, "dynamics",
               {{"seed", Rational(static_cast<std::int64_t>(spec.seed))},
                {"index", Rational(i)},
                {"gamma", gamma},
                {"lambda", lambda}});
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"obstacle", "concavity", "jump",     "fjg",
                                                 "slopes",   "gconsist",  "dynamics", "monotone", "all"};
  return names;
}

std::vector<CheckReport> run_suite(const std::string& name, const SampleSpec& spec) {
  const std::map<std::string, std::function<CheckReport()>> suites = {
      {"obstacle", [&] { return check_obstacle(spec); }},
      {"concavity", [&] { return check_midpoint_concavity(spec); }},
      {"jump", [&] { return check_jump(spec); }},
      {"fjg", [&] { return check_fJ_ge_g(spec); }},
      {"slopes",
       [&] { return check_slopes(spec.lambda_grid.empty() ? default_slope_grid() : spec.lambda_grid); }},
      {"gconsist", [&] { return check_g_consistency(spec); }},
      {"dynamics", [&] { return check_dynamics_suite(spec); }},
      {"monotone", [&] { return check_monotone_lambda(spec); }},
  };
  if (name == "all") {
    std::vector<CheckReport> out;
    for (const auto& n : suite_names())
      if (n != "all") out.push_back(suites.at(n)());
    return out;
  }
  auto it = suites.find(name);
  if (it == suites.end()) throw DomainError("unknown suite '" + name + "'");
  return {it->second()};
}

}  // namespace bellman::verify
