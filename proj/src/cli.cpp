#include "bellman/cli.hpp"

#include "bellman/brute_force.hpp"
#include "bellman/candidate.hpp"
#include "bellman/extremal.hpp"
#include "bellman/json_io.hpp"
#include "bellman/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>

namespace bellman::cli {

namespace {

// Raised for bad input detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& s, const char* what) {
  try {
    return Rational::parse(s);
  } catch (const DomainError&) {
    throw UsageError(std::string("cannot parse ") + what + " '" + s + "' as a rational (expected p/q)");
  }
}

int workers_from_env() {
  const char* v = std::getenv(kWorkersEnv);
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 256) throw UsageError(std::string(kWorkersEnv) + " must be an integer in 1..256");
  return static_cast<int>(n);
}

struct EvalArgs {
  std::string which = "B";
  std::vector<std::string> values;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (a.which == "B") {
    if (a.values.size() != 3) throw UsageError("eval --which B takes x A lambda");
    const auto r = candidate::B_evaluate(parse_rational(a.values[0], "x"), parse_rational(a.values[1], "A"),
                                         parse_rational(a.values[2], "lambda"));
    out << r.value << " (" << r.region.to_string() << ")\n";
    return kExitOk;
  }
  if (a.values.size() != 2) throw UsageError("eval --which " + a.which + " takes x lambda");
  const Rational x = parse_rational(a.values[0], "x");
  const Rational lambda = parse_rational(a.values[1], "lambda");
  const auto r = a.which == "f" ? candidate::f_locate(x, lambda) : candidate::g_locate(x, lambda);
  out << r.value << " (" << r.where.to_string() << ")\n";
  return kExitOk;
}

struct CurvesArgs {
  int m_max = 0;
  std::string family = "F";
  std::string format = "csv";
};

int cmd_curves(const CurvesArgs& a, std::ostream& out) {
  const auto fam = a.family == "F" ? candidate::Family::F : candidate::Family::G;
  std::vector<candidate::Curve> curves;
  for (int m = 0; m <= a.m_max; ++m) curves.push_back(candidate::make_curve(fam, m));
  if (a.format == "csv") {
    out << io::curves_csv(curves);
  } else {
    io::json arr = io::json::array();
    for (const auto& c : curves) arr.push_back(io::to_json(c));
    out << arr.dump(2) << '\n';
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 1;
  std::int64_t count = 10000;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto& names = verify::suite_names();
  if (std::find(names.begin(), names.end(), a.suite) == names.end())
    throw UsageError("unknown suite '" + a.suite + "'");
  if (a.count < 0) throw UsageError("--count must be nonnegative");
  verify::SampleSpec spec;
  spec.seed = a.seed;
  spec.count = a.count;
  const auto reports = verify::run_suite(a.suite, spec);
  bool passed = true;
  io::json arr = io::json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed();
    arr.push_back(io::to_json(r));
  }
  out << io::json{{"suite", a.suite}, {"seed", a.seed}, {"count", a.count}, {"passed", passed}, {"reports", arr}}.dump(2)
      << '\n';
  return passed ? kExitOk : kExitViolation;
}

struct BruteArgs {
  int depth = 1;
  std::uint64_t samples = 0;
  bool sampled = false;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string output;
};

int cmd_brute(const BruteArgs& a, std::ostream& out, std::ostream& err) {
  verify::BruteForceOptions opts;
  opts.depth = a.depth;
  if (a.sampled) opts.samples = a.samples;
  opts.seed = a.seed;
  opts.workers = workers_from_env();
  verify::BruteForceReport report;
  try {
    report = verify::brute_force_sup(opts);
  } catch (const DomainError& e) {
    throw UsageError(std::string(e.what()) + (a.sampled ? "" : " (pass --sample N)"));
  }
  const std::string body = a.format == "csv" ? io::brute_force_csv(report) : io::to_json(report).dump(2) + "\n";
  if (a.output.empty()) {
    out << body;
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + a.output + "'");
    f << body;
  }
  if (!report.domination) err << "domination violated at " << report.violations().size() << " entries\n";
  return report.domination ? kExitOk : kExitViolation;
}

int emit_attainment(const extremal::Recipe& recipe, const extremal::Attainment& att, const dyadic::Config& c,
                    io::json extra, std::ostream& out) {
  io::json j = {{"recipe", recipe.to_string()},
                {"x", c.x().to_string()},
                {"A", c.A().to_string()},
                {"config", io::to_json(c)},
                {"attainment", io::to_json(att)}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  out << j.dump(2) << '\n';
  return att.attained() ? kExitOk : kExitViolation;
}

int cmd_extremize(int m, int k, std::ostream& out) {
  if (m < 0 || k < 0 || k > m) throw UsageError("extremize requires 0 <= k <= m");
  const auto recipe = extremal::gamma_vertex_recipe(m, k);
  const auto c = extremal::interpret(recipe);
  const auto att = extremal::check_attainment(c, extremal::gamma_vertex_target(m, k));
  return emit_attainment(recipe, att, c, io::json::object(), out);
}

int cmd_corollary(int n, int N, std::ostream& out) {
  if (n < 0 || N < 3) throw UsageError("corollary requires n >= 0 and N >= 3");
  const auto recipe = extremal::gamma_vertex_recipe(N + n - 3, n);
  const auto c = extremal::interpret(recipe);
  const auto att = extremal::check_attainment(c, extremal::corollary_target(n, N));
  const Rational bound = candidate::corollary_bound(n, N);
  const int rc = emit_attainment(recipe, att, c, {{"bound", bound.to_string()}, {"bound_attained", att.achieved == bound}},
                                 out);
  return rc == kExitOk && att.achieved == bound ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact evaluation and verification of a dyadic Bellman function"};
  app.name("bellman");
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate B(x,A,lambda), f(x,lambda) or g(x,lambda)");
  eval->add_option("--which", eval_args.which, "Function to evaluate")->check(CLI::IsMember({"B", "f", "g"}));
  eval->add_option("values", eval_args.values, "x A lambda for B; x lambda for f and g")->required();

  CurvesArgs curves_args;
  auto* curves = app.add_subcommand("curves", "Vertices of the level curves for m = 0..m_max");
  curves->add_option("m_max", curves_args.m_max, "Largest curve index")->required()->check(CLI::NonNegativeNumber);
  curves->add_option("--family", curves_args.family, "Curve family")->check(CLI::IsMember({"F", "G"}));
  curves->add_option("--format", curves_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Run a property suite");
  ver->add_option("suite", verify_args.suite, "obstacle|concavity|jump|fjg|slopes|gconsist|dynamics|monotone|all")
      ->required();
  ver->add_option("--seed", verify_args.seed, "Sample seed");
  ver->add_option("--count", verify_args.count, "Samples per check");

  BruteArgs brute_args;
  auto* brute = app.add_subcommand("brute", "Brute-force the supremum at a fixed depth");
  brute->add_option("depth", brute_args.depth, "Tree depth")->required()->check(CLI::PositiveNumber);
  auto* sample_opt = brute->add_option("--sample", brute_args.samples, "Random configurations instead of exhaustive");
  brute->add_option("--seed", brute_args.seed, "Sampling seed");
  brute->add_option("--format", brute_args.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  brute->add_option("--output", brute_args.output, "Write the report here instead of stdout");

  int ext_m = 0, ext_k = 0;
  auto* ext = app.add_subcommand("extremize", "Build the extremizer for vertex F_k^m");
  ext->add_option("m", ext_m)->required();
  ext->add_option("k", ext_k)->required();

  int cor_n = 0, cor_N = 0;
  auto* cor = app.add_subcommand("corollary", "Build the configuration attaining the weak-type bound");
  cor->add_option("n", cor_n)->required();
  cor->add_option("N", cor_N)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_args, out);
    if (*curves) return cmd_curves(curves_args, out);
    if (*ver) return cmd_verify(verify_args, out);
    if (*brute) {
      brute_args.sampled = sample_opt->count() > 0;
      return cmd_brute(brute_args, out, err);
    }
    if (*ext) return cmd_extremize(ext_m, ext_k, out);
    if (*cor) return cmd_corollary(cor_n, cor_N, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace bellman::cli
