#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "lamcount/counting.hpp"
#include "lamcount/experiments.hpp"
#include "lamcount/ranking.hpp"
#include "lamcount/sampling.hpp"
#include "lamcount/term.hpp"
#include "lamcount/typecheck.hpp"

namespace lamcount::cli {

namespace {

// Rejected flag combinations and malformed arguments found after CLI11 has
// accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  Size size = 0;
  Size free_vars = 0;
  std::string family = "terms";
  bool nf = false;
  std::string rank;
  std::string style = "unicode";
  std::string format = "text";
  std::vector<std::string> terms;
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  bool typable = false;
  std::uint64_t max_attempts = 1'000'000;
  bool table = false;
  bool polynomial = false;
  // experiment
  std::string kind;
  std::string sizes;
  std::uint64_t samples = 1000;
  std::uint64_t segments = 1;
  std::string mode = "montecarlo";
  std::uint64_t cap = 100'000'000;
  unsigned threads = 1;
  // validate
  Size n_max = 12;
  Size m_max = 6;
  Size bijection_n = 7;
  Size bijection_m = 2;
  Size nf_n = 8;
};

TextStyle text_style(const Options& o) {
  return o.style == "ascii" ? TextStyle::Ascii : TextStyle::Unicode;
}

TypeStyle type_style(const Options& o) {
  return o.style == "ascii" ? TypeStyle::Ascii : TypeStyle::Unicode;
}

Family selected_family(const Options& o) { return o.nf ? Family::Nf : Family::Terms; }

BigInt parse_big(const std::string& text, const char* what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw UsageError(std::string(what) + " must be a non-negative decimal integer, got '" + text + "'");
  }
  return BigInt(text);
}

void print_term_line(const Term& t, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << term_to_json(t).dump() << '\n';
  } else {
    out << print_term(t, text_style(o)) << '\n';
  }
}

// Terms from positional arguments, or one per non-blank stdin line.
std::vector<Term> read_terms(const Options& o, std::istream& in) {
  std::vector<std::string> sources = o.terms;
  if (sources.empty()) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) sources.push_back(line);
    }
  }
  std::vector<Term> terms;
  terms.reserve(sources.size());
  for (const auto& s : sources) terms.push_back(parse_term_any(s));
  return terms;
}

std::vector<Size> parse_sizes(const std::string& text) {
  // "a:b:step", "a:b", or "a,b,c"
  std::vector<Size> sizes;
  auto to_size = [&](const std::string& s) -> Size {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw UsageError("bad size list '" + text + "'");
    }
    return static_cast<Size>(std::stoull(s));
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("bad size range '" + text + "'");
    const Size lo = to_size(parts[0]);
    const Size hi = to_size(parts[1]);
    const Size step = parts.size() == 3 ? to_size(parts[2]) : 1;
    if (step == 0 || lo > hi) throw UsageError("bad size range '" + text + "'");
    for (Size n = lo; n <= hi; n += step) sizes.push_back(n);
    return sizes;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) sizes.push_back(to_size(p));
  if (sizes.empty()) throw UsageError("empty size list");
  return sizes;
}

std::uint64_t resolve_seed(const CLI::App& sub, const Options& o, std::ostream& err) {
  if (sub.count("--seed") > 0) return o.seed;
  const std::uint64_t seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
                             std::random_device{}();
  err << "seed: " << seed << '\n';
  return seed;
}

// -- subcommands ---------------------------------------------------------------

int cmd_count(const CLI::App& sub, const Options& o, std::ostream& out) {
  if (o.polynomial) {
    CoeffVector poly;
    if (o.family == "terms") {
      poly = term_polynomial(o.size);
    } else if (o.family == "nf") {
      poly = nf_polynomial(o.size);
    } else if (o.family == "neutral") {
      poly = neutral_polynomial(o.size);
    } else {
      throw UsageError("--polynomial needs --family terms, nf or neutral");
    }
    for (std::size_t i = 0; i < poly.coeffs.size(); ++i) out << (i ? " " : "") << poly.coeffs[i];
    out << '\n';
    return kOk;
  }
  auto value = [&](Size n, Size m) -> BigInt {
    if (o.family == "terms") return count_terms(n, m);
    if (o.family == "nf") return count_nf(n, m);
    if (o.family == "neutral") return count_neutral(n, m);
    if (o.family == "exact") return count_exact_free(n, m);
    if (o.family == "contexts") return count_contexts(n, m);
    throw UsageError("unknown family '" + o.family + "'");
  };
  if (o.table) {
    out << "family,n,m,value\n";
    for (Size n = 0; n <= o.size; ++n) {
      for (Size m = 0; m <= o.free_vars; ++m) {
        out << o.family << ',' << n << ',' << m << ',' << value(n, m) << '\n';
      }
    }
    return kOk;
  }
  if (sub.count("--size") == 0) throw UsageError("count needs --size");
  out << value(o.size, o.free_vars) << '\n';
  return kOk;
}

int cmd_unrank(const Options& o, std::ostream& out) {
  const BigInt k = parse_big(o.rank, "--rank");
  print_term_line(unrank(selected_family(o), o.size, o.free_vars, k), o, out);
  return kOk;
}

int cmd_rank(const Options& o, std::istream& in, std::ostream& out) {
  for (const Term& t : read_terms(o, in)) out << rank(selected_family(o), t, o.free_vars) << '\n';
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  for_each_term(selected_family(o), o.size, o.free_vars,
                [&](const Term& t) { print_term_line(t, o, out); });
  return kOk;
}

int cmd_random(const CLI::App& sub, const Options& o, std::ostream& out, std::ostream& err) {
  SamplerConfig cfg;
  cfg.seed = resolve_seed(sub, o, err);
  cfg.family = selected_family(o);
  cfg.n = o.size;
  cfg.m = o.free_vars;
  cfg.max_attempts = o.max_attempts;
  cfg.log_attempts = o.format == "json";
  Rng rng(cfg.seed);
  for (std::uint64_t i = 0; i < o.count; ++i) {
    if (!o.typable) {
      print_term_line(random_member(cfg, rng), o, out);
      continue;
    }
    const TypableDraw draw = random_typable(cfg, rng);
    if (draw.gave_up()) {
      err << "gave up after " << draw.attempts << " attempts without a typable term\n";
      return kDomainError;
    }
    if (cfg.log_attempts) {
      out << nlohmann::json{{"term", term_to_json(*draw.term)}, {"attempts", draw.attempts}}.dump()
          << '\n';
    } else {
      out << print_term(*draw.term, text_style(o)) << '\n';
    }
  }
  return kOk;
}

int cmd_typecheck(const Options& o, std::istream& in, std::ostream& out) {
  for (const Term& t : read_terms(o, in)) {
    ConstraintResult built = build_constraint(t);
    SolveResult solution = solve(std::move(built.equations));
    if (solution.ok) {
      out << "typable " << print_type(apply_solution(built.candidate, solution.solved), type_style(o))
          << '\n';
    } else {
      out << "untypable\n";
    }
  }
  return kOk;
}

int cmd_experiment(const CLI::App& sub, const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec;
  try {
    spec.kind = experiment_kind_from_string(o.kind);
    spec.mode = experiment_mode_from_string(o.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.family = selected_family(o);
  spec.sizes = parse_sizes(o.sizes);
  spec.samples_per_point = o.samples;
  spec.segments = o.segments;
  spec.exhaustive_cap = o.cap;
  spec.threads = o.threads;
  if (spec.kind == ExperimentKind::SegmentHistogram && spec.sizes.size() != 1) {
    throw UsageError("segmentHistogram takes exactly one size");
  }
  if (spec.kind == ExperimentKind::SegmentHistogram && spec.mode == ExperimentMode::Exhaustive) {
    throw UsageError("segmentHistogram is sampled; --mode exhaustive does not apply");
  }
  const bool needs_seed = spec.mode == ExperimentMode::MonteCarlo;
  spec.seed = needs_seed ? resolve_seed(sub, o, err) : o.seed;
  const ExperimentReport report = run_experiment(spec);
  if (o.format == "json") {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << report.to_csv();
  }
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  bool all_ok = true;
  const RelationReport relations = validate_relations(o.n_max, o.m_max);
  out << (relations.ok() ? "PASS" : "FAIL") << " relations n<=" << o.n_max << " m<=" << o.m_max
      << " (" << relations.checks << " checks)\n";
  for (const auto& v : relations.violations) {
    out << "  n=" << v.n << " m=" << v.m << " " << v.relation << ": " << v.lhs << " != " << v.rhs
        << '\n';
  }
  all_ok = all_ok && relations.ok();
  auto report = [&](const BijectionReport& r) {
    out << (r.ok() ? "PASS" : "FAIL") << " bijection " << to_string(r.family) << " n=" << r.n
        << " m=" << r.m << " (" << r.checked << " members)";
    if (!r.ok()) out << ": " << r.failure;
    out << '\n';
    all_ok = all_ok && r.ok();
  };
  for (Size n = 0; n <= o.bijection_n; ++n) {
    for (Size m = 0; m <= o.bijection_m; ++m) report(check_bijection(Family::Terms, n, m));
  }
  for (Size n = 0; n <= o.nf_n; ++n) report(check_bijection(Family::Nf, n, 0));
  return all_ok ? kOk : kDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Count, rank, unrank, sample and type-check de Bruijn lambda terms", "lamcount"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> styles{"unicode", "ascii"};
  auto add_style = [&](CLI::App* sub) {
    sub->add_option("--style", o.style, "Text style for terms")->check(CLI::IsMember(styles));
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  };

  auto* count = app.add_subcommand("count", "Family sizes, tables and counting polynomials");
  count->add_option("--size,-n", o.size, "Term size")->check(CLI::NonNegativeNumber);
  count->add_option("--free-vars,-m", o.free_vars, "Free index budget (holes for contexts)");
  count->add_option("--family", o.family, "Counted family")
      ->check(CLI::IsMember({"terms", "nf", "neutral", "exact", "contexts"}));
  count->add_flag("--table", o.table, "CSV dump of every n <= size, m <= free-vars");
  count->add_flag("--polynomial", o.polynomial, "Coefficients in m, constant term first");

  auto* unrank_cmd = app.add_subcommand("unrank", "Term with a given rank");
  unrank_cmd->add_option("--size,-n", o.size, "Term size")->required();
  unrank_cmd->add_option("--free-vars,-m", o.free_vars, "Free index budget");
  unrank_cmd->add_option("--rank,-k", o.rank, "1-based rank")->required();
  unrank_cmd->add_flag("--nf", o.nf, "Rank among normal forms");
  add_style(unrank_cmd);
  add_format(unrank_cmd, {"text", "json"});

  auto* rank_cmd = app.add_subcommand("rank", "Rank of terms (arguments or stdin lines)");
  rank_cmd->add_option("term", o.terms, "Terms in text or JSON form");
  rank_cmd->add_option("--free-vars,-m", o.free_vars, "Free index budget");
  rank_cmd->add_flag("--nf", o.nf, "Rank among normal forms");

  auto* enumerate = app.add_subcommand("enumerate", "Every term of a size, in rank order");
  enumerate->add_option("--size,-n", o.size, "Term size")->required();
  enumerate->add_option("--free-vars,-m", o.free_vars, "Free index budget");
  enumerate->add_flag("--nf", o.nf, "Normal forms only");
  add_style(enumerate);
  add_format(enumerate, {"text", "json"});

  auto* random = app.add_subcommand("random", "Uniform random terms");
  random->add_option("--size,-n", o.size, "Term size")->required();
  random->add_option("--free-vars,-m", o.free_vars, "Free index budget");
  random->add_option("--seed", o.seed, "64-bit seed (logged to stderr when omitted)");
  random->add_option("--count", o.count, "Number of terms")->check(CLI::PositiveNumber);
  random->add_flag("--nf", o.nf, "Normal forms only");
  random->add_flag("--typable", o.typable, "Keep drawing until simply typable");
  random->add_option("--max-attempts", o.max_attempts, "Give-up bound for --typable")
      ->check(CLI::PositiveNumber);
  add_style(random);
  add_format(random, {"text", "json"});

  auto* typecheck = app.add_subcommand("typecheck", "Simple typability and principal type");
  typecheck->add_option("term", o.terms, "Closed terms in text or JSON form");
  add_style(typecheck);

  auto* experiment = app.add_subcommand("experiment", "Seeded statistics over random terms");
  experiment->add_option("--kind", o.kind, "varDepth | headLambdas | typableRatio | segmentHistogram")
      ->required();
  experiment->add_option("--sizes", o.sizes, "a:b[:step] or a,b,c")->required();
  experiment->add_option("--samples", o.samples, "Samples per point")->check(CLI::PositiveNumber);
  experiment->add_option("--segments", o.segments, "Segments (histogram)")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", o.seed, "64-bit seed (logged to stderr when omitted)");
  experiment->add_option("--mode", o.mode, "exhaustive | montecarlo")
      ->check(CLI::IsMember({"exhaustive", "montecarlo"}));
  experiment->add_option("--exhaustive-cap", o.cap, "Largest family visited exhaustively");
  experiment->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  experiment->add_flag("--nf", o.nf, "Normal forms instead of terms");
  experiment->add_option("--family", o.family, "terms | nf")->check(CLI::IsMember({"terms", "nf"}));
  add_format(experiment, {"csv", "json"});

  auto* validate = app.add_subcommand("validate", "Counting relations and bijection suite");
  validate->add_option("--n-max", o.n_max, "Largest size for the relations");
  validate->add_option("--m-max", o.m_max, "Largest budget for the relations");
  validate->add_option("--bijection-n", o.bijection_n, "Largest size for the term bijection");
  validate->add_option("--bijection-m", o.bijection_m, "Largest budget for the term bijection");
  validate->add_option("--nf-n", o.nf_n, "Largest size for the closed normal-form bijection");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (experiment->parsed()) {
      if (o.format == "text") o.format = "csv";
      if (o.family == "nf") o.nf = true;
      return cmd_experiment(*experiment, o, out, err);
    }
    if (count->parsed()) return cmd_count(*count, o, out);
    if (unrank_cmd->parsed()) return cmd_unrank(o, out);
    if (rank_cmd->parsed()) return cmd_rank(o, in, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (random->parsed()) return cmd_random(*random, o, out, err);
    if (typecheck->parsed()) return cmd_typecheck(o, in, out);
    if (validate->parsed()) return cmd_validate(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace lamcount::cli
