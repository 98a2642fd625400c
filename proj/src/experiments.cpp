#include "lamcount/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "lamcount/sampling.hpp"
#include "lamcount/typecheck.hpp"

namespace lamcount {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr const char* kVersion = "lamcount 1.0.0";

// Each sample owns a stream derived from its point and position, so the
// outcome is the same for any thread count.
std::uint64_t sample_stream(std::uint64_t point, std::uint64_t sample) {
  return (point << 32) ^ sample;
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t i = w; i < count; i += workers) body(i);
    });
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

void validate_common(const ExperimentSpec& spec) {
  if (spec.sizes.empty()) throw std::invalid_argument("experiment needs at least one size");
  if (spec.samples_per_point < 1) throw std::invalid_argument("samples per point must be >= 1");
  for (Size n : spec.sizes) {
    if (n < 1) throw DomainError("experiment sizes must be >= 1");
  }
}

void check_exhaustive_cap(const ExperimentSpec& spec, const BigInt& total, Size n) {
  if (total > spec.exhaustive_cap) {
    throw DomainError("exhaustive run at size " + std::to_string(n) + " would visit " +
                      total.str() + " members, above the cap of " +
                      std::to_string(spec.exhaustive_cap));
  }
}

ExperimentReport new_report(const ExperimentSpec& spec, std::vector<std::string> columns) {
  ExperimentReport report;
  report.columns = std::move(columns);
  report.metadata = {{"spec", spec_to_json(spec)}, {"version", kVersion}};
  return report;
}

ReportCell big_cell(const BigInt& value) {
  if (value <= std::numeric_limits<std::int64_t>::max()) {
    return value.convert_to<std::int64_t>();
  }
  return value.str();
}

// Sum of a per-term statistic over every closed member, split into rank
// windows across workers.
Rational exhaustive_sum(const ExperimentSpec& spec, Size n,
                        const std::function<Rational(const Term&)>& statistic) {
  const BigInt total = family_count(spec.family, n, 0);
  const unsigned workers = std::max(1u, spec.threads);
  auto windows = partition_ranks(total, std::min<std::uint64_t>(workers, total.convert_to<std::uint64_t>()));
  std::vector<Rational> partial(windows.size());
  parallel_for(windows.size(), workers, [&](std::uint64_t w) {
    Rational acc = 0;
    for_each_in_range(spec.family, n, 0, windows[w].first, windows[w].last,
                      [&](const Term& t) { acc += statistic(t); });
    partial[w] = acc;
  });
  Rational sum = 0;
  for (const auto& p : partial) sum += p;
  return sum;
}

// Mean of a per-term statistic for each size, exhaustive or sampled.
std::vector<std::pair<Rational, BigInt>> mean_per_size(
    const ExperimentSpec& spec, const std::function<Rational(const Term&)>& statistic) {
  validate_common(spec);
  std::vector<std::pair<Rational, BigInt>> out;
  for (std::size_t point = 0; point < spec.sizes.size(); ++point) {
    const Size n = spec.sizes[point];
    const BigInt total = family_count(spec.family, n, 0);
    if (total == 0) throw DomainError("no closed member of size " + std::to_string(n));
    if (spec.mode == ExperimentMode::Exhaustive) {
      check_exhaustive_cap(spec, total, n);
      out.emplace_back(exhaustive_sum(spec, n, statistic) / Rational(total), total);
      continue;
    }
    std::vector<Rational> values(spec.samples_per_point);
    SamplerConfig cfg{spec.seed, spec.family, n, 0};
    parallel_for(spec.samples_per_point, spec.threads, [&](std::uint64_t s) {
      Rng rng(spec.seed, sample_stream(point, s));
      values[s] = statistic(random_member(cfg, rng));
    });
    Rational sum = 0;
    for (const auto& v : values) sum += v;
    out.emplace_back(sum / spec.samples_per_point, BigInt(spec.samples_per_point));
  }
  return out;
}

Rational mean_depth(const Term& t) {
  const auto depths = variable_depths(t);
  std::uint64_t sum = 0;
  for (auto d : depths) sum += d;
  return Rational(sum) / depths.size();
}

struct Interval {
  double low;
  double high;
};

// Wilson score interval at 95%.
Interval wilson(std::uint64_t successes, std::uint64_t trials) {
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::string format_cell(const ReportCell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", std::get<double>(cell));
  return buffer;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::VarDepth:
      return "varDepth";
    case ExperimentKind::HeadLambdas:
      return "headLambdas";
    case ExperimentKind::TypableRatio:
      return "typableRatio";
    case ExperimentKind::SegmentHistogram:
      return "segmentHistogram";
  }
  return "?";
}

std::string to_string(ExperimentMode mode) {
  return mode == ExperimentMode::Exhaustive ? "exhaustive" : "montecarlo";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto kind : {ExperimentKind::VarDepth, ExperimentKind::HeadLambdas,
                    ExperimentKind::TypableRatio, ExperimentKind::SegmentHistogram}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

ExperimentMode experiment_mode_from_string(const std::string& name) {
  if (name == "exhaustive") return ExperimentMode::Exhaustive;
  if (name == "montecarlo") return ExperimentMode::MonteCarlo;
  throw std::invalid_argument("unknown experiment mode '" + name + "'");
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { r[columns[c]] = v; }, row[c]);
    }
    rows_json.push_back(std::move(r));
  }
  return {{"metadata", metadata}, {"columns", columns}, {"rows", rows_json}};
}

ExperimentReport run_var_depth(const ExperimentSpec& spec) {
  auto means = mean_per_size(spec, &mean_depth);
  auto report = new_report(spec, {"size", "samples", "mean_depth", "curve_2n_ln", "curve_2n_ln1.1"});
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double n = static_cast<double>(spec.sizes[i]);
    const double ln = std::log(n);
    report.rows.push_back({static_cast<std::int64_t>(spec.sizes[i]), big_cell(means[i].second),
                           to_double(means[i].first), 2 * n / ln, 2 * n / std::pow(ln, 1.1)});
  }
  return report;
}

ExperimentReport run_head_lambdas(const ExperimentSpec& spec) {
  auto means = mean_per_size(spec, [](const Term& t) { return Rational(head_lambdas(t)); });
  static constexpr double kExponents[] = {0.025, 0.2, 0.3, 0.5};
  auto report = new_report(spec, {"size", "samples", "mean_head_lambdas", "curve_a0.025",
                                  "curve_a0.2", "curve_a0.3", "curve_a0.5"});
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double n = static_cast<double>(spec.sizes[i]);
    std::vector<ReportCell> row{static_cast<std::int64_t>(spec.sizes[i]),
                                big_cell(means[i].second), to_double(means[i].first)};
    for (double a : kExponents) row.emplace_back(std::sqrt(n / std::pow(std::log(n), a)));
    report.rows.push_back(std::move(row));
  }
  return report;
}

ExperimentReport run_typable_ratio(const ExperimentSpec& spec) {
  validate_common(spec);
  if (spec.mode == ExperimentMode::Exhaustive) {
    auto report = new_report(spec, {"size", "total", "typable", "ratio"});
    for (Size n : spec.sizes) {
      const BigInt total = family_count(spec.family, n, 0);
      check_exhaustive_cap(spec, total, n);
      const Rational typable = exhaustive_sum(
          spec, n, [](const Term& t) { return Rational(is_typable(t) ? 1 : 0); });
      const BigInt typable_count = boost::multiprecision::numerator(typable);
      report.rows.push_back({static_cast<std::int64_t>(n), big_cell(total), big_cell(typable_count),
                             to_double(typable / Rational(total))});
    }
    return report;
  }
  auto report = new_report(spec, {"size", "samples", "typable", "ratio", "ci95_low", "ci95_high"});
  for (std::size_t point = 0; point < spec.sizes.size(); ++point) {
    const Size n = spec.sizes[point];
    const BigInt total = family_count(spec.family, n, 0);
    std::vector<char> hits(spec.samples_per_point, 0);
    parallel_for(spec.samples_per_point, spec.threads, [&](std::uint64_t s) {
      Rng rng(spec.seed, sample_stream(point, s));
      hits[s] = is_typable(unrank(spec.family, n, 0, random_rank(total, rng))) ? 1 : 0;
    });
    std::uint64_t typable = 0;
    for (char h : hits) typable += static_cast<std::uint64_t>(h);
    const auto ci = wilson(typable, spec.samples_per_point);
    report.rows.push_back({static_cast<std::int64_t>(n),
                           static_cast<std::int64_t>(spec.samples_per_point),
                           static_cast<std::int64_t>(typable),
                           static_cast<double>(typable) / static_cast<double>(spec.samples_per_point),
                           ci.low, ci.high});
  }
  return report;
}

std::vector<Segment> partition_ranks(const BigInt& total, std::uint64_t segments) {
  if (segments < 1) throw std::invalid_argument("need at least one segment");
  if (total < segments) {
    throw DomainError("cannot split " + total.str() + " ranks into " +
                      std::to_string(segments) + " non-empty segments");
  }
  BigInt quotient;
  BigInt remainder;
  boost::multiprecision::divide_qr(total, BigInt(segments), quotient, remainder);
  std::vector<Segment> out;
  out.reserve(segments);
  BigInt next = 1;
  for (std::uint64_t s = 0; s < segments; ++s) {
    const BigInt size = quotient + (remainder > s ? 1 : 0);
    out.push_back({next, next + size - 1});
    next += size;
  }
  return out;
}

ExperimentReport run_segment_histogram(const ExperimentSpec& spec) {
  validate_common(spec);
  const Size n = spec.sizes.front();
  const BigInt total = family_count(spec.family, n, 0);
  const auto segments = partition_ranks(total, spec.segments);
  auto report = new_report(spec, {"segment", "rank_first", "rank_last", "samples", "typable", "ratio"});
  for (std::uint64_t seg = 0; seg < segments.size(); ++seg) {
    const BigInt width = segments[seg].size();
    std::vector<char> hits(spec.samples_per_point, 0);
    parallel_for(spec.samples_per_point, spec.threads, [&](std::uint64_t s) {
      Rng rng(spec.seed, sample_stream(seg, s));
      const BigInt rank = segments[seg].first - 1 + random_rank(width, rng);
      hits[s] = is_typable(unrank(spec.family, n, 0, rank)) ? 1 : 0;
    });
    std::uint64_t typable = 0;
    for (char h : hits) typable += static_cast<std::uint64_t>(h);
    report.rows.push_back({static_cast<std::int64_t>(seg), big_cell(segments[seg].first),
                           big_cell(segments[seg].last),
                           static_cast<std::int64_t>(spec.samples_per_point),
                           static_cast<std::int64_t>(typable),
                           static_cast<double>(typable) / static_cast<double>(spec.samples_per_point)});
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::VarDepth:
      return run_var_depth(spec);
    case ExperimentKind::HeadLambdas:
      return run_head_lambdas(spec);
    case ExperimentKind::TypableRatio:
      return run_typable_ratio(spec);
    case ExperimentKind::SegmentHistogram:
      return run_segment_histogram(spec);
  }
  throw std::logic_error("unknown experiment kind");
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  // `threads` is left out so that reports do not depend on it.
  return {{"kind", to_string(spec.kind)},
          {"family", to_string(spec.family)},
          {"sizes", spec.sizes},
          {"samples_per_point", spec.samples_per_point},
          {"segments", spec.segments},
          {"seed", spec.seed},
          {"mode", to_string(spec.mode)},
          {"exhaustive_cap", spec.exhaustive_cap}};
}

}  // namespace lamcount
