#ifndef LAMCOUNT_EXPERIMENTS_HPP_
#define LAMCOUNT_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lamcount/ranking.hpp"

namespace lamcount {

enum class ExperimentKind { VarDepth, HeadLambdas, TypableRatio, SegmentHistogram };
enum class ExperimentMode { Exhaustive, MonteCarlo };

std::string to_string(ExperimentKind kind);
std::string to_string(ExperimentMode mode);
ExperimentKind experiment_kind_from_string(const std::string& name);
ExperimentMode experiment_mode_from_string(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::TypableRatio;
  Family family = Family::Terms;
  std::vector<Size> sizes;
  std::uint64_t samples_per_point = 1000;
  std::uint64_t segments = 1;  // histogram only; uses sizes.front()
  std::uint64_t seed = 0;
  ExperimentMode mode = ExperimentMode::MonteCarlo;
  /// Exhaustive runs are refused above this many members.
  std::uint64_t exhaustive_cap = 100'000'000;
  /// Worker threads. Results do not depend on it.
  unsigned threads = 1;
};

using ReportCell = std::variant<std::int64_t, double, std::string>;

struct ExperimentReport {
  std::vector<std::string> columns;
  std::vector<std::vector<ReportCell>> rows;
  nlohmann::json metadata;

  /// Header then one line per row; reals with 6 significant digits.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Mean over sampled closed members of each member's mean variable depth,
/// next to the reference curves 2n/ln(n) and 2n/ln(n)^1.1.
ExperimentReport run_var_depth(const ExperimentSpec& spec);

/// Mean number of head lambdas, next to sqrt(n/ln(n)^a) for
/// a in {0.025, 0.2, 0.3, 0.5}.
ExperimentReport run_head_lambdas(const ExperimentSpec& spec);

/// Exact counts in exhaustive mode; sample ratio with a 95% Wilson interval
/// in Monte-Carlo mode.
ExperimentReport run_typable_ratio(const ExperimentSpec& spec);

/// Splits [1..count] into `segments` contiguous blocks whose sizes differ
/// by at most one (the first count % segments blocks get the extra member)
/// and estimates the typable ratio inside each block.
ExperimentReport run_segment_histogram(const ExperimentSpec& spec);

ExperimentReport run_experiment(const ExperimentSpec& spec);

struct Segment {
  BigInt first;
  BigInt last;
  BigInt size() const { return last - first + 1; }
};

std::vector<Segment> partition_ranks(const BigInt& total, std::uint64_t segments);

nlohmann::json spec_to_json(const ExperimentSpec& spec);

}  // namespace lamcount

#endif  // LAMCOUNT_EXPERIMENTS_HPP_
