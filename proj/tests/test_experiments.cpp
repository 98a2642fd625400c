#include "doctest.h"
#include "lamcount/experiments.hpp"
#include "lamcount/typecheck.hpp"

using namespace lamcount;

namespace {

ExperimentSpec spec_of(ExperimentKind kind, std::vector<Size> sizes, std::uint64_t samples = 200) {
  ExperimentSpec s;
  s.kind = kind;
  s.sizes = std::move(sizes);
  s.samples_per_point = samples;
  s.seed = 31;
  return s;
}

}  // namespace

TEST_CASE("kind and mode names") {
  CHECK(to_string(ExperimentKind::SegmentHistogram) == "segmentHistogram");
  CHECK(experiment_kind_from_string("varDepth") == ExperimentKind::VarDepth);
  CHECK(experiment_mode_from_string("exhaustive") == ExperimentMode::Exhaustive);
  CHECK_THROWS_AS(experiment_kind_from_string("depth"), std::invalid_argument);
  CHECK_THROWS_AS(experiment_mode_from_string("random"), std::invalid_argument);
}

TEST_CASE("partition_ranks") {
  const auto parts = partition_ranks(10, 3);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].first == 1);
  CHECK(parts[0].last == 4);
  CHECK(parts[1].first == 5);
  CHECK(parts[1].last == 7);
  CHECK(parts[2].first == 8);
  CHECK(parts[2].last == 10);
  const auto one = partition_ranks(count_terms(40, 0), 1);
  CHECK(one.front().size() == count_terms(40, 0));
  const auto many = partition_ranks(count_terms(30, 0), 7);
  BigInt covered = 0;
  for (std::size_t i = 0; i < many.size(); ++i) {
    covered += many[i].size();
    if (i > 0) CHECK(many[i].first == many[i - 1].last + 1);
  }
  CHECK(covered == count_terms(30, 0));
  CHECK_THROWS_AS(partition_ranks(3, 4), DomainError);
  CHECK_THROWS_AS(partition_ranks(3, 0), std::invalid_argument);
}

TEST_CASE("variable depth") {
  ExperimentSpec s = spec_of(ExperimentKind::VarDepth, {1, 2});
  s.mode = ExperimentMode::Exhaustive;
  const auto r = run_experiment(s);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.columns == std::vector<std::string>{"size", "samples", "mean_depth", "curve_2n_ln",
                                              "curve_2n_ln1.1"});
  CHECK(std::get<double>(r.rows[0][2]) == doctest::Approx(1.0));
  // λλ1, λλ2 have depth 2; λ(1 1) has depths 2, 2.
  CHECK(std::get<double>(r.rows[1][2]) == doctest::Approx(2.0));
  CHECK(std::get<std::int64_t>(r.rows[1][1]) == 3);
}

TEST_CASE("head lambdas") {
  ExperimentSpec s = spec_of(ExperimentKind::HeadLambdas, {2, 3});
  s.mode = ExperimentMode::Exhaustive;
  const auto r = run_experiment(s);
  CHECK(std::get<double>(r.rows[0][2]) == doctest::Approx(5.0 / 3.0));
  // Size 3: 3 terms with 3, 4 with 2, 6 with 1, 1 with 0.
  CHECK(std::get<double>(r.rows[1][2]) == doctest::Approx(23.0 / 14.0));
  CHECK(r.columns.size() == 7);
}

TEST_CASE("exhaustive typable ratio") {
  ExperimentSpec s = spec_of(ExperimentKind::TypableRatio, {4, 5});
  s.mode = ExperimentMode::Exhaustive;
  s.threads = 3;
  const auto r = run_experiment(s);
  CHECK(std::get<std::int64_t>(r.rows[0][1]) == 82);
  CHECK(std::get<std::int64_t>(r.rows[0][2]) == 40);
  CHECK(std::get<double>(r.rows[0][3]) == doctest::Approx(40.0 / 82.0));
  CHECK(std::get<std::int64_t>(r.rows[1][2]) == 238);
  s.family = Family::Nf;
  const auto nf = run_experiment(s);
  CHECK(std::get<std::int64_t>(nf.rows[0][1]) == 53);
  CHECK(std::get<std::int64_t>(nf.rows[0][2]) == 23);
}

TEST_CASE("exhaustive runs respect the cap") {
  ExperimentSpec s = spec_of(ExperimentKind::TypableRatio, {9});
  s.mode = ExperimentMode::Exhaustive;
  s.exhaustive_cap = 1000;
  CHECK_THROWS_AS(run_experiment(s), DomainError);
}

TEST_CASE("Monte-Carlo typable ratio has a Wilson interval around the estimate") {
  const auto r = run_experiment(spec_of(ExperimentKind::TypableRatio, {6}, 4000));
  const double ratio = std::get<double>(r.rows[0][3]);
  const double low = std::get<double>(r.rows[0][4]);
  const double high = std::get<double>(r.rows[0][5]);
  CHECK(low < ratio);
  CHECK(ratio < high);
  // exact ratio at size 6 is 1564 / 4741
  CHECK(low < 1564.0 / 4741.0);
  CHECK(1564.0 / 4741.0 < high);
}

TEST_CASE("segment histogram") {
  ExperimentSpec s = spec_of(ExperimentKind::SegmentHistogram, {6}, 500);
  s.segments = 4;
  const auto r = run_experiment(s);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.columns.front() == "segment");
  CHECK(std::get<std::int64_t>(r.rows[0][1]) == 1);
  CHECK(std::get<std::int64_t>(r.rows[3][2]) == 4741);

  // Draws stay inside their segment.
  ExperimentSpec tiny = spec_of(ExperimentKind::SegmentHistogram, {2}, 100);
  tiny.segments = 3;
  const auto t = run_experiment(tiny);
  // Ranks 1, 2, 3 are λλ1, λλ2, λ(1 1).
  CHECK(std::get<double>(t.rows[0][5]) == doctest::Approx(1.0));
  CHECK(std::get<double>(t.rows[2][5]) == doctest::Approx(0.0));
}

TEST_CASE("one segment reproduces the Monte-Carlo ratio") {
  ExperimentSpec hist = spec_of(ExperimentKind::SegmentHistogram, {9}, 1500);
  ExperimentSpec ratio = spec_of(ExperimentKind::TypableRatio, {9}, 1500);
  const auto h = run_experiment(hist);
  const auto r = run_experiment(ratio);
  CHECK(std::get<std::int64_t>(h.rows[0][4]) == std::get<std::int64_t>(r.rows[0][2]));
}

TEST_CASE("reports are reproducible and independent of thread count") {
  for (auto kind : {ExperimentKind::VarDepth, ExperimentKind::HeadLambdas,
                    ExperimentKind::TypableRatio}) {
    ExperimentSpec s = spec_of(kind, {8, 16}, 300);
    const std::string a = run_experiment(s).to_csv();
    s.threads = 3;
    const std::string b = run_experiment(s).to_csv();
    CHECK(a == b);
    s.seed += 1;
    CHECK(run_experiment(s).to_csv() != a);
  }
}

TEST_CASE("CSV and JSON forms") {
  ExperimentSpec s = spec_of(ExperimentKind::TypableRatio, {4});
  s.mode = ExperimentMode::Exhaustive;
  const auto r = run_experiment(s);
  CHECK(r.to_csv() == "size,total,typable,ratio\n4,82,40,0.487805\n");
  const auto j = r.to_json();
  CHECK(j["rows"][0]["typable"] == 40);
  CHECK(j["metadata"]["spec"]["kind"] == "typableRatio");
  CHECK(j["metadata"]["spec"]["mode"] == "exhaustive");
  CHECK(j["metadata"]["version"].is_string());
  CHECK_FALSE(j["metadata"]["spec"].contains("threads"));
}

TEST_CASE("invalid specs") {
  ExperimentSpec s = spec_of(ExperimentKind::VarDepth, {});
  CHECK_THROWS_AS(run_experiment(s), std::invalid_argument);
  s.sizes = {0};
  CHECK_THROWS_AS(run_experiment(s), DomainError);
  s.sizes = {5};
  s.samples_per_point = 0;
  CHECK_THROWS_AS(run_experiment(s), std::invalid_argument);
}
