#include <algorithm>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = lamcount::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count") {
  CHECK(run_cli({"count", "--size", "3", "--free-vars", "0"}).out == "14\n");
  CHECK(run_cli({"count", "-n", "50"}).out ==
        "996657783344523283417055002040148075226700996391558695269946852267\n");
  CHECK(run_cli({"count", "-n", "10", "--family", "nf"}).out == "22795849\n");
  CHECK(run_cli({"count", "-n", "2", "-m", "1", "--family", "neutral"}).out == "4\n");
  CHECK(run_cli({"count", "-n", "3", "-m", "4", "--family", "contexts"}).out == "5\n");
  CHECK(run_cli({"count", "-n", "2", "--polynomial"}).out == "3 5 3 2\n");
  const Result table = run_cli({"count", "-n", "1", "-m", "1", "--table"});
  CHECK(table.out == "family,n,m,value\nterms,0,0,0\nterms,0,1,1\nterms,1,0,1\nterms,1,1,3\n");
  CHECK(run_cli({"count"}).code == lamcount::cli::kUsageError);
  CHECK(run_cli({"count", "-n", "2", "--family", "trees"}).code == lamcount::cli::kUsageError);
}

TEST_CASE("unrank and rank") {
  CHECK(run_cli({"unrank", "--size", "2", "--free-vars", "0", "--rank", "3"}).out == "λ(1 1)\n");
  CHECK(run_cli({"unrank", "-n", "2", "-k", "3", "--style", "ascii"}).out == "\\(1 1)\n");
  CHECK(run_cli({"unrank", "-n", "2", "-k", "3", "--format", "json"}).out ==
        "{\"abs\":{\"app\":[{\"ix\":1},{\"ix\":1}]}}\n");
  CHECK(run_cli({"unrank", "-n", "3", "-k", "11", "--nf"}).out == "λ(1 1 1)\n");
  const Result out_of_range = run_cli({"unrank", "-n", "2", "-k", "4"});
  CHECK(out_of_range.code == lamcount::cli::kDomainError);
  CHECK(out_of_range.err.find("out of range") != std::string::npos);
  CHECK(run_cli({"unrank", "-n", "2", "-k", "x1"}).code == lamcount::cli::kUsageError);

  CHECK(run_cli({"rank", "λ(1 1)"}).out == "3\n");
  CHECK(run_cli({"rank", "--nf", "λ(1 1 1)"}).out == "11\n");
  CHECK(run_cli({"rank"}, "λλ1\n\n{\"abs\":{\"ix\":1}}\n").out == "1\n1\n");
  CHECK(run_cli({"rank", "λ2"}).code == lamcount::cli::kDomainError);
  CHECK(run_cli({"rank", "-m", "1", "λ2"}).code == lamcount::cli::kOk);
  CHECK(run_cli({"rank", "λ0"}).code == lamcount::cli::kUsageError);
  CHECK(run_cli({"rank", "--nf", "(λ1)(λ1)"}).code == lamcount::cli::kDomainError);
}

TEST_CASE("large ranks round-trip through text") {
  const std::string k = "123456789012345678901234567890";
  const Result t = run_cli({"unrank", "-n", "40", "-k", k});
  REQUIRE(t.code == 0);
  CHECK(run_cli({"rank"}, t.out).out == k + "\n");
}

TEST_CASE("enumerate") {
  const Result r = run_cli({"enumerate", "-n", "3"});
  CHECK(r.out.rfind("λλλ1\nλλλ2\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 14);
  const Result nf = run_cli({"enumerate", "-n", "2", "--nf", "-m", "1"});
  CHECK(std::count(nf.out.begin(), nf.out.end(), '\n') == 11);
}

TEST_CASE("random") {
  const Result a = run_cli({"random", "-n", "20", "--seed", "5", "--count", "3"});
  const Result b = run_cli({"random", "-n", "20", "--seed", "5", "--count", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 3);
  CHECK(a.err.empty());
  // ranks of the drawn terms re-read through stdin
  const Result ranks = run_cli({"rank"}, a.out);
  CHECK(ranks.code == 0);
  CHECK(std::count(ranks.out.begin(), ranks.out.end(), '\n') == 3);

  const Result unseeded = run_cli({"random", "-n", "5"});
  CHECK(unseeded.code == 0);
  CHECK(unseeded.err.rfind("seed: ", 0) == 0);

  const Result typable = run_cli({"random", "-n", "10", "--seed", "1", "--typable", "--format", "json"});
  CHECK(typable.code == 0);
  const auto j = nlohmann::json::parse(typable.out);
  CHECK(j.contains("attempts"));
  CHECK(run_cli({"typecheck"}, j["term"].dump()).out.rfind("typable ", 0) == 0);

  CHECK(run_cli({"random", "-n", "4", "-m", "1", "--seed", "1", "--typable"}).code ==
        lamcount::cli::kDomainError);
  CHECK(run_cli({"random", "-n", "0", "--seed", "1"}).code == lamcount::cli::kDomainError);
}

TEST_CASE("typecheck") {
  const Result r = run_cli({"typecheck", "λ(1 1)"});
  CHECK(r.out == "untypable\n");
  CHECK(r.code == 0);
  CHECK(run_cli({"typecheck", "λλ2"}).out == "typable α→β→α\n");
  CHECK(run_cli({"typecheck", "--style", "ascii", "λλ2"}).out == "typable a->b->a\n");
  CHECK(run_cli({"typecheck"}, "λ1\nλ(1 1)\n").out == "typable α→α\nuntypable\n");
  CHECK(run_cli({"typecheck", "λ2"}).code == lamcount::cli::kDomainError);
  CHECK(run_cli({"typecheck", "λ("}).code == lamcount::cli::kUsageError);
}

TEST_CASE("unrank output pipes into typecheck") {
  const Result t = run_cli({"unrank", "-n", "10", "-k", "1000000"});
  const Result c = run_cli({"typecheck"}, t.out);
  CHECK(c.code == 0);
  CHECK((c.out.rfind("typable ", 0) == 0 || c.out == "untypable\n"));
}

TEST_CASE("experiment") {
  const std::vector<std::string> args{"experiment", "--kind", "typableRatio", "--sizes", "6:10:2",
                                      "--samples", "300", "--seed", "4"};
  const Result a = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out.rfind("size,samples,typable,ratio,ci95_low,ci95_high\n6,300,", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 4);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "2"});
  CHECK(run_cli(threaded).out == a.out);

  const Result ex = run_cli({"experiment", "--kind", "typableRatio", "--sizes", "4,5", "--mode",
                             "exhaustive", "--nf"});
  CHECK(ex.out == "size,total,typable,ratio\n4,53,23,0.433962\n5,323,108,0.334365\n");

  const Result j = run_cli({"experiment", "--kind", "headLambdas", "--sizes", "10", "--samples",
                            "20", "--seed", "1", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["metadata"]["spec"]["seed"] == 1);

  const Result h = run_cli({"experiment", "--kind", "segmentHistogram", "--sizes", "8",
                            "--segments", "5", "--samples", "50", "--seed", "2"});
  CHECK(std::count(h.out.begin(), h.out.end(), '\n') == 6);

  CHECK(run_cli({"experiment", "--kind", "segmentHistogram", "--sizes", "8,9", "--seed", "1"}).code ==
        lamcount::cli::kUsageError);
  CHECK(run_cli({"experiment", "--kind", "depth", "--sizes", "8"}).code == lamcount::cli::kUsageError);
  CHECK(run_cli({"experiment", "--kind", "varDepth", "--sizes", "9:3"}).code ==
        lamcount::cli::kUsageError);
  CHECK(run_cli({"experiment", "--kind", "varDepth", "--sizes", "12", "--mode", "exhaustive",
                 "--exhaustive-cap", "10"})
            .code == lamcount::cli::kDomainError);
}

TEST_CASE("validate") {
  const Result r = run_cli({"validate", "--n-max", "6", "--m-max", "3", "--bijection-n", "4",
                            "--bijection-m", "1", "--nf-n", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS relations", 0) == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage") {
  CHECK(run_cli({}).code == lamcount::cli::kUsageError);
  CHECK(run_cli({"frobnicate"}).code == lamcount::cli::kUsageError);
  CHECK(run_cli({"count", "--bogus"}).code == lamcount::cli::kUsageError);
  const Result help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("typecheck") != std::string::npos);
  CHECK(run_cli({"unrank", "--help"}).code == 0);
}
