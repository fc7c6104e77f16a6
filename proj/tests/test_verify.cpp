#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "proxsmooth/errors.hpp"
#include "proxsmooth/verify.hpp"

using namespace proxsmooth;

TEST_CASE("the twelve criteria are registered in canonical order") {
  const std::vector<std::string> expected = {
      "quadratic-exactness", "hinge-sqrt-rate",      "hinge-sharp-constant",
      "cone-sharp-constant", "localization",         "smooth-linear-rate",
      "covariance-trace",    "projection-sqrt-rate", "halfspace-projection",
      "ball-linear-slope",   "tail-bounds",          "properties"};
  CHECK(criterion_names() == expected);
}

TEST_CASE("suite names and their criterion lists") {
  const auto names = suite_names();
  const std::vector<std::string> expected = {
      "all",         "prox-sqrt",  "prox-linear", "proj-sqrt",
      "proj-linear", "examples",   "tail-bounds", "properties"};
  CHECK(names == expected);

  CHECK(suite_criteria("all") == criterion_names());
  CHECK(suite_criteria("prox-sqrt") ==
        std::vector<std::string>{"hinge-sqrt-rate", "localization"});
  CHECK(suite_criteria("prox-linear") ==
        std::vector<std::string>{"smooth-linear-rate", "covariance-trace"});
  CHECK(suite_criteria("proj-sqrt") ==
        std::vector<std::string>{"projection-sqrt-rate"});
  CHECK(suite_criteria("proj-linear") ==
        std::vector<std::string>{"ball-linear-slope"});
  CHECK(suite_criteria("examples") ==
        std::vector<std::string>{"quadratic-exactness", "hinge-sharp-constant",
                                 "cone-sharp-constant", "halfspace-projection"});
  CHECK(suite_criteria("tail-bounds") == std::vector<std::string>{"tail-bounds"});
  CHECK(suite_criteria("properties") == std::vector<std::string>{"properties"});

  CHECK_THROWS_AS(suite_criteria("no-such-suite"), ParameterError);
  CHECK_THROWS_AS(run_criterion("everything", 0), ParameterError);
  CHECK_THROWS_AS(run_criterion("properties", 0, 0), ParameterError);
}

TEST_CASE("quadratic exactness: 18 closed-form comparisons, all far inside") {
  const CriterionReport report = run_criterion("quadratic-exactness", 0);
  CHECK(report.name == "quadratic-exactness");
  CHECK(report.rows.size() == 18);
  CHECK(report.pass);
  CHECK(report.worst_margin > 0.5);
  for (const CheckRow& row : report.rows) {
    CAPTURE(row.check);
    CHECK(row.pass);
    CHECK(row.criterion == "quadratic-exactness");
  }
}

TEST_CASE("tail bounds: both special-function grids ordered") {
  const CriterionReport report = run_criterion("tail-bounds", 0);
  CHECK(report.rows.size() == 2);
  CHECK(report.pass);
  CHECK(report.rows[0].observed.find("169/169") == 0);
  CHECK(report.rows[1].observed.find("108/108") == 0);
}

TEST_CASE("localization: moment, three tails, three ball masses") {
  const CriterionReport report = run_criterion("localization", 42);
  CHECK(report.rows.size() == 7);
  CHECK(report.pass);
  CHECK(report.rows[0].check == "E|Y-prox|^2");
}

TEST_CASE("properties criterion passes with six deterministic rows") {
  const CriterionReport report = run_criterion("properties", 0);
  CHECK(report.rows.size() == 6);
  CHECK(report.pass);
  for (const CheckRow& row : report.rows) {
    CAPTURE(row.check);
    CHECK(row.pass);
  }
}

TEST_CASE("quadrature-only rate criteria pass at desk scale") {
  const CriterionReport smooth = run_criterion("smooth-linear-rate", 0);
  CHECK(smooth.rows.size() == 2);
  CHECK(smooth.pass);

  const CriterionReport ball = run_criterion("ball-linear-slope", 0);
  CHECK(ball.rows.size() == 1);
  CHECK(ball.pass);
}

TEST_CASE("report formatting is byte-stable and carries the verdict") {
  const VerifyReport a = run_suite("tail-bounds", 42);
  const VerifyReport b = run_suite("tail-bounds", 42);
  const std::string ta = format_report(a);
  CHECK(ta == format_report(b));
  CHECK(ta.find("verify suite 'tail-bounds' (seed 42)") == 0);
  CHECK(ta.find("criterion") != std::string::npos);
  CHECK(ta.find("summary: 1/1 criteria passed") != std::string::npos);
  CHECK(ta.find("overall PASS") != std::string::npos);
  CHECK(ta.find("FAIL") == std::string::npos);
  CHECK(a.pass);
  CHECK(a.seed == 42);
  CHECK(a.criteria.size() == 1);
}
