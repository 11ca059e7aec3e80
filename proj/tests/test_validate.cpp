#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <set>
#include <string>

#include "loopkit/validate.hpp"

namespace {

std::string describe(const loopkit::validate::CheckResult& check) {
  return "criterion " + std::to_string(check.criterion) + " / " +
         check.group + " / " + check.name + ": expected " + check.expected +
         ", computed " + check.computed + " (tolerance " + check.tolerance +
         ")";
}

}  // namespace

TEST_CASE("default run passes every check within the time budget") {
  const auto start = std::chrono::steady_clock::now();
  const auto report = loopkit::validate::run();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  for (const auto& check : report.checks) {
    CAPTURE(describe(check));
    CHECK(check.passed);
  }
  CHECK(report.all_passed());
  CHECK(report.failures() == 0);
  CHECK(seconds < 30.0);
}

TEST_CASE("the report covers every criterion with well-formed rows") {
  const auto report = loopkit::validate::run();

  std::set<int> criteria;
  for (const auto& check : report.checks) {
    criteria.insert(check.criterion);
    CHECK(!check.group.empty());
    CHECK(!check.name.empty());
    CHECK(!check.expected.empty());
    CHECK(!check.computed.empty());
    CHECK(!check.tolerance.empty());
  }
  for (int criterion = 0; criterion <= 10; ++criterion)
    CHECK(criteria.count(criterion) == 1);
}

TEST_CASE("perturbing the dielectric constant breaks the frequency checks") {
  loopkit::validate::Options options;
  options.eps_r_scale = 1.10;
  const auto report = loopkit::validate::run(options);

  CHECK(!report.all_passed());
  CHECK(report.failures() > 0);

  bool f0_failed = false;
  for (const auto& check : report.checks)
    if (check.criterion == 1 && check.name == "f0" && !check.passed)
      f0_failed = true;
  CHECK(f0_failed);

  int counted = 0;
  for (const auto& check : report.checks)
    if (!check.passed) ++counted;
  CHECK(counted == report.failures());
}

TEST_CASE("tolerance scaling widens the recorded tolerances") {
  loopkit::validate::Options options;
  options.tolerance_scale = 2.0;
  const auto report = loopkit::validate::run(options);

  bool saw_scaled = false;
  for (const auto& check : report.checks)
    if (check.criterion == 1 && check.name == "f0" &&
        check.tolerance == "6% rel")
      saw_scaled = true;
  CHECK(saw_scaled);
  CHECK(report.all_passed());
}
