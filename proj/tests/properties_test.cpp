#include <random>

#include <gtest/gtest.h>

#include "deontic/properties.hpp"

using namespace deontic;

namespace {

void expect_clean(const props::SuiteResult& r, std::size_t models) {
  EXPECT_EQ(r.models, models) << r.name;
  EXPECT_GE(r.checks, models) << r.name;
  EXPECT_EQ(r.violations, 0u) << r.name << ": " << r.first_violation;
}

}  // namespace

TEST(Theorems, ForceOthers) {
  std::mt19937_64 rng(101);
  expect_clean(props::force_others(rng, 200), 200);
}

TEST(Theorems, DstitIdempotence) {
  std::mt19937_64 rng(102);
  expect_clean(props::dstit_idempotence(rng, 200), 200);
}

TEST(Theorems, RefrainRefrain) {
  std::mt19937_64 rng(103);
  expect_clean(props::refrain_refrain(rng, 200), 200);
}

TEST(Theorems, HistoryIndependence) {
  std::mt19937_64 rng(104);
  expect_clean(props::history_independence(rng, 200), 200);
}

TEST(Theorems, Conjunction) {
  std::mt19937_64 rng(105);
  expect_clean(props::conjunction(rng, 200), 200);
}

TEST(Theorems, OptimalNonEmpty) {
  std::mt19937_64 rng(106);
  expect_clean(props::optimal_nonempty(rng, 200), 200);
}

TEST(Theorems, DominanceIsStrictPartialOrder) {
  std::mt19937_64 rng(107);
  expect_clean(props::dominance_order(rng, 200), 200);
}

TEST(Theorems, LargerModels) {
  random::ModelBounds b;
  b.max_depth = 4;
  b.max_histories = 10;
  b.max_agents = 3;
  for (const auto& r : props::all_suites(7, 40, b)) expect_clean(r, 40);
}

TEST(Theorems, SeedFixesTheRun) {
  const auto a = props::all_suites(3, 20);
  const auto b = props::all_suites(3, 20);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].checks, b[i].checks) << a[i].name;
}
