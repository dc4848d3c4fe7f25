#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "posthoc/axioms.hpp"
#include "posthoc/generators.hpp"
#include "posthoc/serialize.hpp"

using namespace posthoc;

namespace {

using CE = CertaintyEquivalent<Rational>;

}  // namespace

TEST(ForEachIndex, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  for_each_index(hits.size(), Execution::Parallel, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_GE(parallel_workers(), 1);
}

TEST(ForEachIndex, RethrowsWorkerExceptions) {
  std::atomic<int> ran{0};
  EXPECT_THROW(for_each_index(64, Execution::Parallel,
                              [&](std::size_t i) {
                                ++ran;
                                if (i == 17) throw std::runtime_error("boom");
                              }),
               std::runtime_error);
  EXPECT_EQ(ran.load(), 64);
}

TEST(NestingGrid, ParallelMatchesSerial) {
  const auto alphas = level_grid<Rational>(1, 99, 3, 100);
  const auto ps = level_grid<Rational>(0, 100, 2, 100);
  for (const auto& rho : {CE::expectation(), CE::power_mean(Rational(2)), CE::quantile(Rational(1, 2))}) {
    const auto loss = LossFunction<Rational>::scaled(Rational(11, 10));
    const auto serial = nesting_grid(rho, loss, alphas, ps, Execution::Serial);
    const auto parallel = nesting_grid(rho, loss, alphas, ps, Execution::Parallel);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      EXPECT_EQ(serial[i].alpha, parallel[i].alpha);
      EXPECT_EQ(serial[i].p, parallel[i].p);
      EXPECT_EQ(serial[i].score, parallel[i].score);
      EXPECT_EQ(serial[i].valid, parallel[i].valid);
    }
    const auto a = check_nesting(rho, loss, alphas, ps, Execution::Serial);
    const auto b = check_nesting(rho, loss, alphas, ps, Execution::Parallel);
    EXPECT_EQ(report_to_json(a).dump(), report_to_json(b).dump());
  }
}

TEST(ReplicationAudit, ParallelReportIsIdenticalToSerial) {
  const auto suite = generate_profile_suite<Rational>(61, 40);
  for (const auto& rho : {CE::expectation(), CE::esssup(), CE::quantile(Rational(9, 10))}) {
    const auto serial = check_replication(rho, suite, 61, Execution::Serial);
    const auto parallel = check_replication(rho, suite, 61, Execution::Parallel);
    EXPECT_EQ(report_to_json(serial).dump(), report_to_json(parallel).dump()) << rho.name();
  }
}

TEST(ReplicationAudit, DoubleBackendAgreesOnVerdicts) {
  const auto exact = generate_profile_suite<Rational>(62, 40);
  const auto approx = generate_profile_suite<double>(62, 40);
  EXPECT_TRUE(check_replication(CE::expectation(), exact, 62).passed);
  EXPECT_TRUE(check_replication(CertaintyEquivalent<double>::expectation(), approx, 62, Execution::Parallel).passed);
  EXPECT_FALSE(check_replication(CertaintyEquivalent<double>::esssup(), approx, 62, Execution::Parallel).passed);
}
