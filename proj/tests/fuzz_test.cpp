#include <gtest/gtest.h>

#include "thrackle/construct.hpp"
#include "thrackle/fuzz.hpp"
#include "thrackle/report.hpp"

namespace thrackle {
namespace {

FuzzConfig small(std::uint64_t seed) {
  FuzzConfig c;
  c.count = 400;
  c.seed = seed;
  c.include_search = false;
  return c;
}

TEST(Fuzz, CountsAndNoFailures) {
  long seen = 0;
  const FuzzStats s = run_fuzz(small(1), [&](const Drawing& d, const std::string&) {
    ++seen;
    EXPECT_TRUE(verify_thrackle(d).is_thrackle);
  });
  EXPECT_EQ(s.drawings, 400);
  EXPECT_EQ(seen, 400);
  EXPECT_FALSE(s.critical());
  EXPECT_TRUE(s.failures.empty());
  EXPECT_EQ(s.n_ge_m_checks, 400);
  EXPECT_GT(s.chi_events, 0);
  EXPECT_GT(s.parity_configurations, 0);
  long total = 0;
  for (const auto& [source, n] : s.by_source) total += n;
  EXPECT_EQ(total, 400);
  for (const LemmaTally& t : s.lemmas) EXPECT_EQ(t.pass + t.fail + t.not_applicable, 400);
}

TEST(Fuzz, SameSeedSameReport) {
  const FuzzConfig c = small(5);
  EXPECT_EQ(dump_report(fuzz_report(run_fuzz(c), c)), dump_report(fuzz_report(run_fuzz(c), c)));
}

TEST(Fuzz, SeedChangesPerturbations) {
  std::vector<Drawing> a, b;
  // Perturbations start once the base and derived drawings are used up.
  FuzzConfig c = small(1);
  c.count = 2000;
  run_fuzz(c, [&](const Drawing& d, const std::string&) { a.push_back(d); });
  c.seed = 2;
  run_fuzz(c, [&](const Drawing& d, const std::string&) { b.push_back(d); });
  ASSERT_EQ(a.size(), b.size());
  EXPECT_NE(a.back().position(0).vec(), b.back().position(0).vec());
}

TEST(ChiAntisymmetry, ExactOnConstructions) {
  for (int n : {5, 6, 9}) {
    const auto [events, bad] = chi_antisymmetry(cycle_drawing(n));
    const long m = n;
    EXPECT_EQ(events, m * (m - 1) / 2);
    EXPECT_EQ(bad, 0);
  }
}

}  // namespace
}  // namespace thrackle
