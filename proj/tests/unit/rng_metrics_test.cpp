#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "platoonsim/metrics.hpp"
#include "platoonsim/rng.hpp"

namespace ps = platoonsim;
namespace mx = platoonsim::metrics;

TEST(Rng, HashVectors) {
  EXPECT_EQ(ps::fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(ps::fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(ps::fnv1a64("foobar"), 0x85944171f73967e8ull);
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(ps::splitmix64(0), 0xe220a8397b1dcdafull);
}

TEST(Rng, GoldenVector) {
  // Frozen output of stream ("shadow/veh1", seed 42).
  ps::RngStream r(42, "shadow/veh1");
  EXPECT_EQ(r.next_u64(), 5335284641324474676ull);
  EXPECT_EQ(r.next_u64(), 10026134684136997649ull);
  EXPECT_EQ(r.next_u64(), 457174242640542007ull);
  EXPECT_EQ(r.next_u64(), 15645306828060814202ull);
  EXPECT_EQ(r.draws(), 4u);
}

TEST(Rng, SeedingMatchesStandardEngine) {
  const std::uint64_t seed = ps::splitmix64(ps::splitmix64(42) ^ ps::fnv1a64("shadow/veh1"));
  std::mt19937_64 ref(seed);
  ps::RngStream r(42, "shadow/veh1");
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(r.next_u64(), ref());
}

TEST(Rng, SameLabelSameStream) {
  ps::RngStream a(7, "link/ul/veh2"), b(7, "link/ul/veh2");
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.uniform(), b.uniform());
}

TEST(Rng, LabelsAndSeedsSeparateStreams) {
  ps::RngStream a(7, "a"), b(7, "b"), c(8, "a");
  const double x = a.uniform();
  EXPECT_NE(x, b.uniform());
  EXPECT_NE(x, c.uniform());
}

TEST(Rng, UniformAndNormalMoments) {
  ps::RngStream r(3, "moments");
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
  }
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    ASSERT_TRUE(std::isfinite(z));
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.01);
  EXPECT_EQ(r.draws(), 3u * n);
}

TEST(Rng, RegistryRejectsReuse) {
  ps::RngRegistry reg(1);
  reg.derive("shadow/veh1");
  EXPECT_THROW(reg.derive("shadow/veh1"), ps::DuplicateLabel);
  EXPECT_THROW(ps::RngStream(1, ""), std::invalid_argument);
  EXPECT_EQ(reg.labels(), std::vector<std::string>{"shadow/veh1"});
}

TEST(Metrics, AggregateMeans) {
  const std::vector<double> one{-71.5};
  EXPECT_DOUBLE_EQ(*mx::aggregate(one).mean, -71.5);
  const std::vector<double> two{-70.0, -80.0};
  EXPECT_DOUBLE_EQ(*mx::aggregate(two).mean, -75.0);
  EXPECT_FALSE(mx::aggregate(std::vector<double>{}).mean);
  mx::WindowAccumulator acc;
  for (int i = 0; i < 100; ++i) acc.add(0.01 * i);
  const auto s = acc.take();
  EXPECT_EQ(s.count, 100u);
  EXPECT_GE(*s.mean, *s.min);
  EXPECT_LE(*s.mean, *s.max);
  EXPECT_EQ(acc.count(), 0u);
}

TEST(Metrics, NumberFormatting) {
  EXPECT_EQ(mx::format_number(0.0), "0");
  EXPECT_EQ(mx::format_number(-0.0), "0");
  EXPECT_EQ(mx::format_number(5.0), "5");
  EXPECT_EQ(mx::format_number(-71.634567), "-71.6346");
  EXPECT_EQ(mx::format_number(0.1), "0.1");
  EXPECT_EQ(mx::format_number(1234567.0), "1.23457e+06");
  EXPECT_EQ(mx::format_optional(std::nullopt), "");
}

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Metrics, CsvSinkHeaderAndDuplicateGuard) {
  const auto dir = std::filesystem::temp_directory_path() / "platoonsim_metrics_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "link.csv";
  {
    mx::CsvSink sink(file.string(), {"t", "veh", "dir", "avg_mcs", "avg_bler", "retx_count", "tx_ok", "tx_drop"});
    sink.flush_window(1.0, {{"1", "veh1", "UL", "28", "0", "0", "10", "0"}});
    EXPECT_THROW(sink.flush_window(1.0, {{"1", "veh1", "UL", "28", "0", "0", "10", "0"}}), mx::DuplicateWindow);
    sink.flush_window(2.0, {{"2", "veh1", "UL", "", "", "0", "0", "0"}});
    // Written through on every flush.
    EXPECT_EQ(slurp(file),
              "t,veh,dir,avg_mcs,avg_bler,retx_count,tx_ok,tx_drop\n"
              "1,veh1,UL,28,0,0,10,0\n"
              "2,veh1,UL,,,0,0,0\n");
  }
  std::filesystem::remove_all(dir);
}

TEST(Metrics, RecordsToRows) {
  mx::MetricRecord r;
  r.window_t = 3.0;
  r.group = mx::Group::kLink;
  r.keys = {"veh2", "DL"};
  r.values = {{"avg_mcs", 12.5}, {"avg_bler", std::nullopt}};
  r.counts = {{"retx_count", 4}};
  EXPECT_EQ(mx::to_row(r), (std::vector<std::string>{"3", "veh2", "DL", "12.5", "", "4"}));

  const auto dir = std::filesystem::temp_directory_path() / "platoonsim_records_test";
  std::filesystem::create_directories(dir);
  {
    mx::CsvSink sink((dir / "x.csv").string(), {"t", "veh", "dir", "avg_mcs", "avg_bler", "retx_count"});
    const std::vector<mx::MetricRecord> recs{r, r};
    mx::flush(recs, sink);  // one window, two rows
    EXPECT_THROW(mx::flush(std::span(recs).subspan(0, 1), sink), mx::DuplicateWindow);
  }
  EXPECT_EQ(slurp(dir / "x.csv"), "t,veh,dir,avg_mcs,avg_bler,retx_count\n3,veh2,DL,12.5,,4\n3,veh2,DL,12.5,,4\n");
  std::filesystem::remove_all(dir);
}
