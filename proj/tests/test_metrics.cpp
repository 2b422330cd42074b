#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "gradeband/error.hpp"
#include "gradeband/metrics.hpp"
#include "test_support.hpp"

using namespace gradeband;
using Catch::Approx;
using gradeband::testing::bundled_lists;
using gradeband::testing::stats_with;

namespace {

// "The cat sat on the mat." counted by hand.
TextStats cat_stats() {
  auto s = stats_with(1, 6, 6);
  s.characters = 17;
  s.letters = 17;
  s.unique_words = 5;
  return s;
}

constexpr double kTol = 1e-9;

}  // namespace

TEST_CASE("Flesch reading ease", "[metrics][fres]") {
  CHECK(flesch_reading_ease(cat_stats()) == Approx(116.145).margin(kTol));
  CHECK(flesch_reading_ease(stats_with(1, 1, 1)) == Approx(121.22).margin(kTol));
  CHECK(flesch_reading_ease(stats_with(2, 10, 20)) < flesch_reading_ease(stats_with(2, 10, 10)));
  CHECK_THROWS_AS(flesch_reading_ease(stats_with(0, 5, 5)), Error);
  CHECK_THROWS_AS(flesch_reading_ease(stats_with(1, 0, 0)), Error);
}

TEST_CASE("Flesch-Kincaid grade", "[metrics][fkgl]") {
  CHECK(flesch_kincaid_grade(cat_stats()) == Approx(-1.45).margin(kTol));
  CHECK(flesch_kincaid_grade(stats_with(2, 20, 30)) == Approx(6.01).margin(kTol));
  CHECK(flesch_kincaid_grade(stats_with(1, 20, 30)) > flesch_kincaid_grade(stats_with(2, 20, 30)));
}

TEST_CASE("Coleman-Liau index", "[metrics][cli]") {
  CHECK(coleman_liau(cat_stats()) == Approx(0.0588 * 1700.0 / 6.0 - 0.296 * 100.0 / 6.0 - 15.8).margin(kTol));
  CHECK(coleman_liau(cat_stats()) == Approx(-4.0733333333).margin(1e-9));
  auto s = stats_with(5, 100, 150);
  s.letters = 500;
  CHECK(coleman_liau(s) == Approx(12.12).margin(kTol));
  s.letters = 0;
  CHECK(coleman_liau(s) == Approx(-0.296 * 5 - 15.8).margin(kTol));
}

TEST_CASE("Linsear Write", "[metrics][lw]") {
  CHECK(linsear_write(cat_stats()) == Approx(2.0).margin(kTol));
  auto s = stats_with(1, 15, 30);
  s.easy_words = 10;
  s.hard_words = 5;
  CHECK(linsear_write(s) == Approx(12.5).margin(kTol));
  CHECK(linsear_write(stats_with(1, 22, 22)) == Approx(11.0).margin(kTol));
  CHECK(linsear_write(stats_with(1, 18, 18)) == Approx(8.0).margin(kTol));
  // i == 20 takes the (i - 2) / 2 branch.
  CHECK(linsear_write(stats_with(1, 20, 20)) == Approx(9.0).margin(kTol));
}

TEST_CASE("Gunning fog", "[metrics][fog]") {
  CHECK(gunning_fog(cat_stats()) == Approx(2.4).margin(kTol));
  auto all_complex = stats_with(2, 10, 30);
  all_complex.complex_words = 10;
  CHECK(gunning_fog(all_complex) == Approx(0.4 * (5.0 + 100.0)).margin(kTol));
  auto s = stats_with(2, 20, 30);
  s.complex_words = 2;
  CHECK(gunning_fog(s) == Approx(8.0).margin(kTol));
}

TEST_CASE("Dale-Chall", "[metrics][dc]") {
  CHECK(dale_chall(cat_stats()) == Approx(0.2976).margin(kTol));
  auto s = stats_with(2, 20, 20);
  s.dc_difficult_pct = 5.0;
  CHECK(dale_chall(s) == Approx(1.2855).margin(kTol));
  s.dc_difficult_pct = 50.0;
  CHECK(dale_chall(s) == Approx(12.0275).margin(kTol));
}

TEST_CASE("Spache", "[metrics][spache]") {
  CHECK(spache(cat_stats()) == Approx(1.685).margin(kTol));
  CHECK(spache(stats_with(1, 1, 1)) == Approx(0.98).margin(kTol));
  auto s = stats_with(2, 20, 20);
  s.spache_unfamiliar_pct = 50.0;
  CHECK(spache(s) == Approx(6.549).margin(kTol));
}

TEST_CASE("Automated readability index", "[metrics][ari]") {
  CHECK(automated_readability(cat_stats()) == Approx(-5.085).margin(kTol));
  auto s = stats_with(1, 20, 20);
  s.characters = 100;
  CHECK(automated_readability(s) == Approx(12.12).margin(kTol));
  CHECK(is_held_out(MetricId::ARI));
  for (auto id : kIntegratedMetrics) CHECK_FALSE(is_held_out(id));
}

TEST_CASE("metric names round-trip", "[metrics]") {
  for (auto id : kAllMetrics) CHECK(metric_from_name(name(id)) == id);
  CHECK_FALSE(metric_from_name("SMOG").has_value());
}

TEST_CASE("default band mapping", "[metrics][bands]") {
  const auto cfg = BandMappingConfig::defaults();
  CHECK(map_to_band(MetricId::FKGL, -1.45, cfg).index() == 1);
  CHECK(map_to_band(MetricId::FKGL, 7.0, cfg).index() == 4);
  CHECK(map_to_band(MetricId::FRES, 25.0, cfg).index() == 6);

  // Grade-number cut points belong to the easier band.
  CHECK(map_to_band(MetricId::ARI, 2.5, cfg).index() == 1);
  CHECK(map_to_band(MetricId::ARI, 2.5000001, cfg).index() == 2);
  CHECK(map_to_band(MetricId::ARI, 12.5, cfg).index() == 5);
  CHECK(map_to_band(MetricId::ARI, 40.0, cfg).index() == 6);

  CHECK(map_to_band(MetricId::FRES, 100.0, cfg).index() == 1);
  CHECK(map_to_band(MetricId::FRES, 99.99, cfg).index() == 2);
  CHECK(map_to_band(MetricId::FRES, 60.0, cfg).index() == 4);
  CHECK(map_to_band(MetricId::FRES, 50.0, cfg).index() == 5);
  CHECK(map_to_band(MetricId::FRES, 49.99, cfg).index() == 6);

  CHECK(map_to_band(MetricId::DC, 3.99, cfg).index() == 1);
  CHECK(map_to_band(MetricId::DC, 4.0, cfg).index() == 2);
  CHECK(map_to_band(MetricId::DC, 7.5, cfg).index() == 5);
  CHECK(map_to_band(MetricId::DC, 9.0, cfg).index() == 6);

  CHECK_THROWS_AS(map_to_band(MetricId::DC, std::nan(""), cfg), Error);
}

TEST_CASE("band mapping is total and weakly monotone", "[metrics][bands][property]") {
  const auto cfg = BandMappingConfig::defaults();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> raw(-200.0, 250.0);
  for (auto id : kAllMetrics) {
    for (int trial = 0; trial < 2000; ++trial) {
      double a = raw(rng);
      double b = raw(rng);
      if (a > b) std::swap(a, b);
      const int ba = map_to_band(id, a, cfg).index();
      const int bb = map_to_band(id, b, cfg).index();
      REQUIRE(ba >= 1);
      REQUIRE(bb <= 6);
      if (id == MetricId::FRES) {
        REQUIRE(bb <= ba);
      } else {
        REQUIRE(bb >= ba);
      }
    }
  }
}

TEST_CASE("band mapping config file", "[metrics][bands][config]") {
  const auto defaults = BandMappingConfig::defaults();
  CHECK(BandMappingConfig::from_json(defaults.to_json()) == defaults);
  CHECK(BandMappingConfig::load(std::string(GRADEBAND_DATA_DIR) + "/band_mapping.json") == defaults);

  const auto custom = BandMappingConfig::from_json(
      nlohmann::json::parse(R"({"metrics": {"FKGL": {"cuts": [1, 2, 3, 4, 5]}}})"));
  CHECK(custom.table(MetricId::FKGL).cuts[4] == 5.0);
  CHECK(custom.table(MetricId::FRES) == defaults.table(MetricId::FRES));
  CHECK(map_to_band(MetricId::FKGL, 4.5, custom).index() == 5);

  auto expect_bad = [](const char* text) {
    try {
      BandMappingConfig::from_json(nlohmann::json::parse(text));
      FAIL("expected BadConfig for " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadConfig);
    }
  };
  expect_bad(R"({"metrics": {"FKGL": {"cuts": [1, 2, 2, 4, 5]}}})");
  expect_bad(R"({"metrics": {"FKGL": {"cuts": [5, 4, 3, 2, 1]}}})");
  expect_bad(R"({"metrics": {"FRES": {"cuts": [50, 60, 80, 90, 100]}}})");
  expect_bad(R"({"metrics": {"FKGL": {"cuts": [1, 2, 3]}}})");
  expect_bad(R"({"metrics": {"SMOG": {}}})");
  expect_bad(R"({"metrics": {"FKGL": {"direction": "sideways"}}})");
  expect_bad(R"([1, 2])");

  BandMappingConfig cfg = defaults;
  CHECK_THROWS_AS(cfg.set_table(MetricId::LW, BandTable{Direction::Ascending, {3, 2, 1, 4, 5}, CutOwner::EasierBand}), Error);
}

TEST_CASE("score_all", "[metrics][score-all]") {
  const auto cfg = BandMappingConfig::defaults();
  const auto& lists = bundled_lists();
  const auto report = score_all("The cat sat on the mat.", lists, cfg);
  CHECK(report[MetricId::FRES].raw == Approx(116.145).margin(kTol));
  CHECK(report[MetricId::FOG].raw == Approx(2.4).margin(kTol));
  CHECK(report[MetricId::ARI].raw == Approx(-5.085).margin(kTol));
  for (auto id : kAllMetrics) {
    CHECK(report[id].metric == id);
    CHECK(report[id].band == map_to_band(id, report[id].raw, cfg));
    CHECK(report[id].raw == raw_score(id, report.stats));
  }
  CHECK(report.stats == compute_text_stats("The cat sat on the mat.", lists));
  CHECK(score_all("The cat sat on the mat.", lists, cfg) == report);

  const auto go = score_all("Go.", lists, cfg);
  CHECK(go.stats.words == 1);
  CHECK(go.stats.sentences == 1);

  CHECK_THROWS_AS(score_all("", lists, cfg), Error);
}
