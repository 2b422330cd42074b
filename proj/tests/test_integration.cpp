#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "gradeband/error.hpp"
#include "gradeband/integration.hpp"
#include "algorithm_oracle.hpp"

using namespace gradeband;

namespace {

GradeBand b(int i) { return GradeBand(i); }

}  // namespace

TEST_CASE("group_vote", "[integration][group-vote]") {
  CHECK(group_vote(std::vector{b(2), b(2)}) == b(2));
  CHECK(group_vote(std::vector{b(2), b(3)}) == b(2));
  CHECK(group_vote(std::vector{b(5), b(1), b(3)}) == b(1));
  CHECK(group_vote(std::vector{b(4), b(4), b(4)}) == b(4));
  for (std::size_t n : {0u, 1u, 4u}) {
    try {
      group_vote(std::vector<GradeBand>(n, b(1)));
      FAIL("expected WrongArity");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::WrongArity);
    }
  }
}

TEST_CASE("group_vote ignores member order", "[integration][group-vote][property]") {
  for (int x = 1; x <= 6; ++x)
    for (int y = 1; y <= 6; ++y)
      for (int z = 1; z <= 6; ++z) {
        std::vector bands{b(x), b(y), b(z)};
        std::sort(bands.begin(), bands.end());
        const auto expected = group_vote(bands);
        do {
          REQUIRE(group_vote(bands) == expected);
        } while (std::next_permutation(bands.begin(), bands.end()));
      }
}

TEST_CASE("combine_votes", "[integration]") {
  const auto mode = combine_votes({b(2), b(2), b(5)});
  CHECK(mode.final_band == b(2));
  CHECK(mode.decided_by == Decision::Mode);

  const auto mode_split = combine_votes({b(5), b(3), b(5)});
  CHECK(mode_split.final_band == b(5));
  CHECK(mode_split.decided_by == Decision::Mode);

  const auto median = combine_votes({b(1), b(3), b(6)});
  CHECK(median.final_band == b(3));
  CHECK(median.decided_by == Decision::Median);

  const auto median_unsorted = combine_votes({b(6), b(1), b(3)});
  CHECK(median_unsorted.final_band == b(3));

  const auto all = combine_votes({b(4), b(4), b(4)});
  CHECK(all.final_band == b(4));
  CHECK(all.decided_by == Decision::Unanimous);
}

TEST_CASE("integrate from metric bands", "[integration]") {
  std::map<MetricId, GradeBand> bands;
  for (auto id : kIntegratedMetrics) bands[id] = b(4);
  const auto r = integrate(bands);
  CHECK(r.group_votes == std::array{b(4), b(4), b(4)});
  CHECK(r.final_band == b(4));
  CHECK(r.decided_by == Decision::Unanimous);

  // ARI is never consulted.
  bands[MetricId::ARI] = b(6);
  CHECK(integrate(bands) == r);

  // G1 = {DC, SPACHE} disagree -> min; G2 unanimous 5; G3 = {LW, FOG} -> min.
  bands = {{MetricId::DC, b(2)},   {MetricId::SPACHE, b(3)}, {MetricId::FRES, b(5)},
           {MetricId::FKGL, b(5)}, {MetricId::CLI, b(5)},    {MetricId::LW, b(6)},
           {MetricId::FOG, b(2)}};
  const auto mixed = integrate(bands);
  CHECK(mixed.group_votes == std::array{b(2), b(5), b(2)});
  CHECK(mixed.final_band == b(2));
  CHECK(mixed.decided_by == Decision::Mode);

  bands.erase(MetricId::CLI);
  try {
    integrate(bands);
    FAIL("expected MissingMetric");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingMetric);
  }
}

TEST_CASE("group membership partitions the seven integrated metrics", "[integration]") {
  std::multiset<MetricId> seen;
  for (auto g : kGroups) {
    for (auto id : members(g)) seen.insert(id);
  }
  CHECK(seen == std::multiset<MetricId>(kIntegratedMetrics.begin(), kIntegratedMetrics.end()));
  CHECK(members(MetricGroup::WordList).size() == 2);
  CHECK(members(MetricGroup::Length).size() == 3);
  CHECK(members(MetricGroup::Syllable).size() == 2);
}

TEST_CASE("band_of_grade", "[integration][grades]") {
  CHECK(band_of_grade(8) == b(4));
  CHECK(band_of_grade(1) == b(1));
  CHECK(band_of_grade(17) == b(6));
  const std::map<int, int> expected{{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 3}, {7, 4},
                                    {9, 4}, {10, 5}, {12, 5}, {13, 6}};
  for (auto [grade, band] : expected) CHECK(band_of_grade(grade).index() == band);
  try {
    band_of_grade(0);
    FAIL("expected BadGrade");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadGrade);
  }
  CHECK_THROWS_AS(GradeBand(7), Error);
}

TEST_CASE("integrate matches the set-based transcription on random assignments", "[integration][property]") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> band(1, 6);
  for (int trial = 0; trial < 20000; ++trial) {
    std::array<GradeBand, 7> bands{};
    std::array<int, 7> raw{};
    for (std::size_t k = 0; k < 7; ++k) {
      raw[k] = band(rng);
      bands[k] = b(raw[k]);
    }
    const auto got = integrate(bands);
    const auto want = gradeband::testing::oracle_integrate(raw);
    REQUIRE(got.final_band.index() == want.final_band);
    REQUIRE(name(got.decided_by) == want.decided_by);
  }
}
