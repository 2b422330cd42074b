#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "gradeband/error.hpp"
#include "gradeband/survey.hpp"

using namespace gradeband;

namespace {

// Tau by brute force over sign products of all pairs.
double tau_oracle(const std::vector<int>& r) {
  int sum = 0, pairs = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (i >= j) continue;
      const int a = (static_cast<int>(i) < static_cast<int>(j)) ? 1 : -1;
      const int b = r[i] < r[j] ? 1 : -1;
      sum += a * b;
      ++pairs;
    }
  return static_cast<double>(sum) / pairs;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("kendall tau", "[survey][tau]") {
  CHECK(kendall_tau(std::vector{1, 2, 3, 4, 5, 6}) == 1.0);
  CHECK(kendall_tau(std::vector{6, 5, 4, 3, 2, 1}) == -1.0);
  CHECK(std::abs(kendall_tau(std::vector{1, 2, 3, 5, 4, 6}) - 13.0 / 15.0) < 1e-15);

  std::vector<int> r{1, 2, 3, 4, 5, 6};
  do {
    CHECK(kendall_tau(r) == tau_oracle(r));
    auto rev = r;
    std::reverse(rev.begin(), rev.end());
    CHECK(kendall_tau(rev) == -kendall_tau(r));
  } while (std::next_permutation(r.begin(), r.end()));
}

TEST_CASE("L1 rank distance", "[survey][l1]") {
  CHECK(l1_rank_distance(std::vector{6, 5, 4, 3, 2, 1}) == std::vector{5, 3, 1, 1, 3, 5});
  CHECK(l1_rank_distance(std::vector{1, 2, 3, 4, 5, 6}) == std::vector{0, 0, 0, 0, 0, 0});
  CHECK(l1_rank_distance(std::vector{2, 1, 3, 4, 5, 6}) == std::vector{1, 1, 0, 0, 0, 0});
}

TEST_CASE("rankings must be permutations", "[survey]") {
  for (const auto& bad : {std::vector{1, 1, 3, 4, 5, 6}, std::vector{0, 1, 2, 3, 4, 5}, std::vector{1, 2, 3, 4, 5, 7},
                          std::vector{1}}) {
    CHECK(kind_of([&] { kendall_tau(bad); }) == ErrorKind::NotAPermutation);
    CHECK(kind_of([&] { l1_rank_distance(bad); }) == ErrorKind::NotAPermutation);
  }
}

TEST_CASE("pooled and per-rater tau", "[survey][summary]") {
  // rater a: two perfect rankings; rater b: one reversal
  const std::vector<RankingObservation> obs{
      {"a", "1", {1, 2, 3, 4, 5, 6}}, {"a", "2", {1, 2, 3, 4, 5, 6}}, {"b", "1", {6, 5, 4, 3, 2, 1}}};
  const auto s = summarize_rankings(obs);
  CHECK(s.observations == 3);
  CHECK(s.raters == 2);
  CHECK(std::abs(s.tau_pooled - (15.0 + 15.0 - 15.0) / 45.0) < 1e-15);
  CHECK(s.tau_per_rater == 0.0);
  CHECK(s.mean_l1_per_position == std::vector{5.0 / 3, 1.0, 1.0 / 3, 1.0 / 3, 1.0, 5.0 / 3});
  CHECK(kind_of([] { summarize_rankings({}); }) == ErrorKind::NoData);
}

TEST_CASE("ranking CSV", "[survey][csv]") {
  std::istringstream in(
      "rater_id,item_id,position,assigned_rank\n"
      "r1,q1,2,1\nr1,q1,1,2\nr1,q1,3,3\n"
      "r2,q1,1,1\nr2,q1,2,2\nr2,q1,3,3\n");
  const auto obs = read_ranking_csv(in);
  REQUIRE(obs.size() == 2);
  CHECK(obs[0].ranking == std::vector{2, 1, 3});
  CHECK(obs[1].rater_id == "r2");

  std::istringstream no_item("rater_id,position,assigned_rank\nx,1,2\nx,2,1\n");
  CHECK(read_ranking_csv(no_item)[0].ranking == std::vector{2, 1});

  std::istringstream dup_rank("rater_id,position,assigned_rank\nx,1,1\nx,2,1\n");
  CHECK(kind_of([&] { read_ranking_csv(dup_rank); }) == ErrorKind::NotAPermutation);
  std::istringstream missing("rater,position,assigned_rank\n");
  CHECK(kind_of([&] { read_ranking_csv(missing); }) == ErrorKind::MissingField);
  std::istringstream bad_num("rater_id,position,assigned_rank\nx,one,1\n");
  CHECK(kind_of([&] { read_ranking_csv(bad_num); }) == ErrorKind::ParseError);
}

TEST_CASE("box statistics", "[survey][likert]") {
  const auto b = box_stats({4, 1, 3, 2, 5});
  CHECK(b.count == 5);
  CHECK(b.mean == 3.0);
  CHECK(b.min == 1.0);
  CHECK(b.q1 == 2.0);
  CHECK(b.median == 3.0);
  CHECK(b.q3 == 4.0);
  CHECK(b.max == 5.0);
  const auto even = box_stats({1, 2, 3, 4});
  CHECK(even.median == 2.5);
  CHECK(even.q1 == 1.75);
  CHECK(even.q3 == 3.25);
  CHECK(kind_of([] { box_stats({}); }) == ErrorKind::NoData);
}

TEST_CASE("Likert CSV summary", "[survey][likert]") {
  std::istringstream in("rater_id,band,q1,q2,q3\na,1,5,4,3\nb,1,3,4,5\n\"c,d\",2,1,1,1\n");
  const auto responses = read_likert_csv(in);
  REQUIRE(responses.size() == 3);
  CHECK(responses[2].rater_id == "c,d");
  const auto stats = summarize_likert(responses);
  CHECK(stats.size() == 6);
  CHECK(stats.at({1, 0}).mean == 4.0);
  CHECK(stats.at({1, 2}).median == 4.0);
  std::ostringstream csv;
  write_box_csv(csv, stats);
  CHECK(csv.str().starts_with("band,question,count,mean,min,q1,median,q3,max\n1,q1,2,4,3,3.5,4,4.5,5\n"));

  std::istringstream bad_band("rater_id,band,q1,q2,q3\na,7,1,1,1\n");
  CHECK(kind_of([&] { read_likert_csv(bad_band); }) == ErrorKind::BadGrade);
  std::istringstream short_row("rater_id,band,q1,q2,q3\na,1,1\n");
  CHECK(kind_of([&] { read_likert_csv(short_row); }) == ErrorKind::ParseError);
}
