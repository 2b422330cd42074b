#pragma once

#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gradeband {

/// A rater's ordering of six answers: ranking[k] is the grade level (1..6)
/// assigned to the answer whose true level is k + 1.
struct RankingObservation {
  std::string rater_id;
  std::string item_id;
  std::vector<int> ranking;
};

/// Throws NotAPermutation unless `ranking` is a bijection on {1..n}.
void require_permutation(std::span<const int> ranking);

/// Kendall's tau-a against the identity ranking.
double kendall_tau(std::span<const int> ranking);
/// |ranking[k] - (k + 1)| per position.
std::vector<int> l1_rank_distance(std::span<const int> ranking);

struct PairCounts {
  long long concordant = 0;
  long long discordant = 0;
};
PairCounts count_pairs(std::span<const int> ranking);

struct RankingSummary {
  std::size_t observations = 0;
  std::size_t raters = 0;
  double tau_pooled = 0.0;     // over all pair judgments
  double tau_per_rater = 0.0;  // mean of each rater's pooled tau
  std::vector<double> mean_l1_per_position;
};

/// Throws NoData when `obs` is empty, DimensionMismatch when rankings differ
/// in length.
RankingSummary summarize_rankings(std::span<const RankingObservation> obs);

/// CSV with header rater_id,[item_id,]position,assigned_rank. Rows of one
/// (rater, item) pair form one observation ordered by position.
std::vector<RankingObservation> read_ranking_csv(std::istream& in);

struct LikertResponse {
  std::string rater_id;
  int band = 0;
  std::array<double, 3> scores{};  // q1, q2, q3
};

/// CSV with header rater_id,band,q1,q2,q3.
std::vector<LikertResponse> read_likert_csv(std::istream& in);

struct BoxStats {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Quartiles by linear interpolation between order statistics.
/// Throws NoData on empty input.
BoxStats box_stats(std::vector<double> values);

/// (band, question index 0..2) -> box statistics.
std::map<std::pair<int, int>, BoxStats> summarize_likert(std::span<const LikertResponse> responses);

/// header band,question,count,mean,min,q1,median,q3,max
void write_box_csv(std::ostream& out, const std::map<std::pair<int, int>, BoxStats>& stats);

nlohmann::ordered_json to_json(const RankingSummary& summary);

/// Splits one CSV line; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace gradeband
