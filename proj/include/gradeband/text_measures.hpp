#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gradeband/provider.hpp"
#include "gradeband/text_stats.hpp"

namespace gradeband {

/// Mean over `added` of the Euclidean distance to the nearest `base`
/// vector. Throws EmptyCorpus when either side is empty and
/// DimensionMismatch when vector lengths differ.
double diversity_gain(std::span<const std::vector<double>> base, std::span<const std::vector<double>> added);
double diversity_gain(std::span<const std::string> base, std::span<const std::string> added, Embedder& embedder);

/// exp(-mean log p) over every token of every text. Throws EmptyCorpus when
/// there are no tokens and ProviderError on a log-probability that is
/// positive or not a number.
double perplexity_from_logprobs(std::span<const std::vector<double>> logprobs);
double perplexity(std::span<const std::string> texts, LogProbProvider& provider);

/// Serves log-probabilities precomputed by an external model. JSON Lines
/// {"text": "...", "logprobs": [...]}. Unknown texts raise ProviderError.
class TableLogProbProvider : public LogProbProvider {
 public:
  TableLogProbProvider() = default;
  static TableLogProbProvider load(const std::filesystem::path& path);

  void add(std::string text, std::vector<double> logprobs);
  std::vector<double> token_logprobs(std::string_view text) override;

 private:
  std::unordered_map<std::string, std::vector<double>> table_;
};

struct SentenceLengthDistribution {
  std::map<std::size_t, std::size_t> histogram;  // words per sentence -> sentences
  std::size_t sentences = 0;
  double mean = 0.0;
  double median = 0.0;
};

/// Texts without any word are skipped. Throws EmptyCorpus when no sentence
/// remains.
SentenceLengthDistribution sentence_length_distribution(std::span<const std::string> texts,
                                                        const WordSet& abbreviations);
/// header length,count
void write_histogram_csv(std::ostream& out, const SentenceLengthDistribution& d);

struct ZipfTable {
  std::vector<std::pair<std::string, std::size_t>> entries;  // count desc, then word asc
  std::size_t total_tokens = 0;                              // before filtering
};

/// Lowercased word counts, keeping words seen at least `min_count` times.
ZipfTable zipf_frequency_table(std::span<const std::string> texts, std::size_t min_count);
/// header rank,word,count
void write_zipf_csv(std::ostream& out, const ZipfTable& table);

}  // namespace gradeband
