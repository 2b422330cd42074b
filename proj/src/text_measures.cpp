#include "gradeband/text_measures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "gradeband/error.hpp"

namespace gradeband {

double diversity_gain(std::span<const std::vector<double>> base, std::span<const std::vector<double>> added) {
  if (base.empty() || added.empty()) throw Error(ErrorKind::EmptyCorpus, "diversity gain needs both text sets");
  const std::size_t dim = base.front().size();
  auto check = [dim](const std::vector<double>& v) {
    if (v.size() != dim) {
      throw Error(ErrorKind::DimensionMismatch,
                  "embedding of size " + std::to_string(v.size()) + ", expected " + std::to_string(dim));
    }
  };
  for (const auto& b : base) check(b);
  double sum = 0.0;
  for (const auto& x : added) {
    check(x);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : base) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d2 += (x[k] - b[k]) * (x[k] - b[k]);
      best = std::min(best, d2);
    }
    sum += std::sqrt(best);
  }
  return sum / static_cast<double>(added.size());
}

double diversity_gain(std::span<const std::string> base, std::span<const std::string> added, Embedder& embedder) {
  std::vector<std::vector<double>> eb, ea;
  eb.reserve(base.size());
  ea.reserve(added.size());
  for (const auto& t : base) eb.push_back(embedder.embed(t));
  for (const auto& t : added) ea.push_back(embedder.embed(t));
  return diversity_gain(std::span<const std::vector<double>>(eb), std::span<const std::vector<double>>(ea));
}

double perplexity_from_logprobs(std::span<const std::vector<double>> logprobs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& text : logprobs) {
    for (double lp : text) {
      if (std::isnan(lp) || lp > 0.0) {
        throw Error(ErrorKind::ProviderError, "log-probability out of range: " + std::to_string(lp));
      }
      sum += lp;
      ++n;
    }
  }
  if (n == 0) throw Error(ErrorKind::EmptyCorpus, "no tokens to score");
  return std::exp(-sum / static_cast<double>(n));
}

double perplexity(std::span<const std::string> texts, LogProbProvider& provider) {
  std::vector<std::vector<double>> all;
  all.reserve(texts.size());
  for (const auto& t : texts) all.push_back(provider.token_logprobs(t));
  return perplexity_from_logprobs(all);
}

TableLogProbProvider TableLogProbProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  TableLogProbProvider p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.contains("text") || !j.contains("logprobs")) {
        throw Error(ErrorKind::MissingField, "need \"text\" and \"logprobs\"", line_no);
      }
      p.add(j.at("text").get<std::string>(), j.at("logprobs").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what(), line_no);
    }
  }
  return p;
}

void TableLogProbProvider::add(std::string text, std::vector<double> logprobs) {
  table_[std::move(text)] = std::move(logprobs);
}

std::vector<double> TableLogProbProvider::token_logprobs(std::string_view text) {
  const auto it = table_.find(std::string(text));
  if (it == table_.end()) throw Error(ErrorKind::ProviderError, "no log-probabilities for text");
  return it->second;
}

SentenceLengthDistribution sentence_length_distribution(std::span<const std::string> texts,
                                                        const WordSet& abbreviations) {
  SentenceLengthDistribution d;
  std::vector<std::size_t> lengths;
  for (const auto& text : texts) {
    std::vector<std::string> sentences;
    try {
      sentences = segment_sentences(text, abbreviations);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::EmptyText) continue;
      throw;
    }
    for (const auto& s : sentences) {
      const auto n = tokenize_words(s).size();
      ++d.histogram[n];
      lengths.push_back(n);
    }
  }
  if (lengths.empty()) throw Error(ErrorKind::EmptyCorpus, "no sentences in corpus");
  d.sentences = lengths.size();
  double sum = 0.0;
  for (auto n : lengths) sum += static_cast<double>(n);
  d.mean = sum / static_cast<double>(lengths.size());
  std::sort(lengths.begin(), lengths.end());
  const auto mid = lengths.size() / 2;
  d.median = lengths.size() % 2 ? static_cast<double>(lengths[mid])
                                : (static_cast<double>(lengths[mid - 1]) + static_cast<double>(lengths[mid])) / 2.0;
  return d;
}

void write_histogram_csv(std::ostream& out, const SentenceLengthDistribution& d) {
  out << "length,count\n";
  for (const auto& [len, count] : d.histogram) out << len << ',' << count << '\n';
}

ZipfTable zipf_frequency_table(std::span<const std::string> texts, std::size_t min_count) {
  std::unordered_map<std::string, std::size_t> counts;
  ZipfTable table;
  for (const auto& text : texts) {
    for (const auto& w : tokenize_words(text)) {
      ++counts[to_lower(w)];
      ++table.total_tokens;
    }
  }
  for (auto& [word, count] : counts) {
    if (count >= min_count) table.entries.emplace_back(word, count);
  }
  std::sort(table.entries.begin(), table.entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return table;
}

void write_zipf_csv(std::ostream& out, const ZipfTable& table) {
  out << "rank,word,count\n";
  std::size_t rank = 0;
  for (const auto& [word, count] : table.entries) {
    std::string cell = word;
    if (cell.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : cell) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      cell = quoted + "\"";
    }
    out << ++rank << ',' << cell << ',' << count << '\n';
  }
}

}  // namespace gradeband
