#include "gradeband/provider.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>
#include <thread>

#include "gradeband/text_stats.hpp"

namespace gradeband {

namespace {

// Word banks for the mock provider, easiest first.
const std::vector<std::string_view> kEasyWords{
    "the", "sun", "is", "big", "and", "hot", "we", "can", "see", "it",  "in",  "sky",
    "a",   "dog", "runs", "fast", "to", "play", "with", "you", "cat", "has", "fun", "red",
    "water", "goes", "up", "down", "light", "makes", "plants", "grow", "all", "day", "long"};

const std::vector<std::string_view> kMiddleWords{
    "energy", "travel", "little", "yellow", "people", "animal", "happen", "river", "mountain",
    "simple", "picture", "number", "weather", "forest", "question", "answer", "because",
    "different", "understand", "remember", "important", "together", "another", "morning"};

const std::vector<std::string_view> kHardWords{
    "photosynthesis",  "atmospheric",    "electromagnetic", "wavelength",     "dispersion",
    "molecular",       "organization",   "characteristic",  "fundamental",    "hypothesis",
    "consideration",   "infrastructure", "sophisticated",   "interpretation", "phenomenon",
    "approximately",   "environmental",  "simultaneously",  "predominantly",  "configuration"};

int parse_cap(std::string_view prompt) {
  static const std::regex re("maximum of (\\d+) words per sentence");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(prompt.begin(), prompt.end(), m, re)) return std::stoi(m[1].str());
  return 12;
}

// Share of middle and hard words, keyed on the grade phrase of an answer
// prompt, else on its difficulty phrase.
std::pair<double, double> difficulty_mix(std::string_view prompt) {
  static const std::pair<std::string_view, std::pair<double, double>> kByGrade[] = {
      {"1st grade", {0.0, 0.0}},   {"3rd grade", {0.12, 0.0}},   {"5th grade", {0.25, 0.04}},
      {"7th grade", {0.3, 0.1}},   {"10th grade", {0.35, 0.2}},  {"college", {0.35, 0.35}}};
  for (const auto& [phrase, mix] : kByGrade) {
    if (prompt.find(phrase) != std::string_view::npos) return mix;
  }
  if (prompt.find("very easy") != std::string_view::npos) return {0.05, 0.0};
  if (prompt.find("fairly difficult") != std::string_view::npos) return {0.35, 0.3};
  if (prompt.find("fairly easy") != std::string_view::npos) return {0.3, 0.08};
  return {0.3, 0.1};
}

}  // namespace

void sleep_for(std::chrono::milliseconds d) {
  if (d.count() > 0) std::this_thread::sleep_for(d);
}

std::chrono::milliseconds RetryPolicy::backoff_before(int attempt) const {
  if (attempt <= 1) return std::chrono::milliseconds{0};
  const double factor = std::pow(multiplier, attempt - 2);
  return std::chrono::milliseconds{static_cast<long long>(std::llround(initial_backoff.count() * factor))};
}

TokenBucket::TokenBucket(double rate_per_second, double capacity, Sleeper sleep,
                         std::function<Clock::time_point()> now)
    : rate_(rate_per_second),
      capacity_(std::max(capacity, 1.0)),
      tokens_(std::max(capacity, 1.0)),
      sleep_(std::move(sleep)),
      now_(std::move(now)),
      last_(now_()) {}

void TokenBucket::acquire() {
  if (rate_ <= 0.0) return;
  std::lock_guard lock(mutex_);
  while (true) {
    const auto t = now_();
    const double elapsed = std::chrono::duration<double>(t - last_).count();
    last_ = t;
    tokens_ = std::min(capacity_, tokens_ + elapsed * rate_);
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    const double wait_s = (1.0 - tokens_) / rate_;
    sleep_(std::chrono::milliseconds{static_cast<long long>(std::ceil(wait_s * 1000.0))});
  }
}

MockProvider::MockProvider(std::uint64_t seed, std::string fixed_text)
    : seed_(seed), fixed_text_(std::move(fixed_text)) {}

std::string MockProvider::complete(std::string_view prompt) {
  if (!fixed_text_.empty()) return fixed_text_;
  std::mt19937_64 rng(fnv1a64(prompt, seed_ ^ 0x9e3779b97f4a7c15ULL));
  const int cap = std::max(parse_cap(prompt), 2);
  const auto [middle_share, hard_share] = difficulty_mix(prompt);
  std::uniform_int_distribution<int> length(std::max(2, cap / 2), cap);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](const std::vector<std::string_view>& bank) {
    return bank[std::uniform_int_distribution<std::size_t>(0, bank.size() - 1)(rng)];
  };

  std::string out;
  const int sentences = 4 + static_cast<int>(rng() % 3);
  for (int s = 0; s < sentences; ++s) {
    const int words = length(rng);
    for (int w = 0; w < words; ++w) {
      const double u = unit(rng);
      std::string word(u < hard_share ? pick(kHardWords)
                                      : (u < hard_share + middle_share ? pick(kMiddleWords) : pick(kEasyWords)));
      if (w == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      if (!out.empty()) out += ' ';
      out += word;
    }
    out += '.';
  }
  return out;
}

HashedBowEmbedder::HashedBowEmbedder(std::size_t dimension) : dimension_(std::max<std::size_t>(dimension, 1)) {}

std::vector<double> HashedBowEmbedder::embed(std::string_view text) {
  std::vector<double> v(dimension_, 0.0);
  for (const auto& token : tokenize_words(text)) {
    v[fnv1a64(to_lower(token)) % dimension_] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gradeband
