#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace gradeband {

/// Text-in/text-out completion service. Implementations throw
/// Error(ProviderError) on failure.
class TextProvider {
 public:
  virtual ~TextProvider() = default;
  virtual std::string complete(std::string_view prompt) = 0;
};

/// Maps a text to a fixed-dimension feature vector.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<double> embed(std::string_view text) = 0;
};

/// Per-token natural-log probabilities of a text under a reference model.
class LogProbProvider {
 public:
  virtual ~LogProbProvider() = default;
  virtual std::vector<double> token_logprobs(std::string_view text) = 0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

void sleep_for(std::chrono::milliseconds d);

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  Sleeper sleep = sleep_for;

  /// Backoff before attempt `attempt` (1-based; attempt 1 has none).
  std::chrono::milliseconds backoff_before(int attempt) const;
};

/// Calls `fn` until it returns, sleeping with exponential backoff between
/// failed attempts. Only Error(ProviderError) is retried; the last one is
/// rethrown once attempts are exhausted.
template <class Fn>
auto with_retry(const RetryPolicy& policy, Fn&& fn) -> decltype(fn());

/// Rate limiter: `rate` tokens per second, bursts up to `capacity`.
/// A non-positive rate disables limiting.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  TokenBucket(double rate_per_second, double capacity, Sleeper sleep = sleep_for,
              std::function<Clock::time_point()> now = Clock::now);

  /// Blocks until one token is available, then takes it.
  void acquire();

 private:
  double rate_;
  double capacity_;
  double tokens_;
  Sleeper sleep_;
  std::function<Clock::time_point()> now_;
  Clock::time_point last_;
  std::mutex mutex_;
};

/// Deterministic offline provider. With `fixed_text` it always answers that
/// text; otherwise it writes graded prose whose sentence lengths and word
/// difficulty follow the "maximum of N words per sentence" and
/// "very easy / fairly easy / fairly difficult" slots of an answer prompt.
/// Output depends only on (seed, prompt).
class MockProvider : public TextProvider {
 public:
  explicit MockProvider(std::uint64_t seed = 0, std::string fixed_text = {});

  std::string complete(std::string_view prompt) override;

 private:
  std::uint64_t seed_;
  std::string fixed_text_;
};

/// L2-normalized hashed bag-of-words term frequencies.
class HashedBowEmbedder : public Embedder {
 public:
  explicit HashedBowEmbedder(std::size_t dimension = 256);

  std::vector<double> embed(std::string_view text) override;
  std::size_t dimension() const noexcept { return dimension_; }

 private:
  std::size_t dimension_;
};

std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace gradeband

#include "gradeband/provider_inl.hpp"
