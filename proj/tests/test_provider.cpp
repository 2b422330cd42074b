#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "gradeband/error.hpp"
#include "gradeband/provider.hpp"

using namespace gradeband;
using namespace std::chrono_literals;

namespace {

struct FakeClock {
  TokenBucket::Clock::time_point t{};
  std::vector<std::chrono::milliseconds> sleeps;

  Sleeper sleeper() {
    return [this](std::chrono::milliseconds d) {
      sleeps.push_back(d);
      t += d;
    };
  }
  std::function<TokenBucket::Clock::time_point()> now() {
    return [this] { return t; };
  }
};

}  // namespace

TEST_CASE("backoff grows geometrically", "[provider][retry]") {
  RetryPolicy p;
  p.initial_backoff = 100ms;
  p.multiplier = 3.0;
  CHECK(p.backoff_before(1) == 0ms);
  CHECK(p.backoff_before(2) == 100ms);
  CHECK(p.backoff_before(3) == 300ms);
  CHECK(p.backoff_before(4) == 900ms);
}

TEST_CASE("with_retry retries provider errors only", "[provider][retry]") {
  std::vector<std::chrono::milliseconds> slept;
  RetryPolicy p{4, 10ms, 2.0, [&](std::chrono::milliseconds d) { slept.push_back(d); }};

  int calls = 0;
  const int v = with_retry(p, [&] {
    if (++calls < 3) throw Error(ErrorKind::ProviderError, "flaky");
    return 7;
  });
  CHECK(v == 7);
  CHECK(calls == 3);
  CHECK(slept == std::vector{10ms, 20ms});

  calls = 0;
  slept.clear();
  CHECK_THROWS_AS(with_retry(p, [&]() -> int {
                    ++calls;
                    throw Error(ErrorKind::ProviderError, "down");
                  }),
                  Error);
  CHECK(calls == 4);
  CHECK(slept.size() == 3);

  calls = 0;
  try {
    with_retry(p, [&]() -> int {
      ++calls;
      throw Error(ErrorKind::ParseError, "not transient");
    });
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  CHECK(calls == 1);
}

TEST_CASE("token bucket paces after the burst", "[provider][rate-limit]") {
  FakeClock clock;
  TokenBucket bucket(2.0, 3.0, clock.sleeper(), clock.now());
  for (int i = 0; i < 3; ++i) bucket.acquire();
  CHECK(clock.sleeps.empty());
  bucket.acquire();
  REQUIRE(clock.sleeps.size() == 1);
  CHECK(clock.sleeps[0] == 500ms);
  for (int i = 0; i < 4; ++i) bucket.acquire();
  // four more tokens at 2/s take two seconds of simulated time
  CHECK(clock.t - TokenBucket::Clock::time_point{} == 2500ms);
}

TEST_CASE("token bucket refills while idle", "[provider][rate-limit]") {
  FakeClock clock;
  TokenBucket bucket(1.0, 2.0, clock.sleeper(), clock.now());
  bucket.acquire();
  bucket.acquire();
  clock.t += 10s;  // refill caps at capacity
  bucket.acquire();
  bucket.acquire();
  CHECK(clock.sleeps.empty());
  bucket.acquire();
  CHECK(clock.sleeps.size() == 1);
}

TEST_CASE("non-positive rate disables limiting", "[provider][rate-limit]") {
  FakeClock clock;
  TokenBucket bucket(0.0, 1.0, clock.sleeper(), clock.now());
  for (int i = 0; i < 100; ++i) bucket.acquire();
  CHECK(clock.sleeps.empty());
}

TEST_CASE("mock provider is a pure function of seed and prompt", "[provider][mock]") {
  const std::string prompt =
      "Why is the sky blue?\n\nPlease provide the explanation in plain text with no bullet points using very easy "
      "words that elementary school 1st grade students will know. Answer in detail with at a maximum of 5 words "
      "per sentence.";
  MockProvider a(42), b(42), c(43);
  const auto first = a.complete(prompt);
  CHECK(first == a.complete(prompt));
  CHECK(first == b.complete(prompt));
  CHECK(first != c.complete(prompt));
  CHECK_FALSE(first.empty());

  MockProvider fixed(1, "Fixed reply.");
  CHECK(fixed.complete("anything") == "Fixed reply.");
}

TEST_CASE("mock provider respects the sentence cap", "[provider][mock]") {
  MockProvider p(7);
  for (int cap : {4, 8, 20}) {
    const auto text = p.complete("at a maximum of " + std::to_string(cap) + " words per sentence");
    std::size_t words = 0;
    bool in_word = false;
    for (char ch : text) {
      if (ch == ' ' || ch == '.') {
        if (in_word) ++words;
        in_word = false;
        if (ch == '.') {
          CHECK(words <= static_cast<std::size_t>(cap));
          words = 0;
        }
      } else {
        in_word = true;
      }
    }
  }
}

TEST_CASE("hashed embedder", "[provider][embedder]") {
  HashedBowEmbedder e(64);
  const auto v = e.embed("The cat sat on the mat.");
  REQUIRE(v.size() == 64);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  CHECK(std::abs(norm - 1.0) < 1e-12);
  CHECK(v == e.embed("the CAT sat on THE mat"));
  CHECK(e.embed("") == std::vector<double>(64, 0.0));

  // "the" occurs twice: its bucket holds 2/sqrt(1+1+1+1+4) when no collisions
  const auto idx = fnv1a64("the") % 64;
  CHECK(v[idx] >= 2.0 / std::sqrt(8.0) - 1e-12);
}

TEST_CASE("fnv1a64 reference values", "[provider]") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
