#pragma once

#include "gradeband/error.hpp"

namespace gradeband {

template <class Fn>
auto with_retry(const RetryPolicy& policy, Fn&& fn) -> decltype(fn()) {
  const int attempts = policy.max_attempts < 1 ? 1 : policy.max_attempts;
  for (int attempt = 1;; ++attempt) {
    if (attempt > 1 && policy.sleep) policy.sleep(policy.backoff_before(attempt));
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ProviderError || attempt >= attempts) throw;
    }
  }
}

}  // namespace gradeband
