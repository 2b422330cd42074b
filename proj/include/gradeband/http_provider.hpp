#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradeband/provider.hpp"

namespace gradeband {

/// Endpoint settings for an OpenAI-compatible HTTP API.
struct HttpProviderSettings {
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;  // sent as a bearer token when nonempty
  std::string chat_model = "gpt-4o-mini";
  std::string embedding_model = "text-embedding-3-small";
  double temperature = 0.0;
  std::chrono::seconds timeout{120};

  /// Overrides fields from GRADEBAND_API_BASE, GRADEBAND_API_KEY (falling
  /// back to OPENAI_API_KEY), GRADEBAND_CHAT_MODEL, GRADEBAND_EMBEDDING_MODEL.
  void apply_environment();
  /// Overrides fields present in {"base_url", "chat_model",
  /// "embedding_model", "temperature", "timeout_seconds"}. Keys are never
  /// read from files. Throws ConfigError on wrong types.
  void apply_json(const nlohmann::json& j);
};

/// POST {base}/chat/completions with one user message. Transport errors,
/// non-2xx statuses and malformed replies raise ProviderError.
class HttpChatProvider : public TextProvider {
 public:
  explicit HttpChatProvider(HttpProviderSettings settings);
  ~HttpChatProvider() override;

  std::string complete(std::string_view prompt) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// POST {base}/embeddings.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(HttpProviderSettings settings);
  ~HttpEmbedder() override;

  std::vector<double> embed(std::string_view text) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gradeband
