#include "gradeband/http_provider.hpp"

#include <cstdlib>

#include <httplib.h>

#include "gradeband/error.hpp"

namespace gradeband {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path without trailing slash
};

Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorKind::ConfigError, "base URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  e.prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
  return e;
}

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

class JsonClient {
 public:
  explicit JsonClient(const HttpProviderSettings& s) : settings_(s), endpoint_(split_url(s.base_url)) {
    client_ = std::make_unique<httplib::Client>(endpoint_.origin);
    if (!client_->is_valid()) {
      throw Error(ErrorKind::ConfigError, "unsupported endpoint " + endpoint_.origin +
                                              " (https needs a build with OpenSSL)");
    }
    client_->set_connection_timeout(std::chrono::seconds{10});
    client_->set_read_timeout(s.timeout);
    client_->set_write_timeout(s.timeout);
  }

  nlohmann::json post(const std::string& path, const nlohmann::json& body) {
    httplib::Headers headers;
    if (!settings_.api_key.empty()) headers.emplace("Authorization", "Bearer " + settings_.api_key);
    const auto res = client_->Post(endpoint_.prefix + path, headers, body.dump(), "application/json");
    if (!res) {
      throw Error(ErrorKind::ProviderError, "request to " + endpoint_.origin + endpoint_.prefix + path +
                                                " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw Error(ErrorKind::ProviderError,
                  "HTTP " + std::to_string(res->status) + " from " + path + ": " + res->body.substr(0, 300));
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ProviderError, std::string("malformed reply: ") + e.what());
    }
  }

  const HttpProviderSettings& settings() const { return settings_; }

 private:
  HttpProviderSettings settings_;
  Endpoint endpoint_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace

void HttpProviderSettings::apply_environment() {
  if (auto v = env("GRADEBAND_API_BASE"); !v.empty()) base_url = v;
  if (auto v = env("GRADEBAND_API_KEY"); !v.empty()) {
    api_key = v;
  } else if (auto o = env("OPENAI_API_KEY"); !o.empty()) {
    api_key = o;
  }
  if (auto v = env("GRADEBAND_CHAT_MODEL"); !v.empty()) chat_model = v;
  if (auto v = env("GRADEBAND_EMBEDDING_MODEL"); !v.empty()) embedding_model = v;
}

void HttpProviderSettings::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "provider settings must be an object");
  try {
    if (j.contains("base_url")) base_url = j.at("base_url").get<std::string>();
    if (j.contains("chat_model")) chat_model = j.at("chat_model").get<std::string>();
    if (j.contains("embedding_model")) embedding_model = j.at("embedding_model").get<std::string>();
    if (j.contains("temperature")) temperature = j.at("temperature").get<double>();
    if (j.contains("timeout_seconds")) timeout = std::chrono::seconds{j.at("timeout_seconds").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("provider settings: ") + e.what());
  }
}

struct HttpChatProvider::Impl {
  JsonClient client;
};

HttpChatProvider::HttpChatProvider(HttpProviderSettings settings)
    : impl_(std::make_unique<Impl>(Impl{JsonClient(settings)})) {}
HttpChatProvider::~HttpChatProvider() = default;

std::string HttpChatProvider::complete(std::string_view prompt) {
  const auto& s = impl_->client.settings();
  nlohmann::json body{{"model", s.chat_model},
                      {"temperature", s.temperature},
                      {"messages", {{{"role", "user"}, {"content", std::string(prompt)}}}}};
  const auto reply = impl_->client.post("/chat/completions", body);
  try {
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ProviderError, std::string("unexpected chat reply: ") + e.what());
  }
}

struct HttpEmbedder::Impl {
  JsonClient client;
};

HttpEmbedder::HttpEmbedder(HttpProviderSettings settings)
    : impl_(std::make_unique<Impl>(Impl{JsonClient(settings)})) {}
HttpEmbedder::~HttpEmbedder() = default;

std::vector<double> HttpEmbedder::embed(std::string_view text) {
  const auto& s = impl_->client.settings();
  const auto reply = impl_->client.post("/embeddings", {{"model", s.embedding_model}, {"input", std::string(text)}});
  try {
    return reply.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ProviderError, std::string("unexpected embedding reply: ") + e.what());
  }
}

}  // namespace gradeband
