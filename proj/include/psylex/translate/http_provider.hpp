#pragma once

// Live provider speaking the Google Cloud Translation v2 REST shape:
//
//   POST <endpoint>?key=<api key>
//   {"q": [...terms], "source": "en", "target": "nl", "format": "text"}
//   -> {"data": {"translations": [{"translatedText": "..."}, ...]}}
//
// Any endpoint answering in that shape works, which is how the tests drive it.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "psylex/error.hpp"
#include "psylex/translate/provider.hpp"

namespace psylex {

struct HttpProviderConfig {
  /// scheme://host[:port]/path
  std::string endpoint = "https://translation.googleapis.com/language/translate/v2";
  /// Environment variable holding the API key.
  std::string api_key_env = "PSYLEX_TRANSLATE_API_KEY";
  std::string provider_id = "google-v2";
  int timeout_seconds = 30;
};

class HttpProvider : public TranslationProvider {
 public:
  explicit HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    const auto scheme_end = config_.endpoint.find("://");
    if (scheme_end == std::string::npos)
      throw ConfigError("provider endpoint must start with http:// or https://: '" + config_.endpoint + "'");
    const auto path_start = config_.endpoint.find('/', scheme_end + 3);
    base_ = config_.endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : config_.endpoint.substr(path_start);
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) api_key_ = key;
  }

  std::string id() const override { return config_.provider_id; }

  std::vector<std::optional<std::string>> translate(const std::vector<TranslationQuery>& batch,
                                                    std::string_view source_language,
                                                    std::string_view target_language) override {
    nlohmann::json body{{"source", source_language}, {"target", target_language}, {"format", "text"}};
    body["q"] = nlohmann::json::array();
    for (const auto& q : batch) body["q"].push_back(q.term);
    // The v2 API has no context field; endpoints that understand one can use it.
    if (std::any_of(batch.begin(), batch.end(), [](const auto& q) { return !q.category_hint.empty(); })) {
      body["context"] = nlohmann::json::array();
      for (const auto& q : batch) body["context"].push_back(q.category_hint);
    }

    httplib::Client client(base_);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);
    std::string path = path_;
    if (!api_key_.empty()) path += (path.find('?') == std::string::npos ? "?key=" : "&key=") + api_key_;

    const auto res = client.Post(path, body.dump(), "application/json");
    if (!res) throw TransientProviderError("translation request failed: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
      throw TransientProviderError("translation endpoint returned HTTP " + std::to_string(res->status));
    if (res->status != 200)
      throw Error("translation endpoint returned HTTP " + std::to_string(res->status) + ": " +
                  res->body.substr(0, 200));

    std::vector<std::optional<std::string>> out;
    try {
      const auto j = nlohmann::json::parse(res->body);
      for (const auto& t : j.at("data").at("translations")) {
        const auto it = t.find("translatedText");
        out.push_back(it != t.end() && it->is_string() && !it->get<std::string>().empty()
                          ? std::optional(it->get<std::string>())
                          : std::nullopt);
      }
    } catch (const nlohmann::json::exception& e) {
      throw TransientProviderError(std::string("malformed translation response: ") + e.what());
    }
    return out;
  }

 private:
  HttpProviderConfig config_;
  std::string base_;
  std::string path_;
  std::string api_key_;
};

}  // namespace psylex
