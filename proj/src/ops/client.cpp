#include "heursynth/ops/client.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include "heursynth/common/error.hpp"
#include "heursynth/common/json.hpp"

namespace heursynth {

ScriptedClient::ScriptedClient(std::string model_name, std::vector<std::string> replies)
    : model_(std::move(model_name)), replies_(std::move(replies)) {}

ChatReply ScriptedClient::complete(const std::string& prompt) {
  std::lock_guard lock(mu_);
  prompts_.push_back(prompt);
  if (next_ >= replies_.size()) {
    throw Error(ErrorKind::ScriptExhausted, "call " + std::to_string(prompts_.size()) + " but only " +
                                                std::to_string(replies_.size()) + " scripted replies");
  }
  return ChatReply{replies_[next_++], std::nullopt, std::nullopt};
}

std::vector<std::string> ScriptedClient::prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

std::size_t ScriptedClient::remaining() const {
  std::lock_guard lock(mu_);
  return replies_.size() - next_;
}

bool https_supported() {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
  return true;
#else
  return false;
#endif
}

namespace {

struct Endpoint {
  std::string base;    // scheme://host[:port]
  std::string prefix;  // path without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw Error(ErrorKind::InvalidConfig, "endpoint needs a scheme: " + url);
  auto path = url.find('/', scheme + 3);
  Endpoint e;
  e.base = url.substr(0, path);
  e.prefix = path == std::string::npos ? std::string{} : url.substr(path);
  while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
  return e;
}

bool retryable(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

OpenAiCompatibleClient::OpenAiCompatibleClient(HttpClientConfig config) : config_(std::move(config)) {
  if (config_.max_attempts < 1) throw Error(ErrorKind::InvalidConfig, "max_attempts must be at least 1");
  if (config_.endpoint.rfind("https://", 0) == 0 && !https_supported()) {
    throw Error(ErrorKind::InvalidConfig, "this build has no TLS support for " + config_.endpoint);
  }
  sleep = [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
}

ChatReply OpenAiCompatibleClient::complete(const std::string& prompt) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (!key || !*key) {
    throw Error(ErrorKind::ClientError, "environment variable " + config_.api_key_env + " is not set");
  }
  Endpoint ep = split_endpoint(config_.endpoint);
  Json body{{"model", config_.model}, {"messages", Json::array({Json{{"role", "user"}, {"content", prompt}}})}};
  if (config_.temperature) body["temperature"] = *config_.temperature;
  const std::string payload = body.dump();

  httplib::Client http(ep.base);
  auto secs = static_cast<time_t>(config_.timeout_seconds);
  http.set_connection_timeout(secs, 0);
  http.set_read_timeout(secs, 0);
  http.set_write_timeout(secs, 0);
  httplib::Headers headers{{"Authorization", std::string("Bearer ") + key}};

  std::string last_error;
  double wait = config_.backoff_initial;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    auto res = http.Post(ep.prefix + "/chat/completions", headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status == 200) {
      Json doc = Json::parse(res->body, nullptr, false);
      if (doc.is_discarded()) throw Error(ErrorKind::ClientError, "response is not JSON");
      try {
        ChatReply reply;
        const Json& content = doc.at("choices").at(0).at("message").at("content");
        reply.text = content.is_string() ? content.get<std::string>() : std::string{};
        if (doc.contains("usage") && doc["usage"].is_object()) {
          const Json& u = doc["usage"];
          if (u.contains("prompt_tokens")) reply.input_tokens = u["prompt_tokens"].get<long long>();
          if (u.contains("completion_tokens")) reply.output_tokens = u["completion_tokens"].get<long long>();
        }
        return reply;
      } catch (const Json::exception& e) {
        throw Error(ErrorKind::ClientError, std::string("unexpected response shape: ") + e.what());
      }
    } else if (retryable(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
    } else {
      throw Error(ErrorKind::ClientError, "HTTP " + std::to_string(res->status) + " from " + ep.base);
    }
    if (attempt < config_.max_attempts) {
      sleep(wait);
      wait *= config_.backoff_factor;
    }
  }
  throw Error(ErrorKind::ClientError,
              "gave up after " + std::to_string(config_.max_attempts) + " attempts (" + last_error + ")");
}

}  // namespace heursynth
