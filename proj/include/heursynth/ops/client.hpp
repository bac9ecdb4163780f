#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace heursynth {

struct ChatReply {
  std::string text;
  /// Provider-reported usage, when the provider sends it.
  std::optional<long long> input_tokens;
  std::optional<long long> output_tokens;
};

class ChatModelClient {
 public:
  virtual ~ChatModelClient() = default;
  /// One single-shot user message. Throws Error(ClientError) or Error(ScriptExhausted).
  virtual ChatReply complete(const std::string& prompt) = 0;
  virtual const std::string& model_name() const = 0;
};

/// Replays canned replies in order and remembers every prompt.
class ScriptedClient : public ChatModelClient {
 public:
  ScriptedClient(std::string model_name, std::vector<std::string> replies);
  ChatReply complete(const std::string& prompt) override;
  const std::string& model_name() const override { return model_; }

  std::vector<std::string> prompts() const;
  std::size_t remaining() const;

 private:
  std::string model_;
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
  std::vector<std::string> prompts_;
  mutable std::mutex mu_;
};

struct HttpClientConfig {
  /// Base URL; requests go to <endpoint>/chat/completions.
  std::string endpoint = "https://api.openai.com/v1";
  std::string model = "gpt-5-mini";
  /// Name of the environment variable holding the API key.
  std::string api_key_env = "OPENAI_API_KEY";
  int max_attempts = 4;
  double backoff_initial = 1.0;
  double backoff_factor = 2.0;
  double timeout_seconds = 120.0;
  std::optional<double> temperature;
};

/// Chat-completions client for OpenAI-compatible HTTP endpoints. Retries
/// transport errors, 429 and 5xx with exponential backoff.
class OpenAiCompatibleClient : public ChatModelClient {
 public:
  explicit OpenAiCompatibleClient(HttpClientConfig config);
  ChatReply complete(const std::string& prompt) override;
  const std::string& model_name() const override { return config_.model; }

  /// Replaces the sleep used between attempts (tests).
  std::function<void(double)> sleep;

 private:
  HttpClientConfig config_;
};

/// True when this build can reach https:// endpoints.
bool https_supported();

}  // namespace heursynth
