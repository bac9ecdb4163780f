#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "fixtures.hpp"
#include "heursynth/ops/client.hpp"

using namespace heursynth;
using testing::error_kind;

namespace {

constexpr const char* kKey = "sk-test-secret-123";

// Serves /v1/chat/completions; the first `failures` requests get `fail_status`.
struct FakeServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int> hits{0};
  int failures = 0;
  int fail_status = 503;
  std::string last_auth;
  Json last_body;

  FakeServer() {
    server.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      int n = hits++;
      last_auth = req.get_header_value("Authorization");
      last_body = Json::parse(req.body);
      if (n < failures) {
        res.status = fail_status;
        res.set_content("{\"error\": \"busy\"}", "application/json");
        return;
      }
      Json reply{{"choices", Json::array({Json{{"message", Json{{"role", "assistant"}, {"content", "hello"}}}}})},
                 {"usage", Json{{"prompt_tokens", 11}, {"completion_tokens", 3}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~FakeServer() {
    server.stop();
    thread.join();
  }

  HttpClientConfig config() const {
    HttpClientConfig c;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1";
    c.model = "test-model";
    c.api_key_env = "HEURSYNTH_TEST_KEY";
    c.timeout_seconds = 5;
    return c;
  }
};

}  // namespace

TEST_CASE("successful call parses content and usage") {
  ::setenv("HEURSYNTH_TEST_KEY", kKey, 1);
  FakeServer fake;
  OpenAiCompatibleClient client(fake.config());
  ChatReply r = client.complete("ping");
  CHECK(r.text == "hello");
  CHECK(r.input_tokens == 11);
  CHECK(r.output_tokens == 3);
  CHECK(fake.last_auth == std::string("Bearer ") + kKey);
  CHECK(fake.last_body["model"] == "test-model");
  CHECK(fake.last_body["messages"][0]["content"] == "ping");
  CHECK(fake.last_body["messages"].size() == 1);
}

TEST_CASE("retries 429 and 5xx with backoff") {
  ::setenv("HEURSYNTH_TEST_KEY", kKey, 1);
  FakeServer fake;
  fake.failures = 2;
  fake.fail_status = 429;
  OpenAiCompatibleClient client(fake.config());
  std::vector<double> waits;
  client.sleep = [&](double s) { waits.push_back(s); };
  CHECK(client.complete("x").text == "hello");
  CHECK(fake.hits == 3);
  CHECK(waits == std::vector<double>{1.0, 2.0});
}

TEST_CASE("gives up after max attempts without leaking the key") {
  ::setenv("HEURSYNTH_TEST_KEY", kKey, 1);
  FakeServer fake;
  fake.failures = 100;
  fake.fail_status = 500;
  OpenAiCompatibleClient client(fake.config());
  client.sleep = [](double) {};
  try {
    client.complete("x");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClientError);
    CHECK(std::string(e.what()).find(kKey) == std::string::npos);
  }
  CHECK(fake.hits == 4);
}

TEST_CASE("client errors are not retried") {
  ::setenv("HEURSYNTH_TEST_KEY", kKey, 1);
  FakeServer fake;
  fake.failures = 100;
  fake.fail_status = 401;
  OpenAiCompatibleClient client(fake.config());
  client.sleep = [](double) {};
  CHECK(error_kind([&] { client.complete("x"); }) == ErrorKind::ClientError);
  CHECK(fake.hits == 1);
}

TEST_CASE("missing key and bad config") {
  FakeServer fake;
  HttpClientConfig c = fake.config();
  c.api_key_env = "HEURSYNTH_TEST_KEY_UNSET";
  ::unsetenv("HEURSYNTH_TEST_KEY_UNSET");
  OpenAiCompatibleClient client(c);
  CHECK(error_kind([&] { client.complete("x"); }) == ErrorKind::ClientError);
  CHECK(fake.hits == 0);
  c.max_attempts = 0;
  CHECK(error_kind([&] { OpenAiCompatibleClient bad(c); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("scripted client replays in order") {
  ScriptedClient client("m", {"a", "b"});
  CHECK(client.complete("p1").text == "a");
  CHECK(client.remaining() == 1);
  CHECK(client.complete("p2").text == "b");
  CHECK(error_kind([&] { client.complete("p3"); }) == ErrorKind::ScriptExhausted);
  CHECK(client.prompts() == std::vector<std::string>{"p1", "p2", "p3"});
}

TEST_CASE("ledger prices entries per model") {
  TokenLedger ledger;
  ledger.set_rates({{"m", Rates{2.0, 8.0}}});
  LedgerEntry e = ledger.record(LedgerEntry{"propose", "m", 1000000, 500000, false, 0.0, 0.0, "ok"});
  CHECK(e.cost == doctest::Approx(6.0));
  CHECK(ledger.record(LedgerEntry{"critic", "other", 10, 10, true, 0.0, 0.0, "ok"}).cost == 0.0);
  CHECK(ledger.totals().calls == 2);
  CHECK(ledger.totals_by_role().at("propose").input_tokens == 1000000);
  CHECK(ledger_entry_from_json(ledger_entry_to_json(e)) == e);
}
