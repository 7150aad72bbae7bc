// Copyright 2026 The htmlu Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <thread>

#include <json.hpp>

#include "htmlu/codec.hpp"
#include "htmlu/model_client.hpp"
#include "htmlu/nav_env.hpp"

using namespace htmlu;
using namespace std::chrono_literals;

namespace {

// Local inference stand-in. Echoes the input upper-cased after the first
// `fail_first` requests, which answer with HTTP 503.
class FakeServer {
 public:
  FakeServer() {
    server_.Post("/generate", [this](const httplib::Request& req, httplib::Response& res) {
      int n = ++requests;
      int now = ++in_flight;
      int seen = max_in_flight.load();
      while (now > seen && !max_in_flight.compare_exchange_weak(seen, now)) {}
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
      --in_flight;
      {
        std::lock_guard lock(mu);
        last_auth = req.get_header_value("Authorization");
        last_body = nlohmann::json::parse(req.body);
      }
      if (n <= fail_first) {
        res.status = 503;
        res.set_content("busy", "text/plain");
        return;
      }
      if (garbage) {
        res.set_content("not json", "text/plain");
        return;
      }
      std::string out = last_body.at("input").get<std::string>();
      for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      res.set_content(nlohmann::json{{"output", out}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  ModelEndpoint endpoint() const {
    ModelEndpoint e;
    e.base_url = "http://127.0.0.1:" + std::to_string(port_) + "/generate";
    e.timeout = 2000ms;
    e.initial_backoff = 1ms;
    return e;
  }

  std::atomic<int> requests{0};
  std::atomic<int> in_flight{0};
  std::atomic<int> max_in_flight{0};
  int fail_first = 0;
  bool garbage = false;
  std::chrono::milliseconds delay{0};
  std::mutex mu;
  std::string last_auth;
  nlohmann::json last_body;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("truncation keeps the protected head and whole characters") {
  bool cut = true;
  CHECK(truncate_input("short", 10, 0, &cut) == "short");
  CHECK_FALSE(cut);
  const std::string in = "head|" + std::string(20, 'x');
  CHECK(truncate_input(in, 10, 5, &cut) == "head|xxxxx");
  CHECK(cut);
  CHECK(truncate_input(in, 2, 5, nullptr) == "head|");
  // "é" is two bytes; a budget landing between them backs off.
  CHECK(truncate_input("ab\xc3\xa9", 3, 0, &cut) == "ab");
}

TEST_CASE("mock models") {
  EchoGoldModel echo(std::map<std::string, std::string>{{"known", "answer"}});
  CHECK(echo.generate({"known"}).text == "answer");
  CHECK(echo.generate({"x <gold>Email</gold> y"}).text == "Email");
  CHECK(echo.generate({"nothing"}).text.empty());
  CHECK(ConstantModel("c").generate({"x"}).text == "c");
  FunctionModel rev([](std::string_view s) { return std::string(s.rbegin(), s.rend()); });
  CHECK(rev.generate({"abc"}).text == "cba");
  CHECK(ClosestDescriptionModel().generate({"<p>Name</p><input target>"}).text == "Name");
  CHECK(ClosestDescriptionModel().generate({"<p>no target</p>"}).text.empty());

  const std::string nav = encode_navigation_input({{}, "go", "<div><a>x</a><b>y</b></div>", {}});
  RandomActionModel a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    std::string out = a.generate({nav}).text;
    CHECK(out == b.generate({nav}).text);
    Action act = parse_action(out);
    CHECK(act.ref >= 1);
    CHECK(act.ref <= 3);
  }
}

TEST_CASE("scripted oracle types the username first on login") {
  const TaskSpec& task = find_task("login-user");
  EnvState s = reset(task, 0);
  ScriptedOracleModel oracle(task);
  NavigationStep step{{}, s.instruction, render(s), {}};
  Action a = parse_action(oracle.generate({encode_navigation_input(step)}).text);
  REQUIRE(a.function == ActionFunction::Type);
  NodeId user = find_by_attr(s.doc, "id", "username").at(0);
  CHECK(a.ref == *s.doc.node(user).ref);
  CHECK(s.instruction.find("\"" + *a.text + "\"") != std::string::npos);
}

TEST_CASE("remote model round trip with retries") {
  FakeServer server;
  ModelEndpoint ep = server.endpoint();
  ep.api_key = "k123";
  RemoteModel model(ep);
  ModelRequest req{"hello", 16, 0.5};
  CHECK(model.generate(req).text == "HELLO");
  CHECK(server.last_auth == "Bearer k123");
  CHECK(server.last_body.at("max_output_tokens") == 16);
  CHECK(server.last_body.at("temperature") == 0.5);

  server.requests = 0;
  server.fail_first = 2;
  CHECK(model.generate({"again"}).text == "AGAIN");
  CHECK(server.requests == 3);

  server.requests = 0;
  server.fail_first = 100;
  try {
    model.generate({"x"});
    FAIL("expected RemoteError");
  } catch (const RemoteError& e) {
    CHECK(e.status() == 503);
    CHECK(e.body() == "busy");
  }
  CHECK(server.requests == ep.max_retries + 1);

  server.fail_first = 0;
  server.garbage = true;
  CHECK_THROWS_AS(model.generate({"x"}), RemoteError);
}

TEST_CASE("remote model truncates oversize input and flags it") {
  FakeServer server;
  ModelEndpoint ep = server.endpoint();
  ep.max_input_chars = 10;
  RemoteModel model(ep);
  ModelRequest req{"instr\n" + std::string(20, 'h')};
  req.protected_prefix = 6;
  Generation g = model.generate(req);
  CHECK(g.truncated);
  CHECK(g.text == "INSTR\nHHHH");
}

TEST_CASE("remote model timeouts, unreachable hosts and bad urls") {
  FakeServer server;
  ModelEndpoint ep = server.endpoint();
  ep.timeout = 100ms;
  ep.max_retries = 1;
  server.delay = 400ms;
  RemoteModel slow(ep);
  CHECK_THROWS_AS(slow.generate({"x"}), Timeout);
  CHECK(server.requests == 2);

  ModelEndpoint dead;
  dead.base_url = "http://127.0.0.1:1/generate";
  dead.max_retries = 0;
  dead.timeout = 500ms;
  CHECK_THROWS_AS(RemoteModel(dead).generate({"x"}), TransportError);

  ModelEndpoint bad;
  bad.base_url = "ftp://example.com";
  CHECK_THROWS_AS(RemoteModel{bad}, UserError);
}

TEST_CASE("remote model bounds concurrent requests") {
  FakeServer server;
  server.delay = 30ms;
  ModelEndpoint ep = server.endpoint();
  ep.max_in_flight = 2;
  RemoteModel model(ep);
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&] {
      if (model.generate({"p"}).text == "P") ++ok;
    });
  }
  for (auto& t : threads) t.join();
  CHECK(ok == 6);
  CHECK(server.max_in_flight <= 2);
}
