#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "draftwatch/cli/commands.hpp"
#include "draftwatch/service/event_log.hpp"
#include "httplib.h"
#include "json.hpp"
#include "serve_process.hpp"
#include "test_support.hpp"

namespace draftwatch::cli {
namespace {

using nlohmann::json;
using testing::Slurp;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "draftwatch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"analyze"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"analyze", "--log-dir", "x", "--band", "quartile"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"issue-credential", "--credentials", "c.json", "--user", "u", "--phase", "3"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"--help"}).code, kExitOk);
}

TEST(Cli, DataErrorsExitThree) {
  TempDir dir;
  const auto r = RunCli({"analyze", "--log-dir", dir.path().string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("NoPairs"), std::string::npos);
  std::ofstream(dir / "events.jsonl") << "{\"seq\":1,\"type\":\"activate\"";
  EXPECT_EQ(RunCli({"replay", "--log-dir", dir.path().string()}).code, kExitData);
}

TEST(Cli, CredentialCommands) {
  TempDir dir;
  const std::string store = (dir / "creds.json").string();
  const auto issued = RunCli({"issue-credential", "--credentials", store, "--user", "alice"});
  ASSERT_EQ(issued.code, kExitOk) << issued.err;
  EXPECT_GE(Trim(issued.out).size(), 32u);
  EXPECT_EQ(RunCli({"issue-credential", "--credentials", store, "--user", "alice"}).code, kExitData);
  EXPECT_EQ(RunCli({"set-phase", "--credentials", store, "--user", "alice", "--phase", "1"}).code, kExitOk);
  EXPECT_EQ(RunCli({"revoke-credential", "--credentials", store, "--user", "alice"}).code, kExitOk);
  EXPECT_EQ(RunCli({"revoke-credential", "--credentials", store, "--user", "bob"}).code, kExitData);
}

TEST(Cli, SimulateReplayAnalyze) {
  TempDir dir;
  const std::string out = (dir / "run").string();
  const auto sim = RunCli({"simulate", "--out", out, "--seed", "3", "--pairs", "30", "--users", "4", "--posts", "80"});
  ASSERT_EQ(sim.code, kExitOk) << sim.err;
  EXPECT_EQ(json::parse(sim.out)["expected_pairs"], 30);
  EXPECT_TRUE(std::filesystem::exists(dir / "run" / "events.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(dir / "run" / "interactions.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(dir / "run" / "spec.json"));

  EXPECT_EQ(RunCli({"simulate", "--out", out}).code, kExitData);

  const auto replay = RunCli({"replay", "--log-dir", out});
  ASSERT_EQ(replay.code, kExitOk) << replay.err;
  EXPECT_TRUE(json::parse(replay.out)["compacted_match"].get<bool>());

  const auto analyze = RunCli({"analyze", "--log-dir", out, "--no-table"});
  ASSERT_EQ(analyze.code, kExitOk) << analyze.err;
  EXPECT_EQ(json::parse(analyze.out)["pairs"], 30);
  const auto table = RunCli({"analyze", "--log-dir", out, "--out", (dir / "report.json").string()});
  EXPECT_NE(table.out.find("Drafting time"), std::string::npos);
  EXPECT_EQ(json::parse(Slurp(dir / "report.json"))["pairs"], 30);

  const std::string again = (dir / "again").string();
  ASSERT_EQ(RunCli({"simulate", "--out", again, "--seed", "3", "--pairs", "30", "--users", "4", "--posts", "80"}).code,
            kExitOk);
  EXPECT_EQ(Slurp(dir / "run" / "events.jsonl"), Slurp(dir / "again" / "events.jsonl"));

  const std::string compacted = (dir / "c.jsonl").string();
  ASSERT_EQ(RunCli({"compact", "--log-dir", out, "--out", compacted}).code, kExitOk);
  EXPECT_EQ(Slurp(compacted), Slurp(dir / "run" / "interactions.jsonl"));
}

TEST(Cli, SimulateFromSpecFile) {
  TempDir dir;
  std::ofstream(dir / "spec.json") << R"({"seed": 8, "n_users": 3, "n_posts": 50, "pairs_target": 12})";
  const auto r = RunCli({"simulate", "--out", (dir / "o").string(), "--spec", (dir / "spec.json").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["expected_pairs"], 12);
  std::ofstream(dir / "bad.json") << R"({"sed": 8})";
  EXPECT_EQ(RunCli({"simulate", "--out", (dir / "p").string(), "--spec", (dir / "bad.json").string()}).code,
            kExitData);
}

TEST(Cli, Score) {
  TempDir dir;
  std::ofstream(dir / "c.json") << R"([{"id":"p","author":"a","text":"The library opens at nine.","posted_at":1}])";
  const auto calm = RunCli({"score", "--comments", (dir / "c.json").string()});
  ASSERT_EQ(calm.code, kExitOk) << calm.err;
  const auto hostile =
      RunCli({"score", "--comments", (dir / "c.json").string(), "--draft", "You idiot, you ALWAYS lie!"});
  EXPECT_GT(json::parse(hostile.out)["score"].get<double>(), json::parse(calm.out)["score"].get<double>());
  std::ofstream(dir / "empty.json") << "[]";
  EXPECT_EQ(RunCli({"score", "--comments", (dir / "empty.json").string()}).code, kExitData);
}

TEST(Serve, HealthCredentialsAndShutdown) {
  TempDir dir;
  const std::string logs = (dir / "logs").string();
  testing::ServeProcess server({"serve", "--bind", "127.0.0.1:0", "--salt", "s", "--log-dir", logs});
  ASSERT_GT(server.port(), 0);
  httplib::Client client("127.0.0.1", server.port());
  auto health = client.Get("/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  const std::string store = (dir / "logs" / "credentials.json").string();
  const auto token = Trim(RunCli({"issue-credential", "--credentials", store, "--user", "alice"}).out);
  auto activate = client.Post("/v1/activate", json{{"credential", token}}.dump(), "application/json");
  ASSERT_TRUE(activate);
  EXPECT_EQ(activate->status, 200) << activate->body;

  ASSERT_EQ(RunCli({"revoke-credential", "--credentials", store, "--user", "alice"}).code, kExitOk);
  activate = client.Post("/v1/activate", json{{"credential", token}}.dump(), "application/json");
  ASSERT_TRUE(activate);
  EXPECT_EQ(activate->status, 401);

  EXPECT_EQ(server.Terminate(), 0);
  EXPECT_NE(server.remaining_output().find("stopped"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "logs" / "events.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(dir / "logs" / "interactions.jsonl"));
}

TEST(Serve, BadConfigFailsToStart) {
  TempDir dir;
  std::ofstream(dir / "bad.json") << "{ not json";
  testing::ServeProcess server({"serve", "--bind", "127.0.0.1:0", "--salt", "s", "--log-dir", (dir / "l").string(),
                                "--config", (dir / "bad.json").string()});
  EXPECT_EQ(server.port(), 0);
  EXPECT_NE(server.Wait(), 0);
}

TEST(Serve, MissingSaltIsUsageError) {
  testing::ServeProcess server({"serve", "--bind", "127.0.0.1:0"});
  EXPECT_EQ(server.port(), 0);
  EXPECT_EQ(server.Wait(), kExitUsage);
}

}  // namespace
}  // namespace draftwatch::cli
