#include "draftwatch/cli/commands.hpp"

#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "draftwatch/analysis/matching.hpp"
#include "draftwatch/analysis/report.hpp"
#include "draftwatch/error.hpp"
#include "draftwatch/forecast/forecaster.hpp"
#include "draftwatch/service/event_log.hpp"
#include "draftwatch/service/http_frontend.hpp"
#include "draftwatch/service/json_codec.hpp"
#include "draftwatch/service/service.hpp"
#include "draftwatch/sim/simulator.hpp"
#include "draftwatch/text/lexicon.hpp"
#include "httplib.h"
#include "json.hpp"

namespace draftwatch::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void WriteFileAtomic(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) throw Error(Errc::kIo, "cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::kIo, "cannot replace '" + path.string() + "': " + ec.message());
}

forecast::ReferenceForecaster MakeForecaster(const std::string& config_path, const std::string& lexicon_dir) {
  auto config = config_path.empty() ? forecast::ForecasterConfig::Embedded() : forecast::ForecasterConfig::Load(config_path);
  auto lexicons = lexicon_dir.empty() ? forecast::FeatureLexicons::Embedded() : forecast::FeatureLexicons::Load(lexicon_dir);
  return forecast::ReferenceForecaster(forecast::FeatureExtractor(std::move(lexicons), text::SentenceSplitter()),
                                       config);
}

std::pair<std::string, int> ParseBind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw Error(Errc::kBadConfig, "--bind must be host:port, got '" + bind + "'");
  const std::string host = bind.substr(0, colon);
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(bind.substr(colon + 1), &used);
    if (used != bind.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(Errc::kBadConfig, "--bind port is not a number: '" + bind + "'");
  }
  if (host.empty() || port < 0 || port > 65535) throw Error(Errc::kBadConfig, "invalid --bind '" + bind + "'");
  return {host, port};
}

struct ServeArgs {
  std::string bind = "127.0.0.1:8080";
  std::string salt;
  std::string config;
  std::string lexicons;
  std::string templates;
  std::string log_dir = "logs";
  std::string credentials;
  double idle_sweep_secs = 60.0;
  double idle_horizon_secs = 7200.0;
};

int Serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.salt.empty()) throw Error(Errc::kBadConfig, "--salt must not be empty");
  if (!(a.idle_sweep_secs >= 0.0) || !(a.idle_horizon_secs > 0.0)) {
    throw Error(Errc::kBadConfig, "idle sweep interval and horizon must be positive");
  }
  const auto [host, port] = ParseBind(a.bind);
  auto forecaster = MakeForecaster(a.config, a.lexicons);
  service::ServiceOptions options;
  options.salt = a.salt;
  options.idle_horizon_secs = a.idle_horizon_secs;
  if (!a.templates.empty()) options.templates = intervention::MessageTemplates::Load(a.templates);

  const fs::path log_dir = a.log_dir;
  service::ReplayState state = service::ReplayDir(log_dir);
  service::CredentialStore credentials(a.credentials.empty() ? log_dir / "credentials.json" : fs::path(a.credentials));
  service::JsonlFileSink sink(log_dir, state.last_seq);
  service::Service svc(forecaster, credentials, sink, options);
  svc.Restore(state);

  httplib::Server server;
  server.set_tcp_nodelay(true);
  service::RegisterRoutes(server, svc);
  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error(Errc::kBindFailure, "cannot bind " + a.bind);

  // SIGINT/SIGTERM are consumed by a dedicated thread so shutdown runs in
  // ordinary code: stop accepting, then flush and compact.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::atomic<bool> stopping{false};
  std::thread signal_thread([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    stopping = true;
    server.stop();
  });

  std::mutex sweep_mu;
  std::condition_variable sweep_cv;
  std::thread sweeper([&] {
    if (a.idle_sweep_secs <= 0.0) return;
    std::unique_lock lock(sweep_mu);
    while (!sweep_cv.wait_for(lock, std::chrono::duration<double>(a.idle_sweep_secs), [&] { return stopping.load(); })) {
      try {
        svc.SweepIdle();
      } catch (const Error& e) {
        err << "idle sweep failed: " << e.what() << '\n';
      }
    }
  });

  out << "listening on http://" << host << ':' << bound << std::endl;
  const bool ok = server.listen_after_bind();

  if (!stopping.exchange(true)) pthread_kill(signal_thread.native_handle(), SIGTERM);
  signal_thread.join();
  {
    std::lock_guard lock(sweep_mu);
  }
  sweep_cv.notify_all();
  sweeper.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);

  sink.Flush();
  WriteFileAtomic(log_dir / service::kCompactedFile, service::CompactedString(svc.Interactions()));
  out << "stopped; " << svc.Interactions().size() << " interactions compacted" << std::endl;
  return ok ? kExitOk : kExitData;
}

std::vector<forecast::Comment> ReadComments(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot read '" + path + "'");
  try {
    json j = json::parse(in);
    if (j.is_object()) j = j.at("comments");
    return service::CommentsFromJson(j);
  } catch (const json::exception& e) {
    throw Error(Errc::kInvalidArgument, "malformed comments file '" + path + "': " + e.what());
  }
}

json ReplaySummary(const service::ReplayState& state) {
  std::map<std::string, std::size_t> outcomes;
  std::size_t snapshots = 0;
  for (const auto& [id, in] : state.interactions) {
    ++outcomes[std::string(service::OutcomeName(in.outcome))];
    snapshots += in.snapshots.size();
  }
  return {{"events", state.events},
          {"last_seq", state.last_seq},
          {"interactions", state.interactions.size()},
          {"snapshots", snapshots},
          {"activated_users", state.activated_users.size()},
          {"outcomes", outcomes}};
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Draft risk intervention service and study tools", "draftwatch"};
  app.require_subcommand(1);

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--bind", serve.bind, "host:port (port 0 picks a free port)")->capture_default_str();
  serve_cmd->add_option("--salt", serve.salt, "Secret salt for condition assignment")->required();
  serve_cmd->add_option("--config", serve.config, "Forecaster configuration file");
  serve_cmd->add_option("--lexicons", serve.lexicons, "Directory of lexicon files");
  serve_cmd->add_option("--templates", serve.templates, "Message template file");
  serve_cmd->add_option("--log-dir", serve.log_dir, "Event log directory")->capture_default_str();
  serve_cmd->add_option("--credentials", serve.credentials, "Credential store (default <log-dir>/credentials.json)");
  serve_cmd->add_option("--idle-sweep-secs", serve.idle_sweep_secs, "Idle sweep interval, 0 disables")
      ->capture_default_str();
  serve_cmd->add_option("--idle-horizon-secs", serve.idle_horizon_secs, "Idle time before abandonment")
      ->capture_default_str();

  std::string cred_path;
  std::string user;
  int phase = 2;
  auto* issue_cmd = app.add_subcommand("issue-credential", "Issue a credential and print its token");
  issue_cmd->add_option("--credentials", cred_path, "Credential store file")->required();
  issue_cmd->add_option("--user", user, "User id")->required();
  issue_cmd->add_option("--phase", phase, "Study phase (1 or 2)")->check(CLI::IsMember({1, 2}))->capture_default_str();

  auto* revoke_cmd = app.add_subcommand("revoke-credential", "Revoke a user's credential");
  revoke_cmd->add_option("--credentials", cred_path, "Credential store file")->required();
  revoke_cmd->add_option("--user", user, "User id")->required();

  auto* phase_cmd = app.add_subcommand("set-phase", "Move a user to another study phase");
  phase_cmd->add_option("--credentials", cred_path, "Credential store file")->required();
  phase_cmd->add_option("--user", user, "User id")->required();
  phase_cmd->add_option("--phase", phase, "Study phase (1 or 2)")->check(CLI::IsMember({1, 2}))->required();

  std::string sim_out;
  std::string spec_path;
  std::string server_url;
  std::string fc_config;
  std::uint64_t seed = 1;
  std::size_t pairs = 0;
  std::size_t users = 0;
  std::size_t posts = 0;
  bool null_spec = false;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic study");
  sim_cmd->add_option("--out", sim_out, "Output log directory (in-process mode)");
  sim_cmd->add_option("--spec", spec_path, "Simulation spec JSON; flags override it");
  sim_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--pairs", pairs, "Matched pairs to generate");
  sim_cmd->add_option("--users", users, "Number of users");
  sim_cmd->add_option("--posts", posts, "Number of posts");
  sim_cmd->add_flag("--null", null_spec, "Zero all injected effects");
  sim_cmd->add_option("--server", server_url, "Send traffic to a running server instead");
  sim_cmd->add_option("--credentials", cred_path, "Server credential store (with --server)");
  sim_cmd->add_option("--config", fc_config, "Forecaster configuration the server uses");

  std::string log_dir;
  std::string out_path;
  auto* compact_cmd = app.add_subcommand("compact", "Fold events into one object per interaction");
  compact_cmd->add_option("--log-dir", log_dir, "Event log directory")->required();
  compact_cmd->add_option("--out", out_path, "Output file (default <log-dir>/interactions.jsonl)");

  auto* replay_cmd = app.add_subcommand("replay", "Rebuild state from events and summarize it");
  replay_cmd->add_option("--log-dir", log_dir, "Event log directory")->required();

  double threshold = 0.55;
  std::string band = "binary";
  bool show_table = true;
  auto* analyze_cmd = app.add_subcommand("analyze", "Matched-pair analysis report");
  analyze_cmd->add_option("--log-dir", log_dir, "Log directory")->required();
  analyze_cmd->add_option("--threshold", threshold, "Warning threshold")->capture_default_str();
  analyze_cmd->add_option("--band", band, "binary or decile")->check(CLI::IsMember({"binary", "decile"}))
      ->capture_default_str();
  analyze_cmd->add_option("--out", out_path, "Report JSON path (default stdout)");
  analyze_cmd->add_flag("!--no-table", show_table, "Skip the text table");

  std::string comments_path;
  std::string draft;
  auto* score_cmd = app.add_subcommand("score", "Score a comment chain with an optional draft");
  score_cmd->add_option("--comments", comments_path, "JSON array of comments")->required();
  score_cmd->add_option("--draft", draft, "Draft text");
  score_cmd->add_option("--config", fc_config, "Forecaster configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*serve_cmd) return Serve(serve, out, err);

    if (*issue_cmd) {
      service::CredentialStore store(cred_path);
      out << store.Issue(user, phase).token << '\n';
      return kExitOk;
    }
    if (*revoke_cmd) {
      service::CredentialStore(cred_path).Revoke(user);
      out << "revoked " << user << '\n';
      return kExitOk;
    }
    if (*phase_cmd) {
      service::CredentialStore(cred_path).SetPhase(user, phase);
      out << user << " now in phase " << phase << '\n';
      return kExitOk;
    }

    if (*sim_cmd) {
      sim::SimulationSpec spec;
      if (!spec_path.empty()) {
        std::ifstream in(spec_path, std::ios::binary);
        if (!in) throw Error(Errc::kIo, "cannot read '" + spec_path + "'");
        try {
          spec = sim::SimulationSpec::FromJson(json::parse(in));
        } catch (const json::exception& e) {
          throw Error(Errc::kBadSpec, std::string("malformed spec file: ") + e.what());
        }
      }
      if (null_spec) {
        const auto base = spec;
        spec = sim::SimulationSpec::Null(base.seed);
        spec.n_users = base.n_users;
        spec.n_posts = base.n_posts;
        spec.pairs_target = base.pairs_target;
      }
      if (sim_cmd->count("--seed")) spec.seed = seed;
      if (pairs) spec.pairs_target = pairs;
      if (users) spec.n_users = users;
      if (posts) spec.n_posts = posts;
      spec.Validate();
      auto forecaster = MakeForecaster(fc_config, "");

      sim::SimulationSummary summary;
      if (!server_url.empty()) {
        if (cred_path.empty()) throw CLI::RequiredError("--credentials");
        service::CredentialStore store(cred_path);
        sim::HttpDriver driver(server_url);
        summary = sim::RunSimulation(spec, forecaster, store, driver);
      } else {
        if (sim_out.empty()) throw CLI::RequiredError("--out or --server");
        const fs::path dir = sim_out;
        if (fs::exists(dir / service::kEventsFile)) {
          throw Error(Errc::kIo, "'" + dir.string() + "' already holds an event log");
        }
        std::vector<service::Interaction> interactions;
        {
          service::JsonlFileSink sink(dir, 0);
          interactions = sim::SimulateInProcess(spec, forecaster, sink, &summary);
          sink.Flush();
        }
        WriteFileAtomic(dir / service::kCompactedFile, service::CompactedString(interactions));
        WriteFileAtomic(dir / "spec.json", spec.ToJson().dump(2) + "\n");
      }
      out << json{{"interactions", summary.interactions},
                  {"phase1_interactions", summary.phase1_interactions},
                  {"expected_pairs", summary.expected_pairs},
                  {"snapshots", summary.snapshots}}
                 .dump()
          << '\n';
      return kExitOk;
    }

    if (*compact_cmd) {
      const auto state = service::ReplayDir(log_dir);
      const fs::path target = out_path.empty() ? fs::path(log_dir) / service::kCompactedFile : fs::path(out_path);
      WriteFileAtomic(target, service::CompactedString(state.SortedInteractions()));
      out << "compacted " << state.interactions.size() << " interactions into " << target.string() << '\n';
      return kExitOk;
    }

    if (*replay_cmd) {
      const auto state = service::ReplayDir(log_dir);
      json summary = ReplaySummary(state);
      const fs::path compacted = fs::path(log_dir) / service::kCompactedFile;
      bool match = true;
      if (fs::exists(compacted)) {
        std::ifstream in(compacted, std::ios::binary);
        std::stringstream existing;
        existing << in.rdbuf();
        match = existing.str() == service::CompactedString(state.SortedInteractions());
        summary["compacted_match"] = match;
      }
      out << summary.dump(2) << '\n';
      if (!match) {
        err << "replayed state differs from " << compacted.string() << '\n';
        return kExitData;
      }
      return kExitOk;
    }

    if (*analyze_cmd) {
      analysis::MatchOptions options;
      options.warn_threshold = threshold;
      options.band_mode = analysis::ParseBandMode(band);
      const auto interactions = service::LoadInteractions(log_dir);
      const auto matched = analysis::BuildMatchedPairs(interactions, options);
      const auto report = analysis::AnalyzePairs(matched.pairs, threshold);
      json j = analysis::ReportToJson(report);
      j["interactions"] = interactions.size();
      j["discarded"] = matched.discarded.size();
      j["band_mode"] = band;
      if (out_path.empty()) {
        out << j.dump(2) << '\n';
      } else {
        WriteFileAtomic(out_path, j.dump(2) + "\n");
      }
      if (show_table) out << analysis::ReportTable(report);
      return kExitOk;
    }

    if (*score_cmd) {
      auto forecaster = MakeForecaster(fc_config, "");
      const forecast::CommentChain chain(ReadComments(comments_path));
      out << json{{"score", forecaster.ScoreWithDraft(chain, draft).value()}}.dump() << '\n';
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << ErrcName(e.code()) << "): " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace draftwatch::cli
