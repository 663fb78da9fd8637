#include "draftwatch/service/event_log.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "draftwatch/error.hpp"
#include "draftwatch/service/json_codec.hpp"

namespace draftwatch::service {

std::uint64_t EventSink::Append(nlohmann::json event) {
  std::lock_guard lock(mu_);
  event["seq"] = seq_ + 1;
  Write(event);
  return ++seq_;
}

std::uint64_t EventSink::last_seq() {
  std::lock_guard lock(mu_);
  return seq_;
}

JsonlFileSink::JsonlFileSink(const std::filesystem::path& dir, std::uint64_t last_seq) : EventSink(last_seq) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::kIo, "cannot create log directory '" + dir.string() + "': " + ec.message());
  const auto path = dir / kEventsFile;
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw Error(Errc::kIo, "cannot open '" + path.string() + "' for append");
}

void JsonlFileSink::Write(const nlohmann::json& event) {
  out_ << event.dump() << '\n';
  out_.flush();
  if (!out_) throw Error(Errc::kIo, "event log write failed");
}

void JsonlFileSink::Flush() { out_.flush(); }

namespace {

Interaction& Require(std::map<std::string, Interaction>& interactions, const std::string& id) {
  auto it = interactions.find(id);
  if (it == interactions.end()) throw Error(Errc::kInvalidArgument, "event for unknown interaction '" + id + "'");
  return it->second;
}

void Close(Interaction& in, Outcome outcome, double server_t) {
  if (in.outcome != Outcome::kOpen) throw Error(Errc::kInvalidArgument, "interaction '" + in.id + "' closed twice");
  in.outcome = outcome;
  in.closed_at = server_t;
}

bool TimeLess(const Interaction& a, const Interaction& b) {
  if (a.started_at != b.started_at) return a.started_at < b.started_at;
  return a.id < b.id;
}

}  // namespace

void ReplayState::Apply(const nlohmann::json& event) {
  const auto type = event.at("type").get<std::string>();
  const auto seq = event.at("seq").get<std::uint64_t>();
  if (seq != last_seq + 1) {
    throw Error(Errc::kInvalidArgument, "sequence gap: expected " + std::to_string(last_seq + 1));
  }
  const double server_t = event.at("server_t").get<double>();
  if (type == "activate") {
    activated_users.insert(event.at("user_id").get<std::string>());
  } else if (type == "open") {
    Interaction in;
    in.id = event.at("interaction_id").get<std::string>();
    if (interactions.contains(in.id)) throw Error(Errc::kInvalidArgument, "interaction '" + in.id + "' opened twice");
    in.user_id = event.at("user_id").get<std::string>();
    in.post_id = event.at("post_id").get<std::string>();
    in.target_comment_id = event.at("target_comment_id").get<std::string>();
    in.condition = ParseCondition(event.at("condition").get<std::string>());
    in.phase = event.at("phase").get<int>();
    in.comments = CommentsFromJson(event.at("comments"));
    in.context_score = RiskScore(event.at("context_score").get<double>());
    in.started_at = event.at("started_at").get<double>();
    in.snapshots.push_back({in.started_at, server_t, "", in.context_score, SnapshotKind::kContext});
    activated_users.insert(in.user_id);
    interactions.emplace(in.id, std::move(in));
  } else if (type == "snapshot") {
    auto& in = Require(interactions, event.at("interaction_id").get<std::string>());
    if (in.outcome != Outcome::kOpen) throw Error(Errc::kInvalidArgument, "snapshot on closed interaction");
    DraftSnapshot s{event.at("t").get<double>(), server_t, event.at("draft_text").get<std::string>(),
                    RiskScore(event.at("score").get<double>()), SnapshotKind::kReply};
    if (s.t < in.snapshots.back().t) throw Error(Errc::kInvalidArgument, "snapshot time goes backwards");
    in.snapshots.push_back(std::move(s));
  } else if (type == "finalize") {
    auto& in = Require(interactions, event.at("interaction_id").get<std::string>());
    const Outcome outcome = ParseOutcome(event.at("outcome").get<std::string>());
    if (outcome != Outcome::kSubmitted && outcome != Outcome::kCancelled) {
      throw Error(Errc::kInvalidArgument, "finalize with outcome " + std::string(OutcomeName(outcome)));
    }
    Close(in, outcome, server_t);
  } else if (type == "abandon") {
    Close(Require(interactions, event.at("interaction_id").get<std::string>()), Outcome::kAbandoned, server_t);
  } else if (type == "score") {
    // Stateless scoring request; logged for auditing only.
  } else {
    throw Error(Errc::kInvalidArgument, "unknown event type '" + type + "'");
  }
  last_seq = seq;
  ++events;
}

std::vector<Interaction> ReplayState::SortedInteractions() const {
  std::vector<Interaction> out;
  out.reserve(interactions.size());
  for (const auto& [id, in] : interactions) out.push_back(in);
  std::sort(out.begin(), out.end(), TimeLess);
  return out;
}

ReplayState Replay(std::istream& in, const std::string& source_name) {
  ReplayState state;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const bool terminated = !in.eof();
    try {
      if (!terminated) throw Error(Errc::kInvalidArgument, "truncated record (no trailing newline)");
      state.Apply(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      throw Error(Errc::kCorruptLog, source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return state;
}

ReplayState ReplayDir(const std::filesystem::path& dir) {
  const auto path = dir / kEventsFile;
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  return Replay(in, path.string());
}

void WriteCompacted(std::vector<Interaction> interactions, std::ostream& out) {
  std::sort(interactions.begin(), interactions.end(), TimeLess);
  for (const auto& in : interactions) out << ToJson(in).dump() << '\n';
}

std::string CompactedString(std::vector<Interaction> interactions) {
  std::ostringstream out;
  WriteCompacted(std::move(interactions), out);
  return out.str();
}

std::vector<Interaction> ReadCompacted(std::istream& in, const std::string& source_name) {
  std::vector<Interaction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(InteractionFromJson(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw Error(Errc::kCorruptLog, source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Interaction> LoadInteractions(const std::filesystem::path& dir) {
  const auto compacted = dir / kCompactedFile;
  if (!std::filesystem::exists(dir / kEventsFile) && std::filesystem::exists(compacted)) {
    std::ifstream in(compacted, std::ios::binary);
    return ReadCompacted(in, compacted.string());
  }
  return ReplayDir(dir).SortedInteractions();
}

}  // namespace draftwatch::service
