#include "draftwatch/service/json_codec.hpp"

#include "draftwatch/error.hpp"

namespace draftwatch::service {

json ToJson(const Comment& c) {
  return {{"id", c.id}, {"author", c.author}, {"text", c.text}, {"posted_at", c.posted_at}};
}

Comment CommentFromJson(const json& j) {
  return {j.at("id").get<std::string>(), j.value("author", std::string()), j.at("text").get<std::string>(),
          j.value("posted_at", 0.0)};
}

std::vector<Comment> CommentsFromJson(const json& j) {
  if (!j.is_array()) throw Error(Errc::kInvalidArgument, "comments must be an array");
  std::vector<Comment> out;
  out.reserve(j.size());
  for (const auto& c : j) out.push_back(CommentFromJson(c));
  return out;
}

json ToJson(const DraftSnapshot& s) {
  return {{"t", s.t},
          {"server_t", s.server_t},
          {"draft_text", s.draft_text},
          {"score", s.score.value()},
          {"kind", s.kind == SnapshotKind::kContext ? "context" : "reply"}};
}

DraftSnapshot SnapshotFromJson(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "context" && kind != "reply") throw Error(Errc::kInvalidArgument, "unknown snapshot kind " + kind);
  return {j.at("t").get<double>(), j.at("server_t").get<double>(), j.at("draft_text").get<std::string>(),
          RiskScore(j.at("score").get<double>()), kind == "context" ? SnapshotKind::kContext : SnapshotKind::kReply};
}

json ToJson(const Interaction& i) {
  json comments = json::array();
  for (const auto& c : i.comments) comments.push_back(ToJson(c));
  json snapshots = json::array();
  for (const auto& s : i.snapshots) snapshots.push_back(ToJson(s));
  return {{"id", i.id},
          {"user_id", i.user_id},
          {"post_id", i.post_id},
          {"target_comment_id", i.target_comment_id},
          {"condition", ConditionName(i.condition)},
          {"phase", i.phase},
          {"comments", std::move(comments)},
          {"context_score", i.context_score.value()},
          {"started_at", i.started_at},
          {"snapshots", std::move(snapshots)},
          {"outcome", OutcomeName(i.outcome)},
          {"closed_at", i.closed_at ? json(*i.closed_at) : json(nullptr)}};
}

Interaction InteractionFromJson(const json& j) {
  Interaction i;
  i.id = j.at("id").get<std::string>();
  i.user_id = j.at("user_id").get<std::string>();
  i.post_id = j.at("post_id").get<std::string>();
  i.target_comment_id = j.at("target_comment_id").get<std::string>();
  i.condition = ParseCondition(j.at("condition").get<std::string>());
  i.phase = j.at("phase").get<int>();
  i.comments = CommentsFromJson(j.at("comments"));
  i.context_score = RiskScore(j.at("context_score").get<double>());
  i.started_at = j.at("started_at").get<double>();
  for (const auto& s : j.at("snapshots")) i.snapshots.push_back(SnapshotFromJson(s));
  i.outcome = ParseOutcome(j.at("outcome").get<std::string>());
  if (const auto& closed = j.at("closed_at"); !closed.is_null()) i.closed_at = closed.get<double>();
  return i;
}

json ToJson(const intervention::Directive& d) {
  return {{"message", d.message}, {"color", intervention::ColorName(d.color)}, {"intensity", d.intensity}};
}

}  // namespace draftwatch::service
