#include "draftwatch/service/service.hpp"

#include <openssl/rand.h>

#include <algorithm>
#include <array>
#include <chrono>

#include "draftwatch/error.hpp"
#include "draftwatch/service/json_codec.hpp"
#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::service {
namespace {

nlohmann::json ResponseJson(bool visible, const std::optional<intervention::Directive>& directive) {
  nlohmann::json r = {{"condition_visible", visible}};
  if (directive) r["directives"] = ToJson(*directive);
  return r;
}

}  // namespace

Service::Clock Service::SystemClock() {
  return [] {
    using namespace std::chrono;
    return duration<double>(system_clock::now().time_since_epoch()).count();
  };
}

Service::IdSource Service::RandomIds() {
  return [] {
    std::array<unsigned char, 16> bytes{};
    if (RAND_bytes(bytes.data(), static_cast<int>(bytes.size())) != 1) throw Error(Errc::kIo, "RAND_bytes failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "ix-";
    for (unsigned char b : bytes) {
      out.push_back(kHex[b >> 4]);
      out.push_back(kHex[b & 0xF]);
    }
    return out;
  };
}

Service::Service(const forecast::Forecaster& forecaster, CredentialStore& credentials, EventSink& sink,
                 ServiceOptions options, Clock clock, IdSource ids)
    : forecaster_(forecaster),
      credentials_(credentials),
      sink_(sink),
      options_(std::move(options)),
      clock_(std::move(clock)),
      ids_(std::move(ids)) {
  options_.intervention.Validate();
  if (options_.idle_horizon_secs <= 0) throw Error(Errc::kBadConfig, "idle horizon must be positive");
}

void Service::Restore(const ReplayState& state) {
  std::lock_guard lock(mu_);
  for (const auto& user : state.activated_users) sessions_.try_emplace(user, Session{user, "", 2, 0.0});
  for (const auto& [id, in] : state.interactions) {
    auto live = std::make_shared<Live>();
    live->data = in;
    live->last_activity = in.snapshots.empty() ? in.started_at : in.snapshots.back().server_t;
    if (in.outcome == Outcome::kOpen) live->scorer = forecaster_.Prepare(forecast::CommentChain(in.comments));
    live_[id] = std::move(live);
  }
}

Credential Service::RequireActivated(const std::string& credential) {
  Credential cred = credentials_.Validate(credential);
  std::lock_guard lock(mu_);
  if (!sessions_.contains(cred.user_id)) {
    throw Error(Errc::kNotActivated, "user '" + cred.user_id + "' has not activated");
  }
  return cred;
}

Session Service::Activate(const std::string& credential) {
  const Credential cred = credentials_.Validate(credential);
  const double now = clock_();
  Session session;
  {
    std::lock_guard lock(mu_);
    auto [it, inserted] = sessions_.try_emplace(cred.user_id, Session{cred.user_id, cred.token, cred.phase, now});
    it->second.credential = cred.token;
    it->second.phase = cred.phase;
    session = it->second;
  }
  sink_.Append({{"type", "activate"}, {"server_t", now}, {"user_id", cred.user_id}, {"phase", cred.phase}});
  return session;
}

OpenResult Service::Open(const std::string& credential, const std::string& post_id,
                         const std::string& target_comment_id, std::vector<Comment> comments,
                         std::optional<double> client_t) {
  const Credential cred = RequireActivated(credential);
  if (post_id.empty() || target_comment_id.empty()) {
    throw Error(Errc::kInvalidArgument, "post_id and target_comment_id are required");
  }
  forecast::CommentChain chain(std::move(comments));

  auto live = std::make_shared<Live>();
  Interaction& in = live->data;
  in.id = ids_();
  in.user_id = cred.user_id;
  in.post_id = post_id;
  in.target_comment_id = target_comment_id;
  in.phase = cred.phase;
  // Phase 1 has no experimental control: the tool is always shown.
  in.condition = cred.phase == 1 ? Condition::kTreatment : AssignCondition(cred.user_id, post_id, options_.salt);
  in.comments = chain.comments();

  live->scorer = forecaster_.Prepare(chain);
  in.context_score = live->scorer->Context();
  const double now = clock_();
  in.started_at = client_t.value_or(now);
  in.snapshots.push_back({in.started_at, now, "", in.context_score, SnapshotKind::kContext});
  live->last_activity = now;

  OpenResult result;
  result.condition_visible = in.condition == Condition::kTreatment;
  std::optional<intervention::Directive> shown;
  if (result.condition_visible) {
    result.assessment = intervention::AssessContext(in.context_score, options_.intervention, options_.templates);
    shown = result.assessment->display;
  }

  nlohmann::json comments_json = nlohmann::json::array();
  for (const auto& c : in.comments) comments_json.push_back(ToJson(c));
  std::lock_guard live_lock(live->mu);
  {
    std::lock_guard lock(mu_);
    if (!live_.emplace(in.id, live).second) throw Error(Errc::kInvalidArgument, "interaction id collision");
  }
  sink_.Append({{"type", "open"},
                {"server_t", now},
                {"client_t", client_t ? nlohmann::json(*client_t) : nlohmann::json(nullptr)},
                {"interaction_id", in.id},
                {"user_id", in.user_id},
                {"post_id", in.post_id},
                {"target_comment_id", in.target_comment_id},
                {"condition", ConditionName(in.condition)},
                {"phase", in.phase},
                {"comments", std::move(comments_json)},
                {"context_score", in.context_score.value()},
                {"started_at", in.started_at},
                {"response", ResponseJson(result.condition_visible, shown)}});
  result.interaction = in;
  return result;
}

std::shared_ptr<Service::Live> Service::Get(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = live_.find(id);
  if (it == live_.end()) throw Error(Errc::kUnknownInteraction, "unknown interaction '" + id + "'");
  return it->second;
}

SnapshotResult Service::Snapshot(const std::string& interaction_id, const std::string& draft_text,
                                 std::optional<double> client_t) {
  auto live = Get(interaction_id);
  std::lock_guard lock(live->mu);
  Interaction& in = live->data;
  if (in.outcome != Outcome::kOpen) throw Error(Errc::kClosedInteraction, "interaction '" + in.id + "' is closed");
  const double now = clock_();
  const double t = client_t.value_or(now);
  if (t < in.snapshots.back().t) throw Error(Errc::kInvalidArgument, "snapshot time precedes the previous snapshot");

  SnapshotResult result;
  result.snapshot = {t, now, draft_text, live->scorer->Score(draft_text), SnapshotKind::kReply};
  std::optional<intervention::Directive> shown;
  if (in.condition == Condition::kTreatment) {
    result.assessment =
        intervention::AssessReply(in.context_score, result.snapshot.score, options_.intervention, options_.templates);
    shown = result.assessment->display;
  }
  sink_.Append({{"type", "snapshot"},
                {"server_t", now},
                {"interaction_id", in.id},
                {"t", t},
                {"draft_text", draft_text},
                {"score", result.snapshot.score.value()},
                {"response", ResponseJson(in.condition == Condition::kTreatment, shown)}});
  in.snapshots.push_back(result.snapshot);
  live->last_activity = now;
  return result;
}

Interaction Service::Finalize(const std::string& interaction_id, Outcome outcome) {
  if (outcome != Outcome::kSubmitted && outcome != Outcome::kCancelled) {
    throw Error(Errc::kInvalidArgument, "finalize outcome must be submitted or cancelled");
  }
  auto live = Get(interaction_id);
  std::lock_guard lock(live->mu);
  Interaction& in = live->data;
  if (in.outcome != Outcome::kOpen) throw Error(Errc::kAlreadyClosed, "interaction '" + in.id + "' already closed");
  const double now = clock_();
  sink_.Append({{"type", "finalize"}, {"server_t", now}, {"interaction_id", in.id}, {"outcome", OutcomeName(outcome)}});
  in.outcome = outcome;
  in.closed_at = now;
  live->scorer.reset();
  live->last_activity = now;
  return in;
}

std::size_t Service::SweepIdle() {
  std::vector<std::shared_ptr<Live>> all;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, live] : live_) all.push_back(live);
  }
  std::size_t swept = 0;
  for (auto& live : all) {
    std::lock_guard lock(live->mu);
    Interaction& in = live->data;
    if (in.outcome != Outcome::kOpen) continue;
    const double now = clock_();
    if (now - live->last_activity <= options_.idle_horizon_secs) continue;
    sink_.Append({{"type", "abandon"}, {"server_t", now}, {"interaction_id", in.id}});
    in.outcome = Outcome::kAbandoned;
    in.closed_at = now;
    live->scorer.reset();
    ++swept;
  }
  return swept;
}

RiskScore Service::Score(const std::string& credential, std::vector<Comment> comments, const std::string& draft) {
  const Credential cred = credentials_.Validate(credential);
  forecast::CommentChain chain(std::move(comments));
  const double now = clock_();
  const RiskScore score =
      text::IsBlank(draft) ? forecaster_.ScoreChain(chain) : forecaster_.ScoreWithDraft(chain, draft);
  sink_.Append({{"type", "score"},
                {"server_t", now},
                {"user_id", cred.user_id},
                {"comment_count", chain.size()},
                {"draft_text", draft},
                {"score", score.value()}});
  return score;
}

std::optional<Interaction> Service::Find(const std::string& interaction_id) const {
  std::shared_ptr<Live> live;
  {
    std::lock_guard lock(mu_);
    auto it = live_.find(interaction_id);
    if (it == live_.end()) return std::nullopt;
    live = it->second;
  }
  std::lock_guard lock(live->mu);
  return live->data;
}

std::vector<Interaction> Service::Interactions() const {
  std::vector<std::shared_ptr<Live>> all;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, live] : live_) all.push_back(live);
  }
  std::vector<Interaction> out;
  out.reserve(all.size());
  for (auto& live : all) {
    std::lock_guard lock(live->mu);
    out.push_back(live->data);
  }
  std::sort(out.begin(), out.end(), [](const Interaction& a, const Interaction& b) {
    return a.started_at != b.started_at ? a.started_at < b.started_at : a.id < b.id;
  });
  return out;
}

}  // namespace draftwatch::service
