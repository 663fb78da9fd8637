#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "draftwatch/forecast/forecaster.hpp"
#include "draftwatch/intervention/intervention.hpp"
#include "draftwatch/service/credentials.hpp"
#include "draftwatch/service/event_log.hpp"
#include "draftwatch/service/interaction.hpp"

namespace draftwatch::service {

struct Session {
  std::string user_id;
  std::string credential;
  int phase = 2;
  double activated_at = 0.0;
};

struct ServiceOptions {
  std::string salt = "draftwatch";
  intervention::InterventionConfig intervention;
  intervention::MessageTemplates templates = intervention::MessageTemplates::Embedded();
  double idle_horizon_secs = 7200.0;
};

struct OpenResult {
  Interaction interaction;  // as logged, including the context record
  bool condition_visible = false;
  std::optional<intervention::ContextAssessment> assessment;  // empty in control
};

struct SnapshotResult {
  DraftSnapshot snapshot;
  std::optional<intervention::ReplyAssessment> assessment;  // empty in control
};

// Interaction lifecycle behind the wire protocol. Every scored request
// appends exactly one event to the sink. Calls on different interactions run
// concurrently; calls on one interaction are serialized.
class Service {
 public:
  using Clock = std::function<double()>;
  using IdSource = std::function<std::string()>;

  Service(const forecast::Forecaster& forecaster, CredentialStore& credentials, EventSink& sink,
          ServiceOptions options, Clock clock = SystemClock(), IdSource ids = RandomIds());

  // Restores interactions and activations from a replayed log. Open
  // interactions become writable again.
  void Restore(const ReplayState& state);

  // Idempotent. Throws UnknownCredential / RevokedCredential.
  Session Activate(const std::string& credential);

  // Throws NotActivated, EmptyChain, InvalidArgument plus credential errors.
  // `client_t` defaults to server time.
  OpenResult Open(const std::string& credential, const std::string& post_id, const std::string& target_comment_id,
                  std::vector<Comment> comments, std::optional<double> client_t = std::nullopt);

  // Throws UnknownInteraction, ClosedInteraction, or InvalidArgument when
  // client_t precedes the previous snapshot.
  SnapshotResult Snapshot(const std::string& interaction_id, const std::string& draft_text,
                          std::optional<double> client_t = std::nullopt);

  // outcome must be submitted or cancelled. Throws UnknownInteraction,
  // AlreadyClosed.
  Interaction Finalize(const std::string& interaction_id, Outcome outcome);

  // Marks interactions idle for longer than the horizon as abandoned.
  // Returns how many were swept.
  std::size_t SweepIdle();

  // Stateless scoring for remote forecaster clients; logged as a "score" event.
  RiskScore Score(const std::string& credential, std::vector<Comment> comments, const std::string& draft);

  std::optional<Interaction> Find(const std::string& interaction_id) const;
  std::vector<Interaction> Interactions() const;  // ordered by (started_at, id)

  const ServiceOptions& options() const { return options_; }

  static Clock SystemClock();
  static IdSource RandomIds();

 private:
  struct Live {
    std::mutex mu;
    Interaction data;
    std::unique_ptr<forecast::DraftScorer> scorer;  // null once closed
    double last_activity = 0.0;                     // server time
  };

  std::shared_ptr<Live> Get(const std::string& id) const;
  Credential RequireActivated(const std::string& credential);

  const forecast::Forecaster& forecaster_;
  CredentialStore& credentials_;
  EventSink& sink_;
  ServiceOptions options_;
  Clock clock_;
  IdSource ids_;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Live>> live_;
  std::map<std::string, Session> sessions_;
};

}  // namespace draftwatch::service
