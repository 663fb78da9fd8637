#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "draftwatch/forecast/forecaster.hpp"
#include "draftwatch/service/credentials.hpp"
#include "draftwatch/service/service.hpp"
#include "json.hpp"

namespace draftwatch::sim {

// Synthetic study: users open replies on generated threads and type drafts
// whose wording is drawn from the forecaster's lexicons, so every effect
// reaches the scores through text. Tone drifts are per-second drifts of
// the log-propensity of risk-raising words (hostile, profane, absolute,
// second person, '!'); hedges move the opposite way. A positive drift
// therefore raises scores over the course of a draft.
struct SimulationSpec {
  std::uint64_t seed = 1;
  std::size_t n_users = 14;
  std::size_t n_posts = 400;
  std::size_t pairs_target = 334;
  double at_risk_fraction = 0.5;
  std::size_t phase1_interactions_per_user = 2;
  double submit_probability = 0.85;

  // Injected treatment effects (zero in a null study).
  double time_delta_secs = 15.3;             // at-risk, treatment minus control
  double not_at_risk_time_delta_secs = 9.1;  // not-at-risk, treatment minus control
  double treatment_tone_drift = -0.006;      // at-risk treatment drafts
  double control_tone_drift = 0.012;         // at-risk control drafts
  double formality_shift = 0.15;             // at-risk treatment drafts
  double question_shift = 0.06;              // at-risk treatment drafts

  // Behaviour shared by both conditions.
  double mean_draft_secs_at_risk = 174.2;
  double mean_draft_secs_not_at_risk = 124.3;
  double draft_time_shape = 25.0;  // gamma shape; CV = 1/sqrt(shape)
  double not_at_risk_tone_drift = -0.012;
  double start_epoch = 1.7e9;

  // Same baseline with every injected effect set to zero.
  static SimulationSpec Null(std::uint64_t seed);

  void Validate() const;  // throws BadSpec
  nlohmann::json ToJson() const;
  static SimulationSpec FromJson(const nlohmann::json& j);  // missing keys keep defaults
};

// Client side of the wire protocol.
class TrafficDriver {
 public:
  struct Opened {
    std::string interaction_id;
    bool condition_visible = false;
  };

  virtual ~TrafficDriver() = default;
  // Simulated wall clock for the next request.
  virtual void SetTime(double) {}
  virtual void Activate(const std::string& credential) = 0;
  virtual Opened Open(const std::string& credential, const std::string& post_id, const std::string& target_comment_id,
                      const std::vector<forecast::Comment>& comments, double client_t) = 0;
  virtual void Snapshot(const std::string& interaction_id, const std::string& draft, double client_t) = 0;
  virtual void Finalize(const std::string& interaction_id, service::Outcome outcome) = 0;
};

// Calls a Service directly; SetTime drives the clock the service was built with.
class InProcessDriver final : public TrafficDriver {
 public:
  InProcessDriver(service::Service& service, double& clock) : service_(service), clock_(clock) {}
  void SetTime(double t) override { clock_ = t; }
  void Activate(const std::string& credential) override;
  Opened Open(const std::string& credential, const std::string& post_id, const std::string& target_comment_id,
              const std::vector<forecast::Comment>& comments, double client_t) override;
  void Snapshot(const std::string& interaction_id, const std::string& draft, double client_t) override;
  void Finalize(const std::string& interaction_id, service::Outcome outcome) override;

 private:
  service::Service& service_;
  double& clock_;
};

// Talks JSON over HTTP to a running server.
class HttpDriver final : public TrafficDriver {
 public:
  explicit HttpDriver(const std::string& base_url);
  ~HttpDriver() override;
  void Activate(const std::string& credential) override;
  Opened Open(const std::string& credential, const std::string& post_id, const std::string& target_comment_id,
              const std::vector<forecast::Comment>& comments, double client_t) override;
  void Snapshot(const std::string& interaction_id, const std::string& draft, double client_t) override;
  void Finalize(const std::string& interaction_id, service::Outcome outcome) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SimulationSummary {
  std::size_t interactions = 0;
  std::size_t phase1_interactions = 0;
  std::size_t expected_pairs = 0;  // binary-band matching
  std::size_t snapshots = 0;
};

// Issues credentials "sim-<seed>-<user>" into `credentials` and plays the
// study through `driver` until binary-band matching would yield exactly
// pairs_target pairs. `forecaster` must score like the server's so the
// client-side band bookkeeping agrees with the logged scores.
SimulationSummary RunSimulation(const SimulationSpec& spec, const forecast::ReferenceForecaster& forecaster,
                                service::CredentialStore& credentials, TrafficDriver& driver);

// In-process study against a fresh Service writing to `sink`; returns the
// service's interactions.
std::vector<service::Interaction> SimulateInProcess(const SimulationSpec& spec,
                                                    const forecast::ReferenceForecaster& forecaster,
                                                    service::EventSink& sink, SimulationSummary* summary = nullptr);

// Salt the in-process simulation uses for condition assignment.
std::string SimulationSalt(std::uint64_t seed);

}  // namespace draftwatch::sim
