#include "draftwatch/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "draftwatch/analysis/matching.hpp"
#include "draftwatch/error.hpp"
#include "draftwatch/service/json_codec.hpp"
#include "httplib.h"

namespace draftwatch::sim {
namespace {

using nlohmann::json;
using Rng = std::mt19937_64;

constexpr double kSnapshotEvery = 5.0;
constexpr double kMinWords = 35.0;
constexpr double kMaxWords = 110.0;

// Filler vocabulary outside every forecaster lexicon.
const std::vector<std::string> kNouns = {
    "argument", "policy",  "evidence", "study",    "data",      "issue",   "example", "question", "system",
    "market",   "history", "reason",   "idea",     "source",    "article", "law",     "economy",  "society",
    "community", "result", "cost",     "tax",      "school",    "city",    "country", "theory",   "problem",
    "statement", "context", "effect",  "number",   "report",    "program", "position", "situation"};
const std::vector<std::string> kAdjectives = {"clear", "common", "different", "important", "new",  "simple", "strong",
                                              "recent", "real",  "fair",      "main",      "huge", "poor",   "correct"};
const std::vector<std::string> kVerbs = {"explain", "show",   "support", "change", "mean",  "follow", "include",
                                         "prove",   "accept", "discuss", "describe", "consider", "read", "understand"};
const std::vector<std::string> kAdverbs = {"really", "just", "also", "very", "often", "quite", "still", "again"};
const std::vector<std::string> kPrepositions = {"of", "in", "for", "about", "with", "from", "on", "by", "through"};
const std::vector<std::string> kConjunctions = {"and", "but", "because", "so", "if"};
const std::vector<std::string> kSubjectPronouns = {"i", "we", "they", "it", "this"};
const std::vector<std::string> kObjectPronouns = {"it", "that", "them", "this"};
const std::vector<std::string> kAuxiliaries = {"would", "can", "did", "will", "does"};
const std::vector<std::string> kHedgeVerbs = {"think", "believe", "guess", "suppose", "assume", "wonder"};

struct Style {
  double risk = 0.0;
  double hedge = 0.0;
  double second_person = 0.0;
  double exclaim = 0.0;
  double question = 0.0;
  double formality = 0.5;
};

Style Drifted(Style base, double tau) {
  const double up = std::exp(tau);
  base.risk = std::min(0.6, base.risk * up);
  base.second_person = std::min(0.8, base.second_person * up);
  base.exclaim = std::min(0.8, base.exclaim * up);
  base.hedge = std::min(0.6, base.hedge / up);
  return base;
}

class Writer {
 public:
  explicit Writer(const forecast::FeatureLexicons& lex) {
    for (const auto* l : {&lex.hostile, &lex.profanity, &lex.absolutes}) {
      for (const auto& t : l->Terms()) {
        if (t.find(' ') == std::string::npos) risk_.push_back(t);
      }
    }
    for (const auto& t : lex.hedges.Terms()) {
      if (t.find(' ') == std::string::npos) hedges_.push_back(t);
    }
    std::sort(risk_.begin(), risk_.end());
    std::sort(hedges_.begin(), hedges_.end());
    if (risk_.empty() || hedges_.empty()) throw Error(Errc::kBadSpec, "simulation needs risk and hedge lexicon terms");
  }

  // One sentence as display words; the last word carries the terminator.
  std::vector<std::string> Sentence(const Style& s, Rng& rng) const {
    std::vector<std::string> w;
    if (Flip(s.hedge, rng)) {
      const auto& h = Pick(hedges_, rng);
      if (std::find(kHedgeVerbs.begin(), kHedgeVerbs.end(), h) != kHedgeVerbs.end()) w.push_back("i");
      w.push_back(h);
    }
    Subject(s, rng, w);
    if (Flip((1.0 - s.formality) * 0.5, rng)) w.push_back(Pick(kAdverbs, rng));
    if (Flip(s.risk, rng)) w.push_back(Pick(risk_, rng));
    if (Flip(0.5, rng)) w.push_back(Pick(kAuxiliaries, rng));
    w.push_back(Pick(kVerbs, rng));
    Object(s, rng, w);
    if (Flip(s.risk, rng)) w.push_back(Pick(risk_, rng));
    if (Flip(s.formality, rng)) {
      w.push_back(Pick(kPrepositions, rng));
      w.push_back("the");
      if (Flip(0.4, rng)) w.push_back(Pick(kAdjectives, rng));
      w.push_back(Pick(kNouns, rng));
    }
    if (Flip(0.3, rng)) {
      w.push_back(Pick(kConjunctions, rng));
      Subject(s, rng, w);
      w.push_back(Pick(kVerbs, rng));
      Object(s, rng, w);
    }
    if (Flip(s.risk, rng)) w.push_back(Pick(risk_, rng));

    w.front()[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w.front()[0])));
    if (Flip(s.question, rng)) {
      w.back() += "?";
    } else if (Flip(s.exclaim, rng)) {
      w.back() += "!";
    } else {
      w.back() += ".";
    }
    return w;
  }

  std::string Paragraph(const Style& s, int sentences, Rng& rng) const {
    std::string out;
    for (int i = 0; i < sentences; ++i) {
      for (const auto& word : Sentence(s, rng)) {
        if (!out.empty()) out += ' ';
        out += word;
      }
    }
    return out;
  }

 private:
  static bool Flip(double p, Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

  static const std::string& Pick(const std::vector<std::string>& v, Rng& rng) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  }

  static void Subject(const Style& s, Rng& rng, std::vector<std::string>& w) {
    if (Flip(s.second_person, rng)) {
      w.push_back("you");
    } else if (Flip(s.formality, rng)) {
      w.push_back("the");
      if (Flip(0.4, rng)) w.push_back(Pick(kAdjectives, rng));
      w.push_back(Pick(kNouns, rng));
    } else {
      w.push_back(Pick(kSubjectPronouns, rng));
    }
  }

  static void Object(const Style& s, Rng& rng, std::vector<std::string>& w) {
    if (Flip(s.formality, rng)) {
      w.push_back(Flip(0.5, rng) ? "the" : "a");
      if (Flip(0.5, rng)) w.push_back(Pick(kAdjectives, rng));
      w.push_back(Pick(kNouns, rng));
    } else if (Flip(s.second_person * 0.5, rng)) {
      w.push_back("your");
      w.push_back(Pick(kNouns, rng));
    } else {
      w.push_back(Pick(kObjectPronouns, rng));
    }
  }

  std::vector<std::string> risk_;
  std::vector<std::string> hedges_;
};

const Style kTenseComment{0.9, 0.0, 0.8, 0.8, 0.0, 0.3};
const Style kCalmComment{0.0, 0.25, 0.05, 0.0, 0.3, 0.7};
const Style kRootPost{0.0, 0.1, 0.0, 0.0, 0.1, 0.8};

// Draft propensities at the first keystroke.
const Style kAtRiskDraft{0.08, 0.08, 0.3, 0.12, 0.12, 0.5};
const Style kNotAtRiskDraft{0.04, 0.1, 0.2, 0.06, 0.15, 0.6};

struct Draft {
  std::vector<std::string> words;
  double seconds = 0.0;

  std::string PrefixAt(double t) const {
    const auto n = static_cast<std::size_t>(std::floor(static_cast<double>(words.size()) * t / seconds + 1e-9));
    std::string out;
    for (std::size_t i = 0; i < std::min(n, words.size()); ++i) {
      if (i) out += ' ';
      out += words[i];
    }
    return out;
  }
};

class Study {
 public:
  Study(const SimulationSpec& spec, const forecast::ReferenceForecaster& forecaster,
        service::CredentialStore& credentials, TrafficDriver& driver)
      : spec_(spec),
        forecaster_(forecaster),
        credentials_(credentials),
        driver_(driver),
        writer_(forecaster.extractor().lexicons()),
        rng_(spec.seed),
        now_(spec.start_epoch) {}

  SimulationSummary Run() {
    std::vector<std::string> tokens;
    for (std::size_t u = 0; u < spec_.n_users; ++u) {
      const std::string user = "user-" + std::to_string(u + 1);
      const std::string token = "sim-" + std::to_string(spec_.seed) + "-" + std::to_string(u + 1);
      credentials_.Insert({user, token, spec_.phase1_interactions_per_user ? 1 : 2, false});
      tokens.push_back(token);
    }
    for (std::size_t u = 0; u < spec_.n_users; ++u) {
      Tick(1.0);
      driver_.Activate(tokens[u]);
      for (std::size_t k = 0; k < spec_.phase1_interactions_per_user; ++k) Interact(u, tokens[u], 1);
      if (spec_.phase1_interactions_per_user) credentials_.SetPhase("user-" + std::to_string(u + 1), 2);
    }
    const std::size_t cap = 50 * spec_.pairs_target + 1000;
    while (Pairs() < spec_.pairs_target) {
      if (summary_.interactions >= cap) {
        throw Error(Errc::kBadSpec, "simulation cannot reach " + std::to_string(spec_.pairs_target) + " pairs");
      }
      const auto u = std::uniform_int_distribution<std::size_t>(0, spec_.n_users - 1)(rng_);
      Interact(u, tokens[u], 2);
    }
    summary_.expected_pairs = Pairs();
    return summary_;
  }

 private:
  struct Tally {
    std::size_t controls = 0;
    std::size_t treatments = 0;
  };

  std::size_t Pairs() const {
    std::size_t n = 0;
    for (const auto& [key, t] : tally_) n += std::min(t.controls, t.treatments);
    return n;
  }

  void Tick(double secs) {
    now_ += secs;
    driver_.SetTime(now_);
  }

  double Uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool Flip(double p) { return Uniform(0.0, 1.0) < p; }

  std::vector<forecast::Comment> Chain(const std::string& post_id, bool tense) {
    std::vector<forecast::Comment> out;
    const int n = 2 + static_cast<int>(Uniform(0.0, 3.0));
    const double t0 = now_ - 3600.0 * (n + 1);
    out.push_back({post_id + "-c1", "author-" + std::to_string(static_cast<int>(Uniform(0, 1000))),
                   writer_.Paragraph(kRootPost, 3, rng_), t0});
    for (int i = 0; i < n; ++i) {
      const Style& s = tense ? kTenseComment : kCalmComment;
      out.push_back({post_id + "-c" + std::to_string(i + 2), "commenter-" + std::to_string(static_cast<int>(Uniform(0, 1000))),
                     writer_.Paragraph(s, 2 + static_cast<int>(Uniform(0.0, 2.0)), rng_), t0 + 3600.0 * (i + 1)});
    }
    return out;
  }

  Draft Compose(bool at_risk, bool treatment) {
    const double mean = at_risk ? spec_.mean_draft_secs_at_risk : spec_.mean_draft_secs_not_at_risk;
    const double delta = treatment ? (at_risk ? spec_.time_delta_secs : spec_.not_at_risk_time_delta_secs) : 0.0;
    Draft d;
    const double base = std::gamma_distribution<double>(spec_.draft_time_shape, mean / spec_.draft_time_shape)(rng_);
    d.seconds = std::max(10.0, std::round((base + delta) * 1000.0) / 1000.0);

    Style style = at_risk ? kAtRiskDraft : kNotAtRiskDraft;
    double drift = spec_.not_at_risk_tone_drift;
    if (at_risk) {
      drift = treatment ? spec_.treatment_tone_drift : spec_.control_tone_drift;
      if (treatment) {
        style.formality = std::clamp(style.formality + spec_.formality_shift, 0.0, 1.0);
        style.question = std::clamp(style.question + spec_.question_shift, 0.0, 1.0);
      }
    }
    const double target = std::floor(Uniform(kMinWords, kMaxWords + 1.0));
    while (static_cast<double>(d.words.size()) < target) {
      const double s = d.seconds * static_cast<double>(d.words.size()) / target;
      for (auto& w : writer_.Sentence(Drifted(style, drift * s), rng_)) d.words.push_back(std::move(w));
    }
    return d;
  }

  void Interact(std::size_t u, const std::string& token, int phase) {
    const std::string post_id = "post-" + std::to_string(1 + std::uniform_int_distribution<std::size_t>(0, spec_.n_posts - 1)(rng_));
    auto comments = Chain(post_id, Flip(spec_.at_risk_fraction));
    const double context = forecaster_.ScoreChain(forecast::CommentChain(comments)).value();
    const bool at_risk = analysis::ClassifyRiskBand(context, 0.55) == analysis::RiskBand::kAtRisk;

    Tick(Uniform(30.0, 600.0));
    const double start = now_;
    const auto opened = driver_.Open(token, post_id, comments.back().id, comments, start);
    const bool treatment = opened.condition_visible;
    const Draft draft = Compose(at_risk, treatment);

    std::size_t snaps = 0;
    for (double t = kSnapshotEvery; t < draft.seconds - 1e-9; t += kSnapshotEvery) {
      now_ = start + t;
      driver_.SetTime(now_);
      driver_.Snapshot(opened.interaction_id, draft.PrefixAt(t), start + t);
      ++snaps;
    }
    now_ = start + draft.seconds;
    driver_.SetTime(now_);
    driver_.Snapshot(opened.interaction_id, draft.PrefixAt(draft.seconds), start + draft.seconds);
    ++snaps;
    Tick(1.0);
    driver_.Finalize(opened.interaction_id,
                     Flip(spec_.submit_probability) ? service::Outcome::kSubmitted : service::Outcome::kCancelled);

    ++summary_.interactions;
    summary_.snapshots += snaps;
    if (phase == 1) ++summary_.phase1_interactions;
    auto& t = tally_[{u, at_risk}];
    (treatment ? t.treatments : t.controls) += 1;
  }

  const SimulationSpec& spec_;
  const forecast::ReferenceForecaster& forecaster_;
  service::CredentialStore& credentials_;
  TrafficDriver& driver_;
  Writer writer_;
  Rng rng_;
  double now_;
  std::map<std::pair<std::size_t, bool>, Tally> tally_;
  SimulationSummary summary_;
};

void RequireFinite(double v, const char* name) {
  if (!std::isfinite(v)) throw Error(Errc::kBadSpec, std::string(name) + " must be finite");
}

}  // namespace

SimulationSpec SimulationSpec::Null(std::uint64_t seed) {
  SimulationSpec s;
  s.seed = seed;
  s.time_delta_secs = 0.0;
  s.not_at_risk_time_delta_secs = 0.0;
  s.treatment_tone_drift = 0.0;
  s.control_tone_drift = 0.0;
  s.formality_shift = 0.0;
  s.question_shift = 0.0;
  return s;
}

void SimulationSpec::Validate() const {
  if (n_users == 0) throw Error(Errc::kBadSpec, "n_users must be positive");
  if (n_posts == 0) throw Error(Errc::kBadSpec, "n_posts must be positive");
  if (pairs_target == 0) throw Error(Errc::kBadSpec, "pairs_target must be positive");
  for (auto [v, name] : {std::pair{at_risk_fraction, "at_risk_fraction"}, {submit_probability, "submit_probability"}}) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::kBadSpec, std::string(name) + " must lie in [0, 1]");
  }
  for (auto [v, name] : {std::pair{time_delta_secs, "time_delta_secs"},
                         {not_at_risk_time_delta_secs, "not_at_risk_time_delta_secs"},
                         {treatment_tone_drift, "treatment_tone_drift"},
                         {control_tone_drift, "control_tone_drift"},
                         {formality_shift, "formality_shift"},
                         {question_shift, "question_shift"},
                         {not_at_risk_tone_drift, "not_at_risk_tone_drift"},
                         {start_epoch, "start_epoch"}}) {
    RequireFinite(v, name);
  }
  for (auto [v, name] : {std::pair{mean_draft_secs_at_risk, "mean_draft_secs_at_risk"},
                         {mean_draft_secs_not_at_risk, "mean_draft_secs_not_at_risk"},
                         {draft_time_shape, "draft_time_shape"}}) {
    if (!(std::isfinite(v) && v > 0.0)) throw Error(Errc::kBadSpec, std::string(name) + " must be positive");
  }
}

json SimulationSpec::ToJson() const {
  return {{"seed", seed},
          {"n_users", n_users},
          {"n_posts", n_posts},
          {"pairs_target", pairs_target},
          {"at_risk_fraction", at_risk_fraction},
          {"phase1_interactions_per_user", phase1_interactions_per_user},
          {"submit_probability", submit_probability},
          {"time_delta_secs", time_delta_secs},
          {"not_at_risk_time_delta_secs", not_at_risk_time_delta_secs},
          {"treatment_tone_drift", treatment_tone_drift},
          {"control_tone_drift", control_tone_drift},
          {"formality_shift", formality_shift},
          {"question_shift", question_shift},
          {"mean_draft_secs_at_risk", mean_draft_secs_at_risk},
          {"mean_draft_secs_not_at_risk", mean_draft_secs_not_at_risk},
          {"draft_time_shape", draft_time_shape},
          {"not_at_risk_tone_drift", not_at_risk_tone_drift},
          {"start_epoch", start_epoch}};
}

SimulationSpec SimulationSpec::FromJson(const json& j) {
  if (!j.is_object()) throw Error(Errc::kBadSpec, "simulation spec must be a JSON object");
  SimulationSpec s;
  const json defaults = s.ToJson();
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) throw Error(Errc::kBadSpec, "unknown simulation spec key '" + key + "'");
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("seed", s.seed);
    get("n_users", s.n_users);
    get("n_posts", s.n_posts);
    get("pairs_target", s.pairs_target);
    get("at_risk_fraction", s.at_risk_fraction);
    get("phase1_interactions_per_user", s.phase1_interactions_per_user);
    get("submit_probability", s.submit_probability);
    get("time_delta_secs", s.time_delta_secs);
    get("not_at_risk_time_delta_secs", s.not_at_risk_time_delta_secs);
    get("treatment_tone_drift", s.treatment_tone_drift);
    get("control_tone_drift", s.control_tone_drift);
    get("formality_shift", s.formality_shift);
    get("question_shift", s.question_shift);
    get("mean_draft_secs_at_risk", s.mean_draft_secs_at_risk);
    get("mean_draft_secs_not_at_risk", s.mean_draft_secs_not_at_risk);
    get("draft_time_shape", s.draft_time_shape);
    get("not_at_risk_tone_drift", s.not_at_risk_tone_drift);
    get("start_epoch", s.start_epoch);
  } catch (const json::exception& e) {
    throw Error(Errc::kBadSpec, std::string("malformed simulation spec: ") + e.what());
  }
  s.Validate();
  return s;
}

void InProcessDriver::Activate(const std::string& credential) { service_.Activate(credential); }

TrafficDriver::Opened InProcessDriver::Open(const std::string& credential, const std::string& post_id,
                                            const std::string& target_comment_id,
                                            const std::vector<forecast::Comment>& comments, double client_t) {
  auto r = service_.Open(credential, post_id, target_comment_id, comments, client_t);
  return {r.interaction.id, r.condition_visible};
}

void InProcessDriver::Snapshot(const std::string& interaction_id, const std::string& draft, double client_t) {
  service_.Snapshot(interaction_id, draft, client_t);
}

void InProcessDriver::Finalize(const std::string& interaction_id, service::Outcome outcome) {
  service_.Finalize(interaction_id, outcome);
}

struct HttpDriver::Impl {
  explicit Impl(const std::string& base_url) : client(base_url) {}

  json Post(const std::string& path, const json& body) {
    auto res = client.Post(path, body.dump(), "application/json");
    if (!res) throw Error(Errc::kRemote, path + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw Error(Errc::kRemote, path + " returned " + std::to_string(res->status) + ": " + res->body);
    }
    return json::parse(res->body);
  }

  httplib::Client client;
};

HttpDriver::HttpDriver(const std::string& base_url) : impl_(std::make_unique<Impl>(base_url)) {
  impl_->client.set_keep_alive(true);
  impl_->client.set_tcp_nodelay(true);
}

HttpDriver::~HttpDriver() = default;

void HttpDriver::Activate(const std::string& credential) { impl_->Post("/v1/activate", {{"credential", credential}}); }

TrafficDriver::Opened HttpDriver::Open(const std::string& credential, const std::string& post_id,
                                       const std::string& target_comment_id,
                                       const std::vector<forecast::Comment>& comments, double client_t) {
  json cs = json::array();
  for (const auto& c : comments) cs.push_back(service::ToJson(c));
  const json r = impl_->Post("/v1/interaction/open", {{"credential", credential},
                                                      {"post_id", post_id},
                                                      {"target_comment_id", target_comment_id},
                                                      {"comments", cs},
                                                      {"client_t", client_t}});
  return {r.at("interaction_id").get<std::string>(), r.at("condition_visible").get<bool>()};
}

void HttpDriver::Snapshot(const std::string& interaction_id, const std::string& draft, double client_t) {
  impl_->Post("/v1/interaction/" + interaction_id + "/snapshot", {{"draft_text", draft}, {"client_t", client_t}});
}

void HttpDriver::Finalize(const std::string& interaction_id, service::Outcome outcome) {
  impl_->Post("/v1/interaction/" + interaction_id + "/finalize", {{"outcome", service::OutcomeName(outcome)}});
}

SimulationSummary RunSimulation(const SimulationSpec& spec, const forecast::ReferenceForecaster& forecaster,
                                service::CredentialStore& credentials, TrafficDriver& driver) {
  spec.Validate();
  return Study(spec, forecaster, credentials, driver).Run();
}

std::string SimulationSalt(std::uint64_t seed) { return "sim-salt-" + std::to_string(seed); }

std::vector<service::Interaction> SimulateInProcess(const SimulationSpec& spec,
                                                    const forecast::ReferenceForecaster& forecaster,
                                                    service::EventSink& sink, SimulationSummary* summary) {
  spec.Validate();
  service::CredentialStore credentials;
  double clock = spec.start_epoch;
  std::uint64_t next_id = 0;
  service::ServiceOptions options;
  options.salt = SimulationSalt(spec.seed);
  service::Service svc(
      forecaster, credentials, sink, options, [&clock] { return clock; },
      [&next_id, &spec] { return "ix-" + std::to_string(spec.seed) + "-" + std::to_string(++next_id); });
  InProcessDriver driver(svc, clock);
  auto s = RunSimulation(spec, forecaster, credentials, driver);
  if (summary) *summary = s;
  return svc.Interactions();
}

}  // namespace draftwatch::sim
