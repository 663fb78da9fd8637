#include "draftwatch/intervention/intervention.hpp"

#include <algorithm>
#include <cmath>

#include "draftwatch/embedded_data.hpp"
#include "draftwatch/error.hpp"
#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::intervention {

std::string_view ColorName(Color c) {
  switch (c) {
    case Color::kNone: return "none";
    case Color::kRed: return "red";
    case Color::kGreen: return "green";
  }
  return "none";
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kIncreases: return "increases";
    case Verdict::kDecreases: return "decreases";
    case Verdict::kNeutral: return "neutral";
  }
  return "neutral";
}

void InterventionConfig::Validate() const {
  if (!(warn_threshold > 0.0 && warn_threshold < 1.0)) throw Error(Errc::kBadConfig, "warn_threshold must be in (0,1)");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) throw Error(Errc::kBadConfig, "epsilon must be in [0,0.5)");
  if (!(red_floor >= 0.0 && red_floor < 1.0)) throw Error(Errc::kBadConfig, "red_floor must be in [0,1)");
  if (!(green_full_delta > 0.0)) throw Error(Errc::kBadConfig, "green_full_delta must be positive");
}

MessageTemplates MessageTemplates::Parse(std::string_view contents) {
  static constexpr std::string_view kRequired[] = {"context.at_risk", "context.calm", "reply.increases",
                                                   "reply.decreases", "reply.neutral"};
  MessageTemplates t;
  for (const auto& line : text::DataLines(contents)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::kBadConfig, "template line without '=': " + line);
    std::string key(text::Trim(std::string_view(line).substr(0, eq)));
    std::string value(text::Trim(std::string_view(line).substr(eq + 1)));
    if (ContainsForbiddenTerm(value)) throw Error(Errc::kBadConfig, "template '" + key + "' uses a forbidden term");
    t.entries_[key] = std::move(value);
  }
  for (auto key : kRequired) {
    if (!t.entries_.contains(key)) throw Error(Errc::kBadConfig, "missing template '" + std::string(key) + "'");
  }
  return t;
}

MessageTemplates MessageTemplates::Load(const std::filesystem::path& path) { return Parse(text::ReadFile(path)); }

const MessageTemplates& MessageTemplates::Embedded() {
  static const MessageTemplates kEmbedded = Parse(EmbeddedFile("templates.txt"));
  return kEmbedded;
}

const std::string& MessageTemplates::Get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(Errc::kBadConfig, "missing template '" + std::string(key) + "'");
  return it->second;
}

const std::vector<std::string>& ForbiddenMessageTerms() {
  static const std::vector<std::string> kTerms = {"should", "must", "blame", "your fault", "do not post",
                                                  "don't post", "stop"};
  return kTerms;
}

bool ContainsForbiddenTerm(std::string_view message) {
  // Compare on the word sequence so "shoulder" does not match "should".
  std::string joined;
  for (const auto& w : text::Words(message)) {
    joined.push_back(' ');
    joined += w;
  }
  joined.push_back(' ');
  for (const auto& term : ForbiddenMessageTerms()) {
    if (joined.find(" " + term + " ") != std::string::npos) return true;
  }
  return false;
}

double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

std::string RenderMessage(const ContextAssessment& a, const MessageTemplates& templates) {
  return templates.Get(a.at_risk ? "context.at_risk" : "context.calm");
}

std::string RenderMessage(const ReplyAssessment& a, const MessageTemplates& templates) {
  switch (a.verdict) {
    case Verdict::kIncreases: return templates.Get("reply.increases");
    case Verdict::kDecreases: return templates.Get("reply.decreases");
    case Verdict::kNeutral: break;
  }
  return templates.Get("reply.neutral");
}

ContextAssessment AssessContext(RiskScore score, const InterventionConfig& cfg, const MessageTemplates& templates) {
  ContextAssessment a;
  a.score = score;
  a.at_risk = score.value() > cfg.warn_threshold;
  if (a.at_risk) {
    a.display.color = Color::kRed;
    a.display.intensity = Clamp01((score.value() - cfg.warn_threshold) / (1.0 - cfg.warn_threshold));
  }
  a.display.message = RenderMessage(a, templates);
  return a;
}

ReplyAssessment AssessReply(RiskScore context, RiskScore reply, const InterventionConfig& cfg,
                            const MessageTemplates& templates) {
  ReplyAssessment a;
  a.context_score = context;
  a.reply_score = reply;
  const double rise = reply.value() - context.value();
  if (rise > cfg.epsilon) {
    a.verdict = Verdict::kIncreases;
    a.display.color = Color::kRed;
    a.display.intensity = Clamp01((reply.value() - cfg.red_floor) / (1.0 - cfg.red_floor));
  } else if (-rise > cfg.epsilon && context.value() > cfg.warn_threshold) {
    a.verdict = Verdict::kDecreases;
    a.display.color = Color::kGreen;
    a.display.intensity = Clamp01(-rise / cfg.green_full_delta);
  }
  a.display.message = RenderMessage(a, templates);
  return a;
}

}  // namespace draftwatch::intervention
