#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "draftwatch/forecast/forecaster.hpp"

namespace draftwatch::intervention {

using forecast::RiskScore;

enum class Color { kNone, kRed, kGreen };
enum class Verdict { kIncreases, kDecreases, kNeutral };

std::string_view ColorName(Color c);
std::string_view VerdictName(Verdict v);

struct InterventionConfig {
  double warn_threshold = 0.55;
  double epsilon = 0.02;
  // Red reply shade: clamp((reply - red_floor) / (1 - red_floor)).
  double red_floor = 0.0;
  // Green reply shade: clamp((context - reply) / green_full_delta).
  double green_full_delta = 0.45;

  // Throws BadConfig unless 0 < warn_threshold < 1, 0 <= epsilon < 0.5,
  // 0 <= red_floor < 1 and green_full_delta > 0.
  void Validate() const;
};

// What a panel shows: wire form {message, color, intensity}.
struct Directive {
  std::string message;
  Color color = Color::kNone;
  double intensity = 0.0;

  bool operator==(const Directive&) const = default;
};

struct ContextAssessment {
  RiskScore score{0.0};
  bool at_risk = false;
  Directive display;
};

struct ReplyAssessment {
  RiskScore context_score{0.0};
  RiskScore reply_score{0.0};
  Verdict verdict = Verdict::kNeutral;
  Directive display;
};

// Message table keyed by "context.at_risk", "context.calm",
// "reply.increases", "reply.decreases", "reply.neutral".
class MessageTemplates {
 public:
  static MessageTemplates Parse(std::string_view contents);
  static MessageTemplates Load(const std::filesystem::path& path);
  static const MessageTemplates& Embedded();

  const std::string& Get(std::string_view key) const;
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Words a message may never contain (matched case-insensitively on word
// boundaries).
const std::vector<std::string>& ForbiddenMessageTerms();
bool ContainsForbiddenTerm(std::string_view message);

double Clamp01(double x);

// at_risk iff score > warn_threshold; shade = clamp((s - t) / (1 - t)).
ContextAssessment AssessContext(RiskScore score, const InterventionConfig& cfg,
                                const MessageTemplates& templates = MessageTemplates::Embedded());

// increases iff reply - context > epsilon; decreases iff context - reply >
// epsilon and the context is above the warning threshold; else neutral.
ReplyAssessment AssessReply(RiskScore context, RiskScore reply, const InterventionConfig& cfg,
                            const MessageTemplates& templates = MessageTemplates::Embedded());

std::string RenderMessage(const ContextAssessment& a, const MessageTemplates& templates);
std::string RenderMessage(const ReplyAssessment& a, const MessageTemplates& templates);

}  // namespace draftwatch::intervention
