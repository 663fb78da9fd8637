#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "draftwatch/forecast/forecaster.hpp"
#include "draftwatch/service/assignment.hpp"

namespace draftwatch::service {

using forecast::Comment;
using forecast::RiskScore;

enum class Outcome { kOpen, kSubmitted, kCancelled, kAbandoned };

std::string_view OutcomeName(Outcome o);
Outcome ParseOutcome(std::string_view name);  // throws InvalidArgument

enum class SnapshotKind { kContext, kReply };

// One scored capture. The first record of every interaction is the context
// record (blank draft, context score, t = started_at); the rest are drafts.
struct DraftSnapshot {
  double t = 0.0;         // client time, epoch seconds
  double server_t = 0.0;  // server receipt time
  std::string draft_text;
  RiskScore score{0.0};
  SnapshotKind kind = SnapshotKind::kReply;

  bool operator==(const DraftSnapshot&) const = default;
};

// All scoring events from one reply-button press to submit/cancel.
struct Interaction {
  std::string id;
  std::string user_id;
  std::string post_id;
  std::string target_comment_id;
  Condition condition = Condition::kControl;
  int phase = 2;
  std::vector<Comment> comments;
  RiskScore context_score{0.0};
  double started_at = 0.0;
  std::vector<DraftSnapshot> snapshots;
  Outcome outcome = Outcome::kOpen;
  std::optional<double> closed_at;  // server time

  bool operator==(const Interaction&) const = default;

  // Last reply snapshot's draft, or "" when the user never typed.
  std::string_view FinalDraft() const;
};

}  // namespace draftwatch::service
