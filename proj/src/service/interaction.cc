#include "draftwatch/service/interaction.hpp"

#include "draftwatch/error.hpp"

namespace draftwatch::service {

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kOpen: return "open";
    case Outcome::kSubmitted: return "submitted";
    case Outcome::kCancelled: return "cancelled";
    case Outcome::kAbandoned: return "abandoned";
  }
  return "open";
}

Outcome ParseOutcome(std::string_view name) {
  if (name == "open") return Outcome::kOpen;
  if (name == "submitted") return Outcome::kSubmitted;
  if (name == "cancelled") return Outcome::kCancelled;
  if (name == "abandoned") return Outcome::kAbandoned;
  throw Error(Errc::kInvalidArgument, "unknown outcome '" + std::string(name) + "'");
}

std::string_view Interaction::FinalDraft() const {
  for (auto it = snapshots.rbegin(); it != snapshots.rend(); ++it) {
    if (it->kind == SnapshotKind::kReply) return it->draft_text;
  }
  return {};
}

}  // namespace draftwatch::service
