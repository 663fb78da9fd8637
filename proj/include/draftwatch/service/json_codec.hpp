#pragma once

#include "draftwatch/intervention/intervention.hpp"
#include "draftwatch/service/interaction.hpp"
#include "json.hpp"

namespace draftwatch::service {

using nlohmann::json;

json ToJson(const Comment& c);
Comment CommentFromJson(const json& j);
std::vector<Comment> CommentsFromJson(const json& j);

json ToJson(const DraftSnapshot& s);
DraftSnapshot SnapshotFromJson(const json& j);

// Compacted interaction object. Field set is identical for both conditions.
json ToJson(const Interaction& i);
Interaction InteractionFromJson(const json& j);

json ToJson(const intervention::Directive& d);

}  // namespace draftwatch::service
