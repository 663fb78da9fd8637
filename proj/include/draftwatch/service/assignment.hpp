#pragma once

#include <string_view>

namespace draftwatch::service {

enum class Condition { kTreatment, kControl };

std::string_view ConditionName(Condition c);
Condition ParseCondition(std::string_view name);  // throws InvalidArgument

// HMAC-SHA256 keyed by `salt` over the length-prefixed (user_id, post_id);
// the low 63 bits of the first eight digest bytes (big-endian) divided by
// 2^63. Uniform on [0,1).
double AssignmentUnit(std::string_view user_id, std::string_view post_id, std::string_view salt);

// Treatment iff AssignmentUnit(...) < 0.5. Deterministic, so every
// interaction of a user on a post lands in the same condition.
Condition AssignCondition(std::string_view user_id, std::string_view post_id, std::string_view salt);

}  // namespace draftwatch::service
