#include "draftwatch/service/assignment.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>
#include <cstdint>
#include <string>

#include "draftwatch/error.hpp"

namespace draftwatch::service {
namespace {

void AppendField(std::string& out, std::string_view field) {
  const auto len = static_cast<std::uint64_t>(field.size());
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<char>((len >> shift) & 0xFF));
  out.append(field);
}

}  // namespace

std::string_view ConditionName(Condition c) { return c == Condition::kTreatment ? "treatment" : "control"; }

Condition ParseCondition(std::string_view name) {
  if (name == "treatment") return Condition::kTreatment;
  if (name == "control") return Condition::kControl;
  throw Error(Errc::kInvalidArgument, "unknown condition '" + std::string(name) + "'");
}

double AssignmentUnit(std::string_view user_id, std::string_view post_id, std::string_view salt) {
  std::string message;
  AppendField(message, user_id);
  AppendField(message, post_id);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int digest_len = 0;
  HMAC(EVP_sha256(), salt.data(), static_cast<int>(salt.size()),
       reinterpret_cast<const unsigned char*>(message.data()), message.size(), digest.data(), &digest_len);
  std::uint64_t word = 0;
  for (int i = 0; i < 8; ++i) word = (word << 8) | digest[i];
  word &= (std::uint64_t{1} << 63) - 1;
  return static_cast<double>(word) / 9223372036854775808.0;  // 2^63
}

Condition AssignCondition(std::string_view user_id, std::string_view post_id, std::string_view salt) {
  return AssignmentUnit(user_id, post_id, salt) < 0.5 ? Condition::kTreatment : Condition::kControl;
}

}  // namespace draftwatch::service
