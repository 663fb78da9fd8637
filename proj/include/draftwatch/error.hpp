#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace draftwatch {

enum class Errc {
  kInvalidArgument,
  kEmptyChain,
  kBadConfig,
  kIo,
  // service
  kUnknownCredential,
  kRevokedCredential,
  kDuplicateUser,
  kNotActivated,
  kUnknownInteraction,
  kClosedInteraction,
  kAlreadyClosed,
  kCorruptLog,
  kBindFailure,
  kRemote,
  // analysis
  kNoSnapshots,
  kLengthMismatch,
  kTooFew,
  kEmptySample,
  kConstantInput,
  kDegenerateMargins,
  kEmptyText,
  kNoPairs,
  // simulation
  kBadSpec,
};

std::string_view ErrcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace draftwatch
