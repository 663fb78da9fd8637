#include "draftwatch/error.hpp"

#include "draftwatch/embedded_data.hpp"

namespace draftwatch {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kEmptyChain: return "EmptyChain";
    case Errc::kBadConfig: return "BadConfig";
    case Errc::kIo: return "Io";
    case Errc::kUnknownCredential: return "UnknownCredential";
    case Errc::kRevokedCredential: return "RevokedCredential";
    case Errc::kDuplicateUser: return "DuplicateUser";
    case Errc::kNotActivated: return "NotActivated";
    case Errc::kUnknownInteraction: return "UnknownInteraction";
    case Errc::kClosedInteraction: return "ClosedInteraction";
    case Errc::kAlreadyClosed: return "AlreadyClosed";
    case Errc::kCorruptLog: return "CorruptLog";
    case Errc::kBindFailure: return "BindFailure";
    case Errc::kRemote: return "Remote";
    case Errc::kNoSnapshots: return "NoSnapshots";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kTooFew: return "TooFew";
    case Errc::kEmptySample: return "EmptySample";
    case Errc::kConstantInput: return "ConstantInput";
    case Errc::kDegenerateMargins: return "DegenerateMargins";
    case Errc::kEmptyText: return "EmptyText";
    case Errc::kNoPairs: return "NoPairs";
    case Errc::kBadSpec: return "BadSpec";
  }
  return "Unknown";
}

std::string_view EmbeddedFile(std::string_view relative_path) {
  const auto& data = EmbeddedData();
  auto it = data.find(std::string(relative_path));
  if (it == data.end()) {
    throw Error(Errc::kIo, "no embedded data file '" + std::string(relative_path) + "'");
  }
  return it->second;
}

}  // namespace draftwatch
