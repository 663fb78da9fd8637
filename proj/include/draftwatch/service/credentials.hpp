#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace draftwatch::service {

struct Credential {
  std::string user_id;
  std::string token;
  int phase = 2;
  bool revoked = false;

  bool operator==(const Credential&) const = default;
};

// Operator-issued opaque tokens, one per user. When constructed with a path
// the store is persisted as JSON ({"credentials": [...]}) after every change
// and re-read when the file changes underneath it (the CLI and a running
// server share the file). Thread-safe.
class CredentialStore {
 public:
  CredentialStore() = default;  // in-memory only
  explicit CredentialStore(std::filesystem::path path);

  // Generates a random 128-bit hex token. Throws DuplicateUser.
  Credential Issue(const std::string& user_id, int phase);
  // Same, with a caller-chosen token (used by deterministic simulation).
  Credential Insert(Credential credential);
  // Throws UnknownCredential when the user has no credential.
  void Revoke(const std::string& user_id);
  void SetPhase(const std::string& user_id, int phase);

  // Throws UnknownCredential or RevokedCredential.
  Credential Validate(const std::string& token);

  std::vector<Credential> All();

 private:
  void ReloadIfChangedLocked();
  void SaveLocked();

  std::mutex mu_;
  std::optional<std::filesystem::path> path_;
  std::filesystem::file_time_type loaded_mtime_{};
  std::map<std::string, Credential> by_user_;
};

}  // namespace draftwatch::service
