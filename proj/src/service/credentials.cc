#include "draftwatch/service/credentials.hpp"

#include <openssl/rand.h>

#include <array>
#include <fstream>

#include "draftwatch/error.hpp"
#include "draftwatch/text/lexicon.hpp"
#include "json.hpp"

namespace draftwatch::service {
namespace {

using nlohmann::json;

std::string RandomToken() {
  std::array<unsigned char, 16> bytes{};
  if (RAND_bytes(bytes.data(), static_cast<int>(bytes.size())) != 1) {
    throw Error(Errc::kIo, "RAND_bytes failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char b : bytes) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xF]);
  }
  return out;
}

void CheckPhase(int phase) {
  if (phase != 1 && phase != 2) throw Error(Errc::kInvalidArgument, "phase must be 1 or 2");
}

}  // namespace

CredentialStore::CredentialStore(std::filesystem::path path) : path_(std::move(path)) {
  std::lock_guard lock(mu_);
  ReloadIfChangedLocked();
}

void CredentialStore::ReloadIfChangedLocked() {
  if (!path_) return;
  std::error_code ec;
  if (!std::filesystem::exists(*path_, ec)) return;
  auto mtime = std::filesystem::last_write_time(*path_, ec);
  if (ec || mtime == loaded_mtime_) return;
  json doc;
  try {
    doc = json::parse(text::ReadFile(*path_));
  } catch (const json::exception& e) {
    throw Error(Errc::kBadConfig, "credential store '" + path_->string() + "': " + e.what());
  }
  std::map<std::string, Credential> loaded;
  for (const auto& c : doc.at("credentials")) {
    Credential cred{c.at("user_id").get<std::string>(), c.at("token").get<std::string>(), c.at("phase").get<int>(),
                    c.at("revoked").get<bool>()};
    loaded[cred.user_id] = std::move(cred);
  }
  by_user_ = std::move(loaded);
  loaded_mtime_ = mtime;
}

void CredentialStore::SaveLocked() {
  if (!path_) return;
  json list = json::array();
  for (const auto& [user, c] : by_user_) {
    list.push_back({{"user_id", c.user_id}, {"token", c.token}, {"phase", c.phase}, {"revoked", c.revoked}});
  }
  if (path_->has_parent_path()) std::filesystem::create_directories(path_->parent_path());
  auto tmp = *path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIo, "cannot write '" + tmp.string() + "'");
    out << json{{"credentials", list}}.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, *path_);
  loaded_mtime_ = std::filesystem::last_write_time(*path_);
}

Credential CredentialStore::Issue(const std::string& user_id, int phase) {
  return Insert({user_id, RandomToken(), phase, false});
}

Credential CredentialStore::Insert(Credential credential) {
  if (credential.user_id.empty()) throw Error(Errc::kInvalidArgument, "user_id is empty");
  if (credential.token.empty()) throw Error(Errc::kInvalidArgument, "token is empty");
  CheckPhase(credential.phase);
  std::lock_guard lock(mu_);
  ReloadIfChangedLocked();
  if (by_user_.contains(credential.user_id)) {
    throw Error(Errc::kDuplicateUser, "user '" + credential.user_id + "' already has a credential");
  }
  for (const auto& [user, c] : by_user_) {
    if (c.token == credential.token) throw Error(Errc::kInvalidArgument, "token already issued");
  }
  by_user_[credential.user_id] = credential;
  SaveLocked();
  return credential;
}

void CredentialStore::Revoke(const std::string& user_id) {
  std::lock_guard lock(mu_);
  ReloadIfChangedLocked();
  auto it = by_user_.find(user_id);
  if (it == by_user_.end()) throw Error(Errc::kUnknownCredential, "no credential for user '" + user_id + "'");
  it->second.revoked = true;
  SaveLocked();
}

void CredentialStore::SetPhase(const std::string& user_id, int phase) {
  CheckPhase(phase);
  std::lock_guard lock(mu_);
  ReloadIfChangedLocked();
  auto it = by_user_.find(user_id);
  if (it == by_user_.end()) throw Error(Errc::kUnknownCredential, "no credential for user '" + user_id + "'");
  it->second.phase = phase;
  SaveLocked();
}

Credential CredentialStore::Validate(const std::string& token) {
  std::lock_guard lock(mu_);
  ReloadIfChangedLocked();
  for (const auto& [user, c] : by_user_) {
    if (c.token != token) continue;
    if (c.revoked) throw Error(Errc::kRevokedCredential, "credential has been revoked");
    return c;
  }
  throw Error(Errc::kUnknownCredential, "unknown credential");
}

std::vector<Credential> CredentialStore::All() {
  std::lock_guard lock(mu_);
  ReloadIfChangedLocked();
  std::vector<Credential> out;
  for (const auto& [user, c] : by_user_) out.push_back(c);
  return out;
}

}  // namespace draftwatch::service
