#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "draftwatch/service/interaction.hpp"
#include "json.hpp"

namespace draftwatch::service {

inline constexpr const char* kEventsFile = "events.jsonl";
inline constexpr const char* kCompactedFile = "interactions.jsonl";

// Append-only destination for wire events. Append stamps "seq" (1-based,
// gap-free) and writes the record atomically with respect to other appends.
class EventSink {
 public:
  virtual ~EventSink() = default;
  std::uint64_t Append(nlohmann::json event);
  virtual void Flush() {}
  std::uint64_t last_seq();

 protected:
  explicit EventSink(std::uint64_t last_seq = 0) : seq_(last_seq) {}
  virtual void Write(const nlohmann::json& event) = 0;

 private:
  std::mutex mu_;
  std::uint64_t seq_;
};

// <dir>/events.jsonl, one JSON object per line, flushed per record.
class JsonlFileSink final : public EventSink {
 public:
  // Continues numbering after `last_seq` (from a replay of the existing file).
  JsonlFileSink(const std::filesystem::path& dir, std::uint64_t last_seq);
  void Flush() override;

 private:
  void Write(const nlohmann::json& event) override;
  std::ofstream out_;
};

class MemorySink final : public EventSink {
 public:
  MemorySink() = default;
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  void Write(const nlohmann::json& event) override { lines_.push_back(event.dump()); }
  std::vector<std::string> lines_;
};

// Counts records without keeping them.
class DiscardingSink final : public EventSink {
 public:
  DiscardingSink() = default;

 private:
  void Write(const nlohmann::json&) override {}
};

// State reconstructed from an event stream.
struct ReplayState {
  std::map<std::string, Interaction> interactions;
  std::set<std::string> activated_users;
  std::uint64_t events = 0;
  std::uint64_t last_seq = 0;

  // Applies one event. Throws InvalidArgument when the event is malformed
  // or inconsistent with the state so far.
  void Apply(const nlohmann::json& event);
  std::vector<Interaction> SortedInteractions() const;
};

// Throws CorruptLog naming the 1-based line. A final line without a
// terminating newline counts as truncated.
ReplayState Replay(std::istream& in, const std::string& source_name);
// A missing file or directory replays to an empty state.
ReplayState ReplayDir(const std::filesystem::path& dir);

// One interaction per line, ordered by (started_at, id).
void WriteCompacted(std::vector<Interaction> interactions, std::ostream& out);
std::string CompactedString(std::vector<Interaction> interactions);
std::vector<Interaction> ReadCompacted(std::istream& in, const std::string& source_name);

// Replays <dir>/events.jsonl; falls back to <dir>/interactions.jsonl when
// there is no event log.
std::vector<Interaction> LoadInteractions(const std::filesystem::path& dir);

}  // namespace draftwatch::service
