#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace draftwatch::text {

// A word list: UTF-8, one lowercase term per line, '#' starts a comment.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon Parse(std::string_view contents);
  static Lexicon Load(const std::filesystem::path& path);
  // Loads data/<relative_path> from the compiled-in copy.
  static Lexicon Embedded(std::string_view relative_path);

  bool Contains(std::string_view term) const { return terms_.find(term) != terms_.end(); }
  std::size_t size() const { return terms_.size(); }
  // Sorted, for deterministic iteration.
  std::vector<std::string> Terms() const { return {terms_.begin(), terms_.end()}; }

 private:
  std::set<std::string, std::less<>> terms_;
};

// Splits a line-oriented data file into trimmed, non-comment, non-empty lines.
std::vector<std::string> DataLines(std::string_view contents);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace draftwatch::text
