#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "draftwatch/text/lexicon.hpp"

namespace draftwatch::text {

struct Sentence {
  std::string text;        // trimmed, including its terminator
  std::string terminator;  // "" for a trailing unterminated fragment
  bool is_question() const { return terminator.find('?') != std::string::npos; }
  bool has_exclamation() const { return text.find('!') != std::string::npos; }
};

// Splits on runs of . ! ? (an ellipsis folds into one run) that are followed
// by whitespace or end of text. A lone '.' ending a known abbreviation
// ("e.g.", "Mr.") does not split. Fragments without any alphanumeric
// character are dropped.
class SentenceSplitter {
 public:
  SentenceSplitter();  // embedded abbreviation list
  explicit SentenceSplitter(Lexicon abbreviations) : abbreviations_(std::move(abbreviations)) {}

  std::vector<Sentence> Split(std::string_view text) const;

 private:
  Lexicon abbreviations_;
};

}  // namespace draftwatch::text
