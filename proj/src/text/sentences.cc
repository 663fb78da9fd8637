#include "draftwatch/text/sentences.hpp"

#include <cctype>

#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::text {
namespace {

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool HasAlnum(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

// Replaces U+2026 with "..." so an ellipsis folds into a terminal run.
std::string FoldEllipsis(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0xA6) {
      out.append("...");
      i += 2;
      continue;
    }
    out.push_back(text[i]);
  }
  return out;
}

}  // namespace

SentenceSplitter::SentenceSplitter() : abbreviations_(Lexicon::Embedded("lexicons/abbreviations.txt")) {}

std::vector<Sentence> SentenceSplitter::Split(std::string_view raw) const {
  const std::string text = FoldEllipsis(raw);
  std::vector<Sentence> out;
  auto emit = [&](std::size_t begin, std::size_t end, std::string terminator) {
    std::string_view body = Trim(std::string_view(text).substr(begin, end - begin));
    if (!HasAlnum(body)) return;
    out.push_back({std::string(body), std::move(terminator)});
  };

  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < n && IsTerminal(text[run_end])) ++run_end;
    const bool at_boundary = run_end == n || std::isspace(static_cast<unsigned char>(text[run_end]));
    if (!at_boundary) {
      i = run_end;
      continue;
    }
    std::string run = text.substr(i, run_end - i);
    if (run == ".") {
      std::size_t word_begin = i;
      while (word_begin > start && !std::isspace(static_cast<unsigned char>(text[word_begin - 1]))) {
        --word_begin;
      }
      while (word_begin < i && !std::isalnum(static_cast<unsigned char>(text[word_begin]))) ++word_begin;
      std::string word = ToLowerAscii(std::string_view(text).substr(word_begin, run_end - word_begin));
      if (abbreviations_.Contains(word)) {
        i = run_end;
        continue;
      }
    }
    emit(start, run_end, std::move(run));
    start = run_end;
    i = run_end;
  }
  if (start < n) emit(start, n, "");
  return out;
}

}  // namespace draftwatch::text
