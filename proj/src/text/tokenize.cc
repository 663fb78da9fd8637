#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::text {
namespace {

bool IsWordByte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool IsSentencePunct(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsClausePunct(char c) { return c == ',' || c == ';' || c == ':'; }

// Folds the typographic apostrophe and ellipsis to ASCII.
std::string Normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80) {
      auto third = static_cast<unsigned char>(text[i + 2]);
      if (third == 0x99) {
        out.push_back('\'');
        i += 2;
        continue;
      }
      if (third == 0xA6) {
        out.append("...");
        i += 2;
        continue;
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

}  // namespace

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

bool IsBlank(std::string_view s) { return Trim(s).empty(); }

std::vector<Token> Tokenize(std::string_view raw) {
  const std::string text = Normalize(raw);
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (IsWordByte(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n) {
        if (IsWordByte(static_cast<unsigned char>(text[j]))) {
          ++j;
        } else if (text[j] == '\'' && j + 1 < n && IsWordByte(static_cast<unsigned char>(text[j + 1]))) {
          ++j;
        } else {
          break;
        }
      }
      std::string original = text.substr(i, j - i);
      tokens.push_back({ToLowerAscii(original), std::move(original), true});
      i = j;
    } else if (IsSentencePunct(c)) {
      std::size_t j = i;
      while (j < n && IsSentencePunct(text[j])) ++j;
      std::string mark = text.substr(i, j - i);
      tokens.push_back({mark, mark, false});
      i = j;
    } else if (IsClausePunct(c)) {
      tokens.push_back({std::string(1, c), std::string(1, c), false});
      ++i;
    } else {
      ++i;
    }
  }
  return tokens;
}

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> words;
  for (auto& tok : Tokenize(text)) {
    if (tok.is_word) words.push_back(std::move(tok.text));
  }
  return words;
}

}  // namespace draftwatch::text
