#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace draftwatch::text {

struct Token {
  std::string text;      // lowercased; punctuation tokens hold the mark
  std::string original;  // as written
  bool is_word = false;
};

// Lowercases ASCII, splits on non-alphanumerics and keeps apostrophized
// contractions ("don't", "you're"; U+2019 is folded to '). Bytes >= 0x80
// count as word characters so non-ASCII words stay whole. A run of
// sentence punctuation (. ! ?) becomes one token; , ; : are one token each;
// everything else separates words and is dropped.
std::vector<Token> Tokenize(std::string_view text);

// Word tokens only, lowercased.
std::vector<std::string> Words(std::string_view text);

std::string ToLowerAscii(std::string_view s);
std::string_view Trim(std::string_view s);
bool IsBlank(std::string_view s);

}  // namespace draftwatch::text
