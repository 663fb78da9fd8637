#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "draftwatch/analysis/pos_tagger.hpp"
#include "draftwatch/text/sentences.hpp"

namespace draftwatch::analysis {

inline constexpr double kFormalityThreshold = 0.44;

// freq(category) = category count / token count.
// F = (noun + adjective + preposition + article
//      - pronoun - verb - adverb - interjection + 1) / 2,
// pronoun = personal + impersonal, verb = lexical + auxiliary.
// Throws EmptyText for no tokens.
double FFactor(std::span<const TaggedToken> tokens);

// Formal iff F > 0.44.
inline bool IsFormal(double f_factor) { return f_factor > kFormalityThreshold; }

// CDI = 0.3 + article + preposition - personal pronoun - impersonal pronoun
//       - auxiliary - conjunction - adverb - negation (frequencies as above,
//       unclamped). Throws EmptyText for no tokens.
double Cdi(std::span<const TaggedToken> tokens);

// Sentences ending in '?' / sentences. Throws EmptyText for no sentences.
double QuestionRate(std::string_view text, const text::SentenceSplitter& splitter);

// Whitespace-separated token count.
std::size_t WordCount(std::string_view text);

struct LinguisticProfile {
  double f_factor = 0.0;
  bool is_formal = false;
  double cdi = 0.0;
  double question_rate = 0.0;
  std::size_t word_count = 0;
};

// Throws EmptyText when the text has no words.
LinguisticProfile Profile(std::string_view text, const PosTagger& tagger, const text::SentenceSplitter& splitter);

}  // namespace draftwatch::analysis
