#include "draftwatch/analysis/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "draftwatch/error.hpp"

namespace draftwatch::analysis {
namespace {

std::array<double, kNumTags> Frequencies(std::span<const TaggedToken> tokens) {
  if (tokens.empty()) throw Error(Errc::kEmptyText, "no tokens");
  std::array<double, kNumTags> freq{};
  for (const auto& t : tokens) freq[static_cast<std::size_t>(t.tag)] += 1.0;
  for (auto& f : freq) f /= static_cast<double>(tokens.size());
  return freq;
}

double F(const std::array<double, kNumTags>& freq, Tag t) { return freq[static_cast<std::size_t>(t)]; }

}  // namespace

double FFactor(std::span<const TaggedToken> tokens) {
  const auto freq = Frequencies(tokens);
  const double formal = F(freq, Tag::kNoun) + F(freq, Tag::kAdjective) + F(freq, Tag::kPreposition) +
                        F(freq, Tag::kArticle);
  const double deictic = F(freq, Tag::kPronounPersonal) + F(freq, Tag::kPronounImpersonal) + F(freq, Tag::kVerb) +
                         F(freq, Tag::kVerbAuxiliary) + F(freq, Tag::kAdverb) + F(freq, Tag::kInterjection);
  return (formal - deictic + 1.0) / 2.0;
}

double Cdi(std::span<const TaggedToken> tokens) {
  const auto freq = Frequencies(tokens);
  return 0.3 + F(freq, Tag::kArticle) + F(freq, Tag::kPreposition) - F(freq, Tag::kPronounPersonal) -
         F(freq, Tag::kPronounImpersonal) - F(freq, Tag::kVerbAuxiliary) - F(freq, Tag::kConjunction) -
         F(freq, Tag::kAdverb) - F(freq, Tag::kNegation);
}

double QuestionRate(std::string_view text, const text::SentenceSplitter& splitter) {
  const auto sentences = splitter.Split(text);
  if (sentences.empty()) throw Error(Errc::kEmptyText, "no sentences");
  const auto questions =
      std::count_if(sentences.begin(), sentences.end(), [](const auto& s) { return s.is_question(); });
  return static_cast<double>(questions) / static_cast<double>(sentences.size());
}

std::size_t WordCount(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

LinguisticProfile Profile(std::string_view text, const PosTagger& tagger, const text::SentenceSplitter& splitter) {
  const auto tokens = tagger.Tag(text);
  LinguisticProfile p;
  p.f_factor = FFactor(tokens);
  p.is_formal = IsFormal(p.f_factor);
  p.cdi = Cdi(tokens);
  p.question_rate = QuestionRate(text, splitter);
  p.word_count = WordCount(text);
  return p;
}

}  // namespace draftwatch::analysis
