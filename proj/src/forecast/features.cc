#include "draftwatch/forecast/features.hpp"

#include <algorithm>

#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::forecast {
namespace {

bool IsAllCaps(std::string_view word) {
  int letters = 0;
  for (char c : word) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') ++letters;
  }
  return letters >= 2;
}

}  // namespace

std::optional<Feature> FeatureFromName(std::string_view name) {
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    if (kFeatureNames[i] == name) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

FeatureLexicons FeatureLexicons::Embedded() {
  using text::Lexicon;
  return {Lexicon::Embedded("lexicons/second_person.txt"), Lexicon::Embedded("lexicons/absolutes.txt"),
          Lexicon::Embedded("lexicons/hostile.txt"),       Lexicon::Embedded("lexicons/profanity.txt"),
          Lexicon::Embedded("lexicons/hedges.txt"),        Lexicon::Embedded("lexicons/negations.txt")};
}

FeatureLexicons FeatureLexicons::Load(const std::filesystem::path& dir) {
  using text::Lexicon;
  return {Lexicon::Load(dir / "second_person.txt"), Lexicon::Load(dir / "absolutes.txt"),
          Lexicon::Load(dir / "hostile.txt"),       Lexicon::Load(dir / "profanity.txt"),
          Lexicon::Load(dir / "hedges.txt"),        Lexicon::Load(dir / "negations.txt")};
}

enum LexiconBit : std::uint8_t {
  kSecondPerson = 1 << 0,
  kAbsolute = 1 << 1,
  kHostile = 1 << 2,
  kProfane = 1 << 3,
  kHedge = 1 << 4,
  kNegation = 1 << 5,
};

FeatureExtractor::FeatureExtractor() : FeatureExtractor(FeatureLexicons::Embedded(), text::SentenceSplitter()) {}

FeatureExtractor::FeatureExtractor(FeatureLexicons lexicons, text::SentenceSplitter splitter)
    : lexicons_(std::move(lexicons)), splitter_(std::move(splitter)) {
  auto mark = [this](const text::Lexicon& lex, std::uint8_t bit) {
    for (const auto& term : lex.Terms()) membership_[term] |= bit;
  };
  mark(lexicons_.second_person, kSecondPerson);
  mark(lexicons_.absolutes, kAbsolute);
  mark(lexicons_.hostile, kHostile);
  mark(lexicons_.profanity, kProfane);
  mark(lexicons_.hedges, kHedge);
  mark(lexicons_.negations, kNegation);
}

FeatureVector FeatureExtractor::Extract(std::string_view input) const {
  FeatureVector fv;
  const auto tokens = text::Tokenize(input);
  if (tokens.empty()) return fv;

  std::size_t words = 0;
  std::size_t second_person = 0, absolutes = 0, hostile = 0, profanity = 0, hedges = 0, negations = 0,
              caps = 0;
  for (const auto& tok : tokens) {
    if (!tok.is_word) continue;
    ++words;
    caps += IsAllCaps(tok.original);
    auto it = membership_.find(tok.text);
    if (it == membership_.end()) continue;
    const std::uint8_t bits = it->second;
    second_person += (bits & kSecondPerson) != 0;
    absolutes += (bits & kAbsolute) != 0;
    hostile += (bits & kHostile) != 0;
    profanity += (bits & kProfane) != 0;
    hedges += (bits & kHedge) != 0;
    negations += (bits & kNegation) != 0;
  }
  const double n = static_cast<double>(tokens.size());
  fv[Feature::kSecondPersonRate] = second_person / n;
  fv[Feature::kAbsolutesRate] = absolutes / n;
  fv[Feature::kHostileLexiconRate] = hostile / n;
  fv[Feature::kProfanityRate] = profanity / n;
  fv[Feature::kHedgeRate] = hedges / n;
  fv[Feature::kNegationRate] = negations / n;
  fv[Feature::kAllCapsTokenRate] = caps / n;

  const auto sentences = splitter_.Split(input);
  if (!sentences.empty()) {
    const double s = static_cast<double>(sentences.size());
    const auto exclaims = std::count_if(sentences.begin(), sentences.end(),
                                        [](const auto& x) { return x.has_exclamation(); });
    const auto questions = std::count_if(sentences.begin(), sentences.end(),
                                         [](const auto& x) { return x.is_question(); });
    fv[Feature::kExclamationDensity] = exclaims / s;
    fv[Feature::kQuestionDensity] = questions / s;
    fv[Feature::kMeanSentenceLength] = std::min(1.0, (words / s) / kSentenceLengthScale);
  }
  return fv;
}

}  // namespace draftwatch::forecast
