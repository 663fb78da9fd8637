#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

#include "draftwatch/text/lexicon.hpp"
#include "draftwatch/text/sentences.hpp"

namespace draftwatch::forecast {

enum class Feature : std::size_t {
  kSecondPersonRate,
  kAbsolutesRate,
  kHostileLexiconRate,
  kProfanityRate,
  kExclamationDensity,
  kAllCapsTokenRate,
  kQuestionDensity,
  kHedgeRate,
  kNegationRate,
  kMeanSentenceLength,
};

inline constexpr std::size_t kNumFeatures = 10;

inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "second_person_rate", "absolutes_rate",   "hostile_lexicon_rate", "profanity_rate",
    "exclamation_density", "all_caps_token_rate", "question_density", "hedge_rate",
    "negation_rate",      "mean_sentence_length",
};

std::optional<Feature> FeatureFromName(std::string_view name);

// Per-text features, every entry in [0,1].
//   *_rate               lexicon hits (or all-caps words) / tokens, where
//                        tokens include punctuation marks
//   exclamation_density  sentences containing '!' / sentences
//   question_density     sentences ending in '?' / sentences
//   mean_sentence_length min(1, words per sentence / 50)
struct FeatureVector {
  std::array<double, kNumFeatures> values{};

  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
  bool operator==(const FeatureVector&) const = default;
};

inline constexpr double kSentenceLengthScale = 50.0;

struct FeatureLexicons {
  text::Lexicon second_person;
  text::Lexicon absolutes;
  text::Lexicon hostile;
  text::Lexicon profanity;
  text::Lexicon hedges;
  text::Lexicon negations;

  static FeatureLexicons Embedded();
  // Reads <dir>/second_person.txt, absolutes.txt, hostile.txt, profanity.txt,
  // hedges.txt and negations.txt.
  static FeatureLexicons Load(const std::filesystem::path& dir);
};

class FeatureExtractor {
 public:
  FeatureExtractor();
  FeatureExtractor(FeatureLexicons lexicons, text::SentenceSplitter splitter);

  FeatureVector Extract(std::string_view text) const;

  const FeatureLexicons& lexicons() const { return lexicons_; }

 private:
  FeatureLexicons lexicons_;
  text::SentenceSplitter splitter_;
  // word -> bit set of lexicon memberships
  std::unordered_map<std::string, std::uint8_t> membership_;
};

}  // namespace draftwatch::forecast
