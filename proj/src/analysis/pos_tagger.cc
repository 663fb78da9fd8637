#include "draftwatch/analysis/pos_tagger.hpp"

#include <array>
#include <sstream>

#include "draftwatch/embedded_data.hpp"
#include "draftwatch/error.hpp"
#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::analysis {
namespace {

constexpr std::array<std::string_view, kNumTags> kTagNames = {
    "noun", "adjective", "preposition", "article", "pronoun_personal", "pronoun_impersonal", "verb",
    "verb_auxiliary", "adverb", "interjection", "conjunction", "negation", "other"};

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool IsVowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool HasDigit(std::string_view s) {
  for (char c : s) {
    if (c >= '0' && c <= '9') return true;
  }
  return false;
}

}  // namespace

std::string_view TagName(Tag t) { return kTagNames[static_cast<std::size_t>(t)]; }

Tag ParseTag(std::string_view name) {
  for (std::size_t i = 0; i < kNumTags; ++i) {
    if (kTagNames[i] == name) return static_cast<Tag>(i);
  }
  throw Error(Errc::kInvalidArgument, "unknown tag '" + std::string(name) + "'");
}

std::vector<std::string> VerbInflections(std::string_view base) {
  std::string b(base);
  std::vector<std::string> out = {b};
  const bool consonant_y = b.size() >= 2 && b.back() == 'y' && !IsVowel(b[b.size() - 2]);
  if (consonant_y) {
    std::string stem = b.substr(0, b.size() - 1);
    out.push_back(stem + "ies");
    out.push_back(stem + "ied");
  } else if (EndsWith(b, "s") || EndsWith(b, "x") || EndsWith(b, "z") || EndsWith(b, "ch") || EndsWith(b, "sh")) {
    out.push_back(b + "es");
    out.push_back(b + "ed");
  } else if (EndsWith(b, "e")) {
    out.push_back(b + "s");
    out.push_back(b + "d");
  } else {
    out.push_back(b + "s");
    out.push_back(b + "ed");
  }
  if (EndsWith(b, "e") && !EndsWith(b, "ee")) {
    out.push_back(b.substr(0, b.size() - 1) + "ing");
  } else {
    out.push_back(b + "ing");
  }
  return out;
}

PosTagger::PosTagger() {
  using text::Lexicon;
  closed_ = {
      {Tag::kArticle, Lexicon::Embedded("pos/articles.txt")},
      {Tag::kNegation, Lexicon::Embedded("lexicons/negations.txt")},
      {Tag::kPronounPersonal, Lexicon::Embedded("pos/pronouns_personal.txt")},
      {Tag::kPronounImpersonal, Lexicon::Embedded("pos/pronouns_impersonal.txt")},
      {Tag::kVerbAuxiliary, Lexicon::Embedded("pos/auxiliaries.txt")},
      {Tag::kPreposition, Lexicon::Embedded("pos/prepositions.txt")},
      {Tag::kConjunction, Lexicon::Embedded("pos/conjunctions.txt")},
      {Tag::kInterjection, Lexicon::Embedded("pos/interjections.txt")},
      {Tag::kAdverb, Lexicon::Embedded("pos/adverbs.txt")},
  };
  for (const auto& line : text::DataLines(EmbeddedFile("pos/ly_exceptions.txt"))) {
    std::istringstream fields(line);
    std::string word, tag;
    fields >> word >> tag;
    ly_exceptions_[word] = ParseTag(tag);
  }
  std::string forms;
  for (const auto& base : text::DataLines(EmbeddedFile("pos/verbs.txt"))) {
    for (const auto& form : VerbInflections(base)) forms += form + "\n";
  }
  forms += EmbeddedFile("pos/irregular_verbs.txt");
  verb_forms_ = Lexicon::Parse(forms);
  adjectives_ = Lexicon::Embedded("pos/adjectives.txt");
  possessives_ = Lexicon::Parse("my\nyour\nhis\nher\nits\nour\ntheir\n");
}

Tag PosTagger::TagWord(std::string_view w, const TaggedToken* previous) const {
  for (const auto& cls : closed_) {
    if (cls.words.Contains(w)) return cls.tag;
  }
  if (HasDigit(w)) return Tag::kOther;
  if (auto it = ly_exceptions_.find(w); it != ly_exceptions_.end()) return it->second;
  if (w.size() >= 5 && EndsWith(w, "ly")) return Tag::kAdverb;

  const bool after_determiner =
      previous != nullptr && (previous->tag == Tag::kArticle || possessives_.Contains(previous->token));
  if (verb_forms_.Contains(w)) {
    const bool nominal = after_determiner || (previous != nullptr && previous->tag == Tag::kAdjective);
    return nominal ? Tag::kNoun : Tag::kVerb;
  }
  if (adjectives_.Contains(w)) return Tag::kAdjective;
  if (w.size() >= 5 && (EndsWith(w, "ing") || EndsWith(w, "ed"))) {
    return after_determiner ? Tag::kNoun : Tag::kVerb;
  }
  if (w.size() >= 5) {
    for (std::string_view suffix : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ical", "ic", "al"}) {
      if (EndsWith(w, suffix)) return Tag::kAdjective;
    }
  }
  return Tag::kNoun;
}

std::vector<TaggedToken> PosTagger::Tag(std::string_view input) const {
  std::vector<TaggedToken> out;
  for (const auto& tok : text::Tokenize(input)) {
    if (!tok.is_word) continue;
    const TaggedToken* previous = out.empty() ? nullptr : &out.back();
    const analysis::Tag tag = TagWord(tok.text, previous);
    out.push_back({tok.text, tag});
  }
  return out;
}

}  // namespace draftwatch::analysis
