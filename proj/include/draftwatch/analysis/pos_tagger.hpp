#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "draftwatch/text/lexicon.hpp"

namespace draftwatch::analysis {

enum class Tag {
  kNoun,
  kAdjective,
  kPreposition,
  kArticle,
  kPronounPersonal,
  kPronounImpersonal,
  kVerb,
  kVerbAuxiliary,
  kAdverb,
  kInterjection,
  kConjunction,
  kNegation,
  kOther,
};

inline constexpr std::size_t kNumTags = 13;

std::string_view TagName(Tag t);
Tag ParseTag(std::string_view name);  // throws InvalidArgument

struct TaggedToken {
  std::string token;
  Tag tag = Tag::kOther;

  bool operator==(const TaggedToken&) const = default;
};

// Rule-based tagger. Closed classes come from shipped word lists, checked in
// this order: article, negation, personal pronoun, impersonal pronoun,
// auxiliary, preposition, conjunction, interjection, listed adverb. Open
// classes then follow, first match wins:
//   1. tokens containing a digit            -> other
//   2. listed -ly exceptions                 -> listed tag
//   3. -ly, length >= 5                      -> adverb
//   4. known verb form (base, -s, -ed, -ing, irregular)
//                                            -> noun after an article,
//                                               possessive or adjective,
//                                               else verb
//   5. listed adjective                      -> adjective
//   6. -ing / -ed, length >= 5               -> noun after an article or
//                                               possessive, else verb
//   7. -ous -ful -ive -able -ible -less -ish -ical -ic -al, length >= 5
//                                            -> adjective
//   8. otherwise                             -> noun
// Punctuation is not tagged.
class PosTagger {
 public:
  PosTagger();  // embedded word lists

  std::vector<TaggedToken> Tag(std::string_view text) const;
  analysis::Tag TagWord(std::string_view word, const TaggedToken* previous) const;

 private:
  struct ClosedClass {
    analysis::Tag tag;
    text::Lexicon words;
  };
  std::vector<ClosedClass> closed_;
  std::map<std::string, analysis::Tag, std::less<>> ly_exceptions_;
  text::Lexicon verb_forms_;
  text::Lexicon adjectives_;
  text::Lexicon possessives_;
};

// Regular inflections of a base-form verb: base, 3rd person, past, gerund.
std::vector<std::string> VerbInflections(std::string_view base);

}  // namespace draftwatch::analysis
