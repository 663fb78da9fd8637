#include <gtest/gtest.h>

#include "draftwatch/error.hpp"
#include "draftwatch/text/lexicon.hpp"
#include "draftwatch/text/sentences.hpp"
#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::text {
namespace {

std::vector<std::string> Texts(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& t : Tokenize(s)) out.push_back(t.text);
  return out;
}

TEST(Tokenize, LowercasesAndSplitsOnNonAlphanumerics) {
  EXPECT_EQ(Texts("Hello-World foo_bar"), (std::vector<std::string>{"hello", "world", "foo", "bar"}));
}

TEST(Tokenize, PunctuationRunsAreSingleTokens) {
  EXPECT_EQ(Texts("You always lie."), (std::vector<std::string>{"you", "always", "lie", "."}));
  EXPECT_EQ(Texts("What?!? No, wait; ok: fine..."),
            (std::vector<std::string>{"what", "?!?", "no", ",", "wait", ";", "ok", ":", "fine", "..."}));
}

TEST(Tokenize, KeepsContractionsAndFoldsCurlyApostrophe) {
  EXPECT_EQ(Texts("Don't you're"), (std::vector<std::string>{"don't", "you're"}));
  EXPECT_EQ(Texts("don\xE2\x80\x99t"), (std::vector<std::string>{"don't"}));
  // A quote mark that is not between letters separates.
  EXPECT_EQ(Texts("'quoted'"), (std::vector<std::string>{"quoted"}));
}

TEST(Tokenize, NonAsciiWordsStayWhole) {
  EXPECT_EQ(Texts("caf\xC3\xA9 ok"), (std::vector<std::string>{"caf\xC3\xA9", "ok"}));
}

TEST(Tokenize, MarksWordTokensAndKeepsOriginal) {
  const auto toks = Tokenize("STOP now!");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_TRUE(toks[0].is_word);
  EXPECT_EQ(toks[0].original, "STOP");
  EXPECT_FALSE(toks[2].is_word);
}

TEST(Tokenize, EmptyAndBlank) {
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("   \n\t").empty());
  EXPECT_TRUE(IsBlank(" \t\n"));
  EXPECT_FALSE(IsBlank(" a "));
  EXPECT_EQ(Trim("  x y  "), "x y");
}

TEST(Words, DropsPunctuation) {
  EXPECT_EQ(Words("Hi, there!"), (std::vector<std::string>{"hi", "there"}));
}

TEST(SentenceSplitter, SplitsOnTerminalRuns) {
  const SentenceSplitter s;
  const auto out = s.Split("Why? Because. Really!!");
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].text, "Why?");
  EXPECT_TRUE(out[0].is_question());
  EXPECT_EQ(out[1].terminator, ".");
  EXPECT_TRUE(out[2].has_exclamation());
}

TEST(SentenceSplitter, RespectsAbbreviations) {
  const SentenceSplitter s;
  const auto out = s.Split("Ask Dr. Smith, e.g. today. Then stop.");
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].text, "Ask Dr. Smith, e.g. today.");
}

TEST(SentenceSplitter, EllipsisFoldsIntoOneRun) {
  const SentenceSplitter s;
  const auto out = s.Split("Well... maybe. Or\xE2\x80\xA6 not");
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].terminator, "...");
  EXPECT_EQ(out[2].terminator, "...");  // normalized
  EXPECT_EQ(out[3].terminator, "");
}

TEST(SentenceSplitter, NoSplitInsideNumbersOrWithoutSpace) {
  const SentenceSplitter s;
  EXPECT_EQ(s.Split("Pi is 3.14 exactly.").size(), 1u);
  EXPECT_EQ(s.Split("see example.com now").size(), 1u);
}

TEST(SentenceSplitter, DropsPunctuationOnlyFragments) {
  const SentenceSplitter s;
  EXPECT_TRUE(s.Split("?!").empty());
  EXPECT_TRUE(s.Split("").empty());
  EXPECT_EQ(s.Split("Yes. ... No.").size(), 2u);
}

TEST(Lexicon, ParseIgnoresCommentsAndBlankLines) {
  const auto lex = Lexicon::Parse("# header\nfoo\n\n  Bar  \n# more\nbaz # trailing\n");
  EXPECT_TRUE(lex.Contains("foo"));
  EXPECT_TRUE(lex.Contains("bar"));
  EXPECT_TRUE(lex.Contains("baz"));
  EXPECT_EQ(lex.size(), 3u);
  EXPECT_EQ(lex.Terms(), (std::vector<std::string>{"bar", "baz", "foo"}));
}

TEST(Lexicon, EmbeddedListsLoad) {
  EXPECT_TRUE(Lexicon::Embedded("lexicons/hostile.txt").Contains("idiot"));
  EXPECT_TRUE(Lexicon::Embedded("pos/articles.txt").Contains("the"));
  EXPECT_THROW(Lexicon::Embedded("lexicons/missing.txt"), Error);
}

TEST(Lexicon, LoadMissingFileIsIoError) {
  try {
    Lexicon::Load("/nonexistent/words.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIo);
  }
}

}  // namespace
}  // namespace draftwatch::text
