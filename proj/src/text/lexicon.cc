#include "draftwatch/text/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "draftwatch/embedded_data.hpp"
#include "draftwatch/error.hpp"
#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::text {

std::vector<std::string> DataLines(std::string_view contents) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (!line.empty()) lines.emplace_back(line);
    pos = end + 1;
  }
  return lines;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Lexicon Lexicon::Parse(std::string_view contents) {
  Lexicon lex;
  for (auto& line : DataLines(contents)) lex.terms_.insert(ToLowerAscii(line));
  return lex;
}

Lexicon Lexicon::Load(const std::filesystem::path& path) { return Parse(ReadFile(path)); }

Lexicon Lexicon::Embedded(std::string_view relative_path) {
  return Parse(EmbeddedFile(relative_path));
}

}  // namespace draftwatch::text
