#pragma once

#include <map>
#include <string>
#include <string_view>

namespace draftwatch {

// Contents of data/ compiled into the library, keyed by path relative to
// data/ (e.g. "lexicons/hostile.txt").
const std::map<std::string, std::string_view>& EmbeddedData();

// Throws Error(kIo) for an unknown key.
std::string_view EmbeddedFile(std::string_view relative_path);

}  // namespace draftwatch
