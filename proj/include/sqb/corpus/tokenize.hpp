#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sqb/corpus/types.hpp"

namespace sqb::corpus {

/// Lowercases ASCII letters, deletes ASCII punctuation and splits on
/// whitespace. Bytes outside ASCII pass through unchanged. Throws EmptyText
/// when nothing remains.
std::vector<std::string> tokenize(std::string_view text);

/// Bins are closed on the right: <=10, 11-12, 13-15, 16-25 tokens.
LengthBin length_bin(std::size_t n_tokens);

}  // namespace sqb::corpus
