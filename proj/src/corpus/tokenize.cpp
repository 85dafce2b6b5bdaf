#include "sqb/corpus/tokenize.hpp"

#include "sqb/common/error.hpp"

namespace sqb::corpus {
namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
         (c >= 123 && c <= 126);
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_space(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else if (is_ascii_punct(c)) {
      continue;
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      current.push_back(static_cast<char>(c));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  if (tokens.empty()) fail(ErrorCode::EmptyText, "no tokens in '" + std::string(text) + "'");
  return tokens;
}

LengthBin length_bin(std::size_t n) {
  if (n == 0) fail(ErrorCode::EmptyText, "question has no tokens");
  if (n <= 10) return LengthBin::B0_10;
  if (n <= 12) return LengthBin::B10_12;
  if (n <= 15) return LengthBin::B12_15;
  if (n <= 25) return LengthBin::B15_25;
  fail(ErrorCode::Overflow, std::to_string(n) + " tokens exceeds the longest bin (25)");
}

}  // namespace sqb::corpus
