#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace sqb::embed {

/// Dense embedding of one question; dimension is the vector length.
using Vector = std::vector<double>;

/// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatch or
/// ZeroVector.
double cosine(std::span<const double> a, std::span<const double> b);

/// |A n B| / |A u B| over the unique tokens of each text.
double jaccard(std::string_view text_a, std::string_view text_b);

}  // namespace sqb::embed
