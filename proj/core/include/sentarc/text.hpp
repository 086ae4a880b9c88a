#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sentarc {

/// Lowercases UTF-8 text code point by code point. Invalid byte sequences
/// are replaced with U+FFFD.
std::string to_lower_utf8(std::string_view text);

/// Splits raw text into lowercase word tokens.
///
/// A token is a maximal run of letters and digits, optionally joined by
/// single apostrophes that sit between two word characters ("don't").
/// Everything else, hyphens included, separates tokens. The typographic
/// apostrophe U+2019 is normalised to ASCII '\''.
std::vector<std::string> tokenize(std::string_view text);

} // namespace sentarc
