#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace univoque {

// Symbols are 0-based: symbol j names the j-th map of the canonical (sorted)
// alphabet. For beta-expansions the symbol is the digit itself.
using Symbol = int;
using Word = std::vector<Symbol>;

// Words of a fixed length over an alphabet of size m are indexed by their
// base-m value, first symbol most significant. Numeric order of the codes is
// therefore lexicographic order of the words.
using WordCode = std::uint64_t;

// m^n, or 0 when the result does not fit in a WordCode.
WordCode checked_power(int m, int n);

WordCode encode(std::span<const Symbol> w, int m);
Word decode(WordCode code, int m, int length);

// Digit-string form: "0110" when every symbol is a single decimal digit and
// m <= 10, otherwise comma separated ("10,3,0").
std::string format_word(std::span<const Symbol> w, int m);
Word parse_word(std::string_view text);

// Strict lexicographic comparison of equal-length prefixes.
int lex_compare(std::span<const Symbol> a, std::span<const Symbol> b);

}  // namespace univoque
