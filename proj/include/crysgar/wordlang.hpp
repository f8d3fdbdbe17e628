#pragma once

#include <string>

#include "crysgar/garside.hpp"

namespace crysgar {

/// Parse a whitespace-separated word in the generator tokens of the
/// active interval into a group element (the product of the tokens, left
/// to right):
///
///   r[i,k]   vertical reflection atom: pair index i, integer offset k
///   hr[j]    horizontal reflection atom
///   ft[j]    factored translation atom (absent when the interval has none)
///   D        the Garside element
///   D^-1     its inverse
///   ib'      the conjugated blue axis simple
///   ig'      the conjugated green axis simple
///   w0       the distinguished elliptic simple of full reflection length
///   r0       the distinguished vertical atom of the loxodromic element
///   x        the loxodromic element itself
///
/// The empty word parses to the identity.  Unknown tokens, malformed
/// indices and out-of-range indices raise ParseError.
GroupElement parse_word(const GarsideEngine& eng, const std::string& text);

/// Human-readable description of the tokens accepted by parse_word for
/// this interval, with the concrete index ranges.
std::string word_grammar_help(const GarsideEngine& eng);

}  // namespace crysgar
