#include "crysgar/wordlang.hpp"

#include <regex>
#include <sstream>

namespace crysgar {

namespace {

Int parse_int_token(const std::string& digits, const std::string& token) {
  try {
    return Int(digits);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed integer in token '" + token + "'");
  }
}

GroupElement element_of_token(const GarsideEngine& eng,
                              const std::string& tok) {
  const IntervalCtx& ctx = eng.ctx();
  if (tok == "D") return eng.delta_power(1);
  if (tok == "D^-1") return eng.delta_power(-1);
  if (tok == "ib'") return eng.from_simple(eng.iota_b_prime());
  if (tok == "ig'") return eng.from_simple(eng.iota_g_prime());
  if (tok == "w0") return eng.from_simple(eng.w0_simple());
  if (tok == "r0") return eng.from_atom(eng.r0());
  if (tok == "x") return eng.x();

  static const std::regex vertical_re(R"(^r\[(\d+),(-?\d+)\]$)");
  static const std::regex horizontal_re(R"(^hr\[(\d+)\]$)");
  static const std::regex factored_re(R"(^ft\[(\d+)\]$)");
  std::smatch m;
  if (std::regex_match(tok, m, vertical_re)) {
    Int pair = parse_int_token(m[1].str(), tok);
    Int k = parse_int_token(m[2].str(), tok);
    std::size_t count = ctx.vertical_pairs().size();
    if (pair >= Int(static_cast<unsigned long>(count)))
      throw ParseError("vertical pair index out of range in '" + tok +
                       "' (have " + std::to_string(count) + " pairs)");
    return eng.from_atom(ctx.vertical_atom(
        static_cast<std::size_t>(pair.get_ui()), k));
  }
  if (std::regex_match(tok, m, horizontal_re)) {
    Int idx = parse_int_token(m[1].str(), tok);
    std::size_t count = ctx.horizontal_atoms().size();
    if (idx >= Int(static_cast<unsigned long>(count)))
      throw ParseError("horizontal reflection index out of range in '" + tok +
                       "' (have " + std::to_string(count) + ")");
    return eng.from_atom(
        ctx.horizontal_atoms()[static_cast<std::size_t>(idx.get_ui())]);
  }
  if (std::regex_match(tok, m, factored_re)) {
    std::size_t count = ctx.factored_atoms().size();
    if (count == 0)
      throw ParseError(
          "this interval has no factored translation atoms; token '" + tok +
          "' is not available");
    Int idx = parse_int_token(m[1].str(), tok);
    if (idx >= Int(static_cast<unsigned long>(count)))
      throw ParseError("factored translation index out of range in '" + tok +
                       "' (have " + std::to_string(count) + ")");
    return eng.from_atom(
        ctx.factored_atoms()[static_cast<std::size_t>(idx.get_ui())]);
  }
  throw ParseError("unknown token '" + tok + "'");
}

}  // namespace

GroupElement parse_word(const GarsideEngine& eng, const std::string& text) {
  GroupElement acc = eng.one();
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) acc = eng.multiply(acc, element_of_token(eng, tok));
  return acc;
}

std::string word_grammar_help(const GarsideEngine& eng) {
  const IntervalCtx& ctx = eng.ctx();
  std::ostringstream os;
  os << "tokens (whitespace separated):\n";
  os << "  r[i,k]  vertical reflection atom, i in 0.."
     << ctx.vertical_pairs().size() - 1 << ", k any integer\n";
  if (!ctx.horizontal_atoms().empty())
    os << "  hr[j]   horizontal reflection atom, j in 0.."
       << ctx.horizontal_atoms().size() - 1 << "\n";
  if (!ctx.factored_atoms().empty())
    os << "  ft[j]   factored translation atom, j in 0.."
       << ctx.factored_atoms().size() - 1 << "\n";
  os << "  D       the Garside element        D^-1  its inverse\n";
  os << "  ib'     conjugated blue axis simple\n";
  os << "  ig'     conjugated green axis simple\n";
  os << "  w0      distinguished elliptic simple\n";
  os << "  r0      distinguished vertical atom\n";
  os << "  x       the loxodromic element\n";
  return os.str();
}

}  // namespace crysgar
