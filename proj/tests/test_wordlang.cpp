#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "crysgar/wordlang.hpp"

using namespace crysgar;

namespace {

struct Fixture {
  IntervalCtx ctx;
  GarsideEngine eng;
  explicit Fixture(const char* type) : ctx(DynkinType::parse(type)), eng(ctx) {}
};

}  // namespace

TEST_CASE("named tokens map to the engine's elements") {
  Fixture f("C~2");
  CHECK(f.eng.equals(parse_word(f.eng, "x"), f.eng.x()));
  CHECK(f.eng.equals(parse_word(f.eng, "r0"), f.eng.from_atom(f.eng.r0())));
  CHECK(f.eng.equals(parse_word(f.eng, "w0"),
                     f.eng.from_simple(f.eng.w0_simple())));
  CHECK(f.eng.equals(parse_word(f.eng, "ib'"),
                     f.eng.from_simple(f.eng.iota_b_prime())));
  CHECK(f.eng.equals(parse_word(f.eng, "ig'"),
                     f.eng.from_simple(f.eng.iota_g_prime())));
  CHECK(f.eng.equals(parse_word(f.eng, "D"), f.eng.delta_power(1)));
  CHECK(f.eng.equals(parse_word(f.eng, "D^-1"), f.eng.delta_power(-1)));
}

TEST_CASE("the conjugated halves multiply to delta") {
  Fixture f("C~2");
  GroupElement g = parse_word(f.eng, "ib' ig'");
  CHECK(f.eng.inf(g) == 1);
  CHECK(f.eng.canonical_length(g) == 0);
  CHECK(f.eng.equals(g, f.eng.delta_power(1)));
}

TEST_CASE("indexed atom tokens") {
  Fixture f("B~3");
  CHECK(f.eng.equals(parse_word(f.eng, "r[0,2]"),
                     f.eng.from_atom(f.ctx.vertical_atom(0, Int(2)))));
  CHECK(f.eng.equals(parse_word(f.eng, "r[1,-3]"),
                     f.eng.from_atom(f.ctx.vertical_atom(1, Int(-3)))));
  CHECK(f.eng.equals(parse_word(f.eng, "hr[0]"),
                     f.eng.from_atom(f.ctx.horizontal_atoms()[0])));
  CHECK(f.eng.equals(parse_word(f.eng, "ft[0]"),
                     f.eng.from_atom(f.ctx.factored_atoms()[0])));
}

TEST_CASE("words compose left to right") {
  Fixture f("C~2");
  GroupElement expected = f.eng.multiply(f.eng.from_atom(f.eng.r0()),
                                         f.eng.from_simple(f.eng.iota_b_prime()));
  CHECK(f.eng.equals(parse_word(f.eng, "r0 ib'"), expected));
  CHECK(f.eng.equals(parse_word(f.eng, "D D^-1"), f.eng.one()));
  CHECK(f.eng.equals(parse_word(f.eng, "x x"), f.eng.power(f.eng.x(), 2)));
  // Whitespace is flexible; the empty word is the identity.
  CHECK(f.eng.equals(parse_word(f.eng, "   "), f.eng.one()));
  CHECK(f.eng.equals(parse_word(f.eng, ""), f.eng.one()));
  CHECK(f.eng.equals(parse_word(f.eng, "  r0\t r0 "),
                     f.eng.multiply(f.eng.from_atom(f.eng.r0()),
                                    f.eng.from_atom(f.eng.r0()))));
}

TEST_CASE("malformed and out-of-range tokens raise parse errors") {
  Fixture f("C~2");
  CHECK_THROWS_AS(parse_word(f.eng, "blah"), ParseError);
  CHECK_THROWS_AS(parse_word(f.eng, "r[99,0]"), ParseError);
  CHECK_THROWS_AS(parse_word(f.eng, "r[0]"), ParseError);
  CHECK_THROWS_AS(parse_word(f.eng, "r[0,,1]"), ParseError);
  CHECK_THROWS_AS(parse_word(f.eng, "hr[999]"), ParseError);
  CHECK_THROWS_AS(parse_word(f.eng, "D^2"), ParseError);
  CHECK_THROWS_AS(parse_word(f.eng, "x r[0,0] zzz"), ParseError);
  // No factored translations exist when the horizontal system is
  // connected, so the token is out of range here.
  CHECK_THROWS_AS(parse_word(f.eng, "ft[0]"), ParseError);
}

TEST_CASE("grammar help lists the live token ranges") {
  Fixture f("B~3");
  std::string help = word_grammar_help(f.eng);
  CHECK(help.find("r[") != std::string::npos);
  CHECK(help.find("hr[") != std::string::npos);
  CHECK(help.find("ft[") != std::string::npos);
  CHECK(help.find("w0") != std::string::npos);
  CHECK(help.find("x") != std::string::npos);

  Fixture g("C~2");
  std::string help2 = word_grammar_help(g.eng);
  CHECK(help2.find("r[") != std::string::npos);
}
