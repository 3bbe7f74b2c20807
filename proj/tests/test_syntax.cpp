#include <random>

#include "doctest.h"
#include "gen.hpp"
#include "topoconn/error.hpp"
#include "topoconn/syntax.hpp"

using namespace topoconn;

static std::string error_code(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

TEST_SUITE("syntax") {
  TEST_CASE("parse desugars inequality and non-tangential inclusion") {
    auto f = parse("c(r1) & r1 != 0");
    auto want = land(conn(var("r1")), lnot(eq(var("r1"), zero())));
    CHECK(equal(*f, *want));

    auto g = parse("a << b");
    CHECK(equal(*g, *lnot(contact(var("a"), complement(var("b"))))));

    auto h = parse("a <= b");
    CHECK(equal(*h, *eq(product(var("a"), complement(var("b"))), zero())));
  }

  TEST_CASE("disjunction goes through De Morgan") {
    auto f = parse("a = 0 | b = 0");
    CHECK(equal(*f, *lnot(land(lnot(eq(var("a"), zero())), lnot(eq(var("b"), zero()))))));
  }

  TEST_CASE("syntax errors carry a location") {
    try {
      parse("C(x, -(y*z)) )");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == "SyntaxError");
      CHECK(e.location() == "1:14");
    }
    CHECK(error_code("") == "EmptyInput");
    CHECK(error_code("  # only a comment\n") == "EmptyInput");
    CHECK(error_code("a = ") == "SyntaxError");
    CHECK(error_code("a + b") == "SyntaxError");
    CHECK(error_code("2 = a") == "SyntaxError");
    CHECK(error_code("k(a)") == "SyntaxError");
  }

  TEST_CASE("comments and multi-line input") {
    auto f = parse("# header\nc(a) &  # trailing\n  a != 0\n");
    CHECK(print(*f) == "c(a) & !(a = 0)");
  }

  TEST_CASE("parenthesised terms and formulas") {
    CHECK(print(parse("(a + b) = c")) == "a + b = c");
    CHECK(print(parse("((a = b))")) == "a = b");
    CHECK(print(parse("!(a * (b + c) = 0 & C(a, b))")) == "!(a * (b + c) = 0 & C(a, b))");
    CHECK(print(parse("a*b*c = a*(b*c)")) == "a * b * c = a * (b * c)");
    CHECK(print(parse("--a = -(a + b)")) == "--a = -(a + b)");
  }

  TEST_CASE("printer examples") {
    CHECK(print(land(conn(var("r")), lnot(eq(var("r"), zero())))) == "c(r) & !(r = 0)");
    CHECK(print(lnot(contact(var("a"), complement(var("b"))))) == "!C(a, -b)");
    CHECK(print(land(eq(var("a"), one()), land(iconn(var("b")), conn(var("c"))))) ==
          "a = 1 & (co(b) & c(c))");
  }

  TEST_CASE("predicate names double as variables") {
    auto f = parse("c(c) & C(C, co) & co + c = 0");
    CHECK(print(*f) == "c(c) & C(C, co) & co + c = 0");
  }

  TEST_CASE("round trip on random formulas") {
    std::mt19937_64 rng(20261015);
    std::vector<std::string> names = {"a", "b", "r1", "x_2", "y'", "c", "C", "co"};
    for (int i = 0; i < 1000; ++i) {
      auto f = testgen::random_formula(rng, names, 4, 3);
      auto text = print(*f);
      auto g = parse(text);
      INFO(text);
      REQUIRE(equal(*f, *g));
      CHECK(print(*g) == text);
    }
  }

  TEST_CASE("classify returns the least language") {
    CHECK(classify(*parse("r = 0")) == LanguageTag::B);
    CHECK(classify(*parse("C(a, b)")) == LanguageTag::BC);
    CHECK(classify(*parse("c(a)")) == LanguageTag::Bc);
    CHECK(classify(*parse("co(a) & a != 0")) == LanguageTag::Bci);
    CHECK(classify(*parse("c(a) & !C(a, b)")) == LanguageTag::BCc);
    CHECK(classify(*parse("co(a) & a << b")) == LanguageTag::BCci);
    CHECK_THROWS_AS(classify(*parse("c(r) & co(r)")), Error);
  }

  TEST_CASE("classify is monotone under conjunction") {
    std::mt19937_64 rng(7);
    std::vector<std::string> names = {"a", "b"};
    for (int i = 0; i < 300; ++i) {
      bool ci = rng() & 1;
      auto f = testgen::random_formula(rng, names, 3, 2, !ci, ci);
      auto g = testgen::random_formula(rng, names, 3, 2, !ci, ci);
      CHECK(tag_leq(classify(*f), classify(*land(f, g))));
    }
  }

  TEST_CASE("polarity") {
    auto occ = polarity(*parse("!C(a,b)"), Pred::Contact);
    REQUIRE(occ.size() == 1);
    CHECK(occ[0].sign == -1);
    CHECK(occ[0].path == std::vector<int>{0});

    auto f = parse("c(a) & !(c(b) & !c(a + b))");
    auto occ2 = polarity(*f, Pred::Conn);
    REQUIRE(occ2.size() == 3);
    CHECK(occ2[0].sign == 1);
    CHECK(occ2[1].sign == -1);
    CHECK(occ2[2].sign == 1);
    CHECK(path_string(occ2[2].path) == "/1/0/1/0");
    CHECK(polarity(*f, Pred::IntConn).empty());
  }

  TEST_CASE("polarity flips under one extra negation") {
    std::mt19937_64 rng(11);
    std::vector<std::string> names = {"a", "b", "c"};
    for (int i = 0; i < 200; ++i) {
      auto f = testgen::random_formula(rng, names, 4, 2);
      for (Pred p : {Pred::Contact, Pred::Conn, Pred::IntConn}) {
        auto before = polarity(*f, p);
        auto after = polarity(*lnot(f), p);
        REQUIRE(before.size() == after.size());
        for (size_t k = 0; k < before.size(); ++k) CHECK(before[k].sign == -after[k].sign);
      }
    }
  }

  TEST_CASE("helpers") {
    auto f = parse("a = 0 & C(a, b) & c(b + a)");
    CHECK(conjuncts(f).size() == 3);
    CHECK(atom_count(*f) == 3);
    CHECK(variables(*f) == std::set<std::string>{"a", "b"});
    CHECK(print(conj({})) == "1 = 1");
  }
}
