#include <random>

#include "doctest.h"
#include "gen.hpp"
#include "topoconn/error.hpp"
#include "topoconn/solver.hpp"

using namespace topoconn;

namespace {

const char* kCoTriple = "co(r1) & co(r2) & co(r3) & co(r1 + r2 + r3) & !co(r1 + r2) & !co(r1 + r3)";
const char* kPhi3 =
    "co(r1) & r1 != 0 & co(r2) & r2 != 0 & co(r3) & r3 != 0 & co(r1 + r2) & r1 * r2 = 0 & "
    "co(r1 + r3) & r1 * r3 = 0 & co(r2 + r3) & r2 * r3 = 0";

QsInterpretation saw3_model() {
  auto s = std::make_shared<const QuasiSaw>(std::vector<std::string>{"x1", "x2", "x3"},
                                            std::vector<QuasiSaw::Depth1>{{"z", {"x1", "x2", "x3"}}});
  QsInterpretation m{s, {}};
  m.valuation["r1"] = qs_region(s, {"x1"}).core;
  m.valuation["r2"] = qs_region(s, {"x2"}).core;
  m.valuation["r3"] = qs_region(s, {"x3"}).core;
  return m;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("default bound") {
    CHECK(default_bound(*parse(kCoTriple)) == 21);
    CHECK(default_bound(*parse("r = 0")) == 2);
    CHECK(default_bound(*parse(kPhi3)) == 39);
  }

  TEST_CASE("wiggly formula needs a depth-1 point with three successors") {
    auto f = parse(kCoTriple);
    auto r2 = solve(f, SpaceClass::QS2, 4);
    CHECK_FALSE(r2.sat);
    CHECK(r2.bound == 4);
    auto r = solve(f, SpaceClass::ConnQS, 4);
    REQUIRE(r.sat);
    const QuasiSaw& s = *r.witness.space;
    CHECK(s.n0() == 3);
    REQUIRE(s.n1() == 1);
    CHECK(s.succ(0).count() == 3);
    CHECK(verify(*f, r.witness, SpaceClass::ConnQS));
  }

  TEST_CASE("verify checks class membership") {
    auto f = parse(kCoTriple);
    auto m = saw3_model();
    CHECK(verify(*f, m, SpaceClass::ConnQS));
    CHECK(verify(*f, m, SpaceClass::QS));
    CHECK_FALSE(verify(*f, m, SpaceClass::QS2));
    QsInterpretation empty{m.space, {}};
    CHECK_THROWS_AS(verify(*parse("r != 0"), empty, SpaceClass::QS), Error);
  }

  TEST_CASE("phi_3 over connected quasi-saws") {
    auto f = parse(kPhi3);
    auto r = solve(f, SpaceClass::ConnQS, default_bound(*f));
    REQUIRE(r.sat);
    CHECK(r.witness.space->n0() == 3);
    CHECK(verify(*f, r.witness, SpaceClass::ConnQS));
    CHECK(solve(f, SpaceClass::ConnQS2, 3).sat);
  }

  TEST_CASE("mixed connectedness is rejected") {
    CHECK_THROWS_AS(solve(parse("c(a) & co(a)"), SpaceClass::QS, 2), Error);
  }

  TEST_CASE("bound ceiling") {
    // unsatisfiable, so the search would have to go past the ceiling
    SolveOptions opt;
    opt.max_w0 = 2;
    try {
      solve(parse("a != 0 & a = 0"), SpaceClass::QS2, 5, opt);
      FAIL("expected BoundTooLarge");
    } catch (const Error& e) {
      CHECK(e.code() == "BoundTooLarge");
    }
    // satisfiable below the ceiling: a large bound is fine
    CHECK(solve(parse("a != 0"), SpaceClass::QS2, 1000, opt).sat);
    opt = {};
    opt.max_nodes = 10;
    CHECK_THROWS_AS(solve(parse(kCoTriple), SpaceClass::QS2, 4, opt), Error);
  }

  TEST_CASE("optimised search agrees with the plain enumerator") {
    std::mt19937_64 rng(424242);
    std::vector<std::string> names = {"a", "b", "c"};
    int agreed = 0, sat = 0;
    for (int i = 0; i < 240; ++i) {
      std::vector<std::string> use(names.begin(), names.begin() + 1 + (i % 3 == 0 ? 2 : i % 2));
      bool ci = rng() & 1;
      auto f = testgen::random_formula(rng, use, 3, 2, !ci, ci);
      auto cls = static_cast<SpaceClass>(rng() % 4);
      int bound = 1 + static_cast<int>(rng() % 3);
      auto fast = solve(f, cls, bound);
      auto slow = solve_reference(f, cls, bound);
      INFO(print(*f), " class ", class_name(cls), " bound ", bound);
      REQUIRE(fast.sat == slow.sat);
      if (fast.sat) {
        ++sat;
        CHECK(verify(*f, fast.witness, cls));
        CHECK(verify(*f, slow.witness, cls));
        CHECK(static_cast<int>(fast.witness.space->n0()) <= bound);
      }
      ++agreed;
    }
    CHECK(agreed == 240);
    CHECK(sat > 40);
    CHECK(sat < 220);
  }

  TEST_CASE("monotone in the bound and across classes") {
    std::mt19937_64 rng(17);
    std::vector<std::string> names = {"a", "b", "c"};
    for (int i = 0; i < 60; ++i) {
      auto f = testgen::random_formula(rng, names, 3, 2, true, false);
      auto r = solve(f, SpaceClass::ConnQS2, 3);
      if (!r.sat) continue;
      for (int b = 3; b <= 5; ++b) CHECK(solve(f, SpaceClass::ConnQS2, b).sat);
      for (auto cls : {SpaceClass::QS, SpaceClass::QS2, SpaceClass::ConnQS})
        CHECK(verify(*f, r.witness, cls));
    }
  }

  TEST_CASE("seeded runs are reproducible and jobs do not change the result") {
    auto f = parse(kPhi3);
    for (uint64_t seed : {0ull, 3ull, 12345ull}) {
      SolveOptions a, b;
      a.seed = b.seed = seed;
      a.jobs = 1;
      b.jobs = 4;
      auto ra = solve(f, SpaceClass::ConnQS2, 4, a);
      auto rb = solve(f, SpaceClass::ConnQS2, 4, b);
      auto rc = solve(f, SpaceClass::ConnQS2, 4, a);
      REQUIRE(ra.sat);
      REQUIRE(rb.sat);
      CHECK(ra.witness.valuation == rb.witness.valuation);
      CHECK(ra.witness.valuation == rc.witness.valuation);
      CHECK(ra.witness.space->n1() == rb.witness.space->n1());
    }
  }
}
