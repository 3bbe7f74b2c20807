#include <algorithm>
#include <random>

#include "doctest.h"
#include "topoconn/error.hpp"
#include "topoconn/quasisaw.hpp"

using namespace topoconn;

namespace {

const char* kCoTriple = "co(r1) & co(r2) & co(r3) & co(r1 + r2 + r3) & !co(r1 + r2) & !co(r1 + r3)";

SpacePtr saw3_space() {
  return std::make_shared<const QuasiSaw>(std::vector<std::string>{"x1", "x2", "x3"},
                                          std::vector<QuasiSaw::Depth1>{{"z", {"x1", "x2", "x3"}}});
}

QsInterpretation saw3_model() {
  auto s = saw3_space();
  QsInterpretation m{s, {}};
  m.valuation["r1"] = qs_region(s, {"x1"}).core;
  m.valuation["r2"] = qs_region(s, {"x2"}).core;
  m.valuation["r3"] = qs_region(s, {"x3"}).core;
  return m;
}

SpacePtr random_space(std::mt19937_64& rng, int max0, int max1, bool two) {
  int n0 = 1 + static_cast<int>(rng() % max0);
  int n1 = static_cast<int>(rng() % (max1 + 1));
  std::vector<std::string> w0;
  for (int i = 0; i < n0; ++i) w0.push_back("p" + std::to_string(i));
  std::vector<QuasiSaw::Depth1> w1;
  for (int k = 0; k < n1; ++k) {
    QuasiSaw::Depth1 z{"q" + std::to_string(k), {}};
    int want = two ? 1 + static_cast<int>(rng() % 2) : 1 + static_cast<int>(rng() % n0);
    std::vector<int> idx(n0);
    for (int i = 0; i < n0; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int i = 0; i < std::min(want, n0); ++i) z.succ.push_back(w0[idx[i]]);
    w1.push_back(z);
  }
  return std::make_shared<const QuasiSaw>(w0, w1);
}

Bits random_core(std::mt19937_64& rng, size_t n) {
  Bits b(n);
  for (size_t i = 0; i < n; ++i)
    if (rng() & 1) b.set(i);
  return b;
}

// Topological oracle on full point sets, straight from the Aleksandrov definitions.
struct Full {
  std::vector<char> in;  // w0 then w1
};

Full full_of(const QsRegion& r) {
  PointSet p = points(r);
  const QuasiSaw& s = *r.space;
  Full f{std::vector<char>(s.n0() + s.n1())};
  for (size_t i = 0; i < s.n0(); ++i) f.in[i] = p.w0.test(i);
  for (size_t k = 0; k < s.n1(); ++k) f.in[s.n0() + k] = p.w1.test(k);
  return f;
}

Full cl_int(const QuasiSaw& s, const Full& x) {
  size_t n0 = s.n0();
  Full in{std::vector<char>(n0 + s.n1())};
  for (size_t i = 0; i < n0; ++i) in.in[i] = x.in[i];
  for (size_t k = 0; k < s.n1(); ++k) {
    bool all = x.in[n0 + k];
    for (size_t i = 0; i < n0; ++i)
      if (s.succ(k).test(i) && !x.in[i]) all = false;
    in.in[n0 + k] = all;
  }
  Full cl{in.in};
  for (size_t k = 0; k < s.n1(); ++k)
    for (size_t i = 0; i < n0; ++i)
      if (s.succ(k).test(i) && in.in[i]) cl.in[n0 + k] = 1;
  return cl;
}

// Connectedness of a point set in the subspace topology: points linked by the order.
bool set_connected(const QuasiSaw& s, const std::vector<char>& in) {
  size_t n0 = s.n0(), n = n0 + s.n1();
  std::vector<int> comp(n, -1);
  int start = -1;
  for (size_t i = 0; i < n; ++i)
    if (in[i]) {
      start = static_cast<int>(i);
      break;
    }
  if (start < 0) return true;
  std::vector<int> stack{start};
  comp[start] = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (size_t v = 0; v < n; ++v) {
      if (!in[v] || comp[v] >= 0) continue;
      bool adj = false;
      if (u >= static_cast<int>(n0) && v < n0) adj = s.succ(u - n0).test(v);
      if (u < static_cast<int>(n0) && v >= n0) adj = s.succ(v - n0).test(u);
      if (adj) {
        comp[v] = 0;
        stack.push_back(static_cast<int>(v));
      }
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (in[i] && comp[i] < 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("quasisaw") {
  TEST_CASE("construction validates the space") {
    using D = QuasiSaw::Depth1;
    CHECK_THROWS_AS(QuasiSaw({"x"}, {D{"z", {}}}), Error);
    CHECK_THROWS_AS(QuasiSaw({"x"}, {D{"z", {"y"}}}), Error);
    CHECK_THROWS_AS(QuasiSaw({"x", "x"}, {}), Error);
    CHECK_THROWS_AS(QuasiSaw({"x"}, {D{"x", {"x"}}}), Error);
    QuasiSaw s({"a", "b", "c"}, {D{"z1", {"a", "b"}}, D{"z2", {"b", "c"}}});
    CHECK(s.two_quasi_saw());
    CHECK(s.connected());
    QuasiSaw t({"a", "b", "c"}, {D{"z1", {"a", "b"}}});
    CHECK_FALSE(t.connected());
    CHECK_FALSE(saw3_space()->two_quasi_saw());
  }

  TEST_CASE("algebra on cores") {
    auto s = saw3_space();
    auto a = qs_region(s, {"x1", "x2"});
    CHECK(algebra(BoolOp::Complement, {algebra(BoolOp::Complement, {a})}).core == a.core);
    CHECK(algebra(BoolOp::Sum, {a, algebra(BoolOp::Complement, {a})}).core == qs_one(s).core);
    auto r1 = qs_region(s, {"x1"}), r2 = qs_region(s, {"x2"});
    CHECK(algebra(BoolOp::Product, {r1, r2}).core.none());
    CHECK(contact(r1, r2));
    auto other = saw3_space();
    CHECK_THROWS_AS(algebra(BoolOp::Sum, {r1, qs_region(other, {"x1"})}), Error);
    CHECK_THROWS_AS(contact(r1, qs_region(other, {"x2"})), Error);
  }

  TEST_CASE("closure, interior and boundary") {
    auto s = saw3_space();
    auto r = closure_interior_boundary(*s, {"x1"});
    CHECK(r.closure == std::vector<std::string>{"x1", "z"});
    CHECK(r.interior == std::vector<std::string>{"x1"});
    CHECK(r.boundary == std::vector<std::string>{"z"});
    auto w = closure_interior_boundary(*s, {"x1", "x2", "x3", "z"});
    CHECK(w.closure.size() == 4);
    CHECK(w.interior.size() == 4);
    CHECK(w.boundary.empty());
    auto e = closure_interior_boundary(*s, {});
    CHECK(e.closure.empty());
    CHECK(e.interior.empty());
    CHECK_THROWS_AS(closure_interior_boundary(*s, {"nope"}), Error);
  }

  TEST_CASE("contact and connectedness on the wiggly model") {
    auto s = saw3_space();
    auto all = qs_region(s, {"x1", "x2", "x3"});
    CHECK(connected(all));
    CHECK(interior_connected(all));
    auto two = qs_region(s, {"x1", "x2"});
    CHECK(connected(two));
    CHECK_FALSE(interior_connected(two));
    CHECK(connected(qs_zero(s)));
    CHECK(interior_connected(qs_zero(s)));
    auto lone = std::make_shared<const QuasiSaw>(std::vector<std::string>{"a", "b"}, std::vector<QuasiSaw::Depth1>{});
    CHECK_FALSE(contact(qs_region(lone, {"a"}), qs_region(lone, {"b"})));
    CHECK(contact(qs_region(lone, {"a"}), qs_region(lone, {"a"})));
  }

  TEST_CASE("model checking") {
    auto m = saw3_model();
    auto f = parse(kCoTriple);
    CHECK(eval(m, *f));
    auto rows = conjunct_report(m, f);
    CHECK(rows.size() == 6);
    for (auto& [c, v] : rows) CHECK(v);
    CHECK(eval(m, *parse("r1 = r1")));
    CHECK_THROWS_AS(eval(m, *parse("q != 0")), Error);

    // phi_3 on the triangle: three points, one depth-1 point per pair
    using D = QuasiSaw::Depth1;
    auto tri = std::make_shared<const QuasiSaw>(
        std::vector<std::string>{"x1", "x2", "x3"},
        std::vector<D>{D{"z12", {"x1", "x2"}}, D{"z13", {"x1", "x3"}}, D{"z23", {"x2", "x3"}}});
    QsInterpretation t{tri, {}};
    t.valuation["r1"] = qs_region(tri, {"x1"}).core;
    t.valuation["r2"] = qs_region(tri, {"x2"}).core;
    t.valuation["r3"] = qs_region(tri, {"x3"}).core;
    auto phi3 = parse(
        "co(r1) & r1 != 0 & co(r2) & r2 != 0 & co(r3) & r3 != 0 & co(r1 + r2) & r1 * r2 = 0 & "
        "co(r1 + r3) & r1 * r3 = 0 & co(r2 + r3) & r2 * r3 = 0");
    CHECK(eval(t, *phi3));
    CHECK_FALSE(eval(m, *phi3));
  }

  TEST_CASE("core operations agree with regularised point-set operations") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
      auto s = random_space(rng, 4, 4, false);
      if (s->n0() + s->n1() > 8) continue;
      QsRegion a{s, random_core(rng, s->n0())}, b{s, random_core(rng, s->n0())};
      Full fa = full_of(a), fb = full_of(b);
      size_t n = fa.in.size();
      Full u{std::vector<char>(n)}, x{std::vector<char>(n)}, c{std::vector<char>(n)};
      for (size_t i = 0; i < n; ++i) {
        u.in[i] = fa.in[i] || fb.in[i];
        x.in[i] = fa.in[i] && fb.in[i];
        c.in[i] = !fa.in[i];
      }
      CHECK(full_of(algebra(BoolOp::Sum, {a, b})).in == cl_int(*s, u).in);
      CHECK(full_of(algebra(BoolOp::Product, {a, b})).in == cl_int(*s, x).in);
      CHECK(full_of(algebra(BoolOp::Complement, {a})).in == cl_int(*s, c).in);
      // regions are regular closed
      CHECK(cl_int(*s, fa).in == fa.in);

      bool meet = false;
      for (size_t i = 0; i < n; ++i) meet |= fa.in[i] && fb.in[i];
      CHECK(contact(a, b) == meet);

      CHECK(connected(a) == set_connected(*s, fa.in));
      // interior as a point set
      std::vector<char> in(n);
      for (size_t i = 0; i < s->n0(); ++i) in[i] = fa.in[i];
      for (size_t k = 0; k < s->n1(); ++k) in[s->n0() + k] = s->succ(k).is_subset_of(a.core) && fa.in[s->n0() + k];
      CHECK(interior_connected(a) == set_connected(*s, in));
    }
  }

  TEST_CASE("c and co coincide on 2-quasi-saws") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 300; ++it) {
      auto s = random_space(rng, 6, 10, true);
      for (int r = 0; r < 10; ++r) {
        QsRegion a{s, random_core(rng, s->n0())};
        CHECK(connected(a) == interior_connected(a));
      }
    }
  }

  TEST_CASE("evaluation is invariant under renaming points") {
    auto m = saw3_model();
    auto s = std::make_shared<const QuasiSaw>(std::vector<std::string>{"c", "b", "a"},
                                              std::vector<QuasiSaw::Depth1>{{"w", {"a", "b", "c"}}});
    QsInterpretation r{s, {}};
    r.valuation["r1"] = qs_region(s, {"c"}).core;
    r.valuation["r2"] = qs_region(s, {"b"}).core;
    r.valuation["r3"] = qs_region(s, {"a"}).core;
    for (const char* text : {kCoTriple, "C(r1, r2) & !C(r1, -r1)", "c(r1 + r2) & r1 * r3 = 0"})
      CHECK(eval(m, *parse(text)) == eval(r, *parse(text)));
  }
}
