#include "topoconn/constructions.hpp"
#include "topoconn/error.hpp"

namespace topoconn {

namespace {

Point pt(long x, long y) { return Point{Rat(x), Rat(y)}; }

PolyRegion square(long r) { return box(pt(-r, -r), pt(r, r)); }

// r1 = OAB, r2 = OBC, r3 = OCA; every pair shares an edge through O.
PolyInterpretation phi_k_triangle() {
  Point o = pt(0, 0), a = pt(2, 0), b = pt(-1, 2), c = pt(-1, -2);
  PolyInterpretation m;
  m.valuation["r1"] = polygon({o, a, b});
  m.valuation["r2"] = polygon({o, b, c});
  m.valuation["r3"] = polygon({o, c, a});
  return m;
}

// Row of kernels touching end to end; middles and outers are growing margins
// that still keep a_i away from a_{i+2}.
PolyInterpretation stack_chain(int n) {
  PolyInterpretation m;
  for (int i = 1; i <= n; ++i) {
    long x = 20L * i;
    auto v = ThreeRegionVar::named("a" + std::to_string(i));
    m.valuation[v.inner] = box(pt(x, 0), pt(x + 20, 10));
    m.valuation[v.middle] = box(pt(x - 5, -5), pt(x + 25, 15));
    m.valuation[v.outer] = box(pt(x - 9, -10), pt(x + 29, 20));
  }
  return m;
}

// Point at perimeter parameter p (0..16) on the square of half-size 2, counter-clockwise from (2,-2).
Point on_square(const Rat& p) {
  if (p <= 4) return Point{Rat(2), Rat(-2) + p};
  if (p <= 8) return Point{Rat(2) - (p - 4), Rat(2)};
  if (p <= 12) return Point{Rat(-2), Rat(2) - (p - 8)};
  return Point{Rat(-2) + (p - 12), Rat(-2)};
}

// n sectors of the square annulus between half-sizes 1 and 2, cut radially.
PolyInterpretation tilde_frame_ring(int n) {
  PolyInterpretation m;
  for (int i = 0; i < n; ++i) {
    Rat p0 = Rat(16 * i) / n, p1 = Rat(16 * (i + 1)) / n;
    Loop outer{on_square(p0)};
    for (int c = 1; c <= 4; ++c)
      if (p0 < 4 * c && 4 * c < p1) outer.push_back(on_square(Rat(4 * c)));
    outer.push_back(on_square(p1));
    Loop loop = outer;
    for (auto it = outer.rbegin(); it != outer.rend(); ++it) loop.push_back(Point{it->x / 2, it->y / 2});
    m.valuation["a" + std::to_string(i)] = polygon(loop);
  }
  return m;
}

// Layers j = 0..4k-1 of nested square annuli (half-size 10j to 10j+10) go to
// d_{j mod 4}; the unbounded outside goes to d0. Each layer carries a bar of a_{j mod 4}
// on its left side, and one more a0 bar sits just outside. t runs right through all
// layers. The outside bar has no next layer to reach, so c(a0 + d1 + t) breaks.
PolyInterpretation onion_truncation(int k) {
  long m = 4L * k;
  std::vector<PolyRegion> d(4), a(4);
  for (long j = 0; j < m; ++j) {
    PolyRegion layer = j == 0 ? square(10) : product(square(10 * (j + 1)), complement(square(10 * j)));
    d[j % 4] = sum(d[j % 4], layer);
    PolyRegion bar = j == 0 ? box(pt(-10, -1), pt(-1, 1)) : box(pt(-10 * (j + 1), -(j + 1)), pt(-10 * j, j + 1));
    a[j % 4] = sum(a[j % 4], bar);
  }
  long R = 10 * m;
  d[0] = sum(d[0], complement(square(R)));
  a[0] = sum(a[0], box(pt(-R - 10, -(m + 1)), pt(-R, m + 1)));
  PolyInterpretation out;
  for (int i = 0; i < 4; ++i) {
    out.valuation["d" + std::to_string(i)] = d[i];
    out.valuation["a" + std::to_string(i)] = a[i];
  }
  out.valuation["t"] = box(pt(1, -1), pt(R + 10, 1));
  return out;
}

struct WitnessInfo {
  WitnessKind kind;
  const char* name;
  int min_n;
};

const WitnessInfo kWitnesses[] = {
    {WitnessKind::PhiKTriangle, "phi_k_triangle", 0},
    {WitnessKind::StackChain, "stack_chain", 3},
    {WitnessKind::TildeFrameRing, "tilde_frame_ring", 3},
    {WitnessKind::OnionTruncation, "onion_truncation", 1},
};

const WitnessInfo& winfo(WitnessKind k) {
  for (auto& w : kWitnesses)
    if (w.kind == k) return w;
  fail("UnknownFamily", "unknown witness");
}

void check_arity(WitnessKind k, int n) {
  auto& w = winfo(k);
  if (w.min_n > 0 && n < w.min_n) fail("ArityError", std::string(w.name) + " needs n >= " + std::to_string(w.min_n));
}

}  // namespace

std::string witness_name(WitnessKind k) { return winfo(k).name; }

WitnessKind parse_witness(const std::string& s) {
  for (auto& w : kWitnesses)
    if (s == w.name) return w.kind;
  fail("UnknownFamily", "unknown witness family '" + s + "'");
}

FormulaPtr witness_formula(WitnessKind k, int n) {
  check_arity(k, n);
  switch (k) {
    case WitnessKind::PhiKTriangle:
      return generate({FamilyKind::PhiK, 3});
    case WitnessKind::StackChain:
      return generate({FamilyKind::Stack, n});
    case WitnessKind::TildeFrameRing:
      return generate({FamilyKind::TildeFrame, n});
    case WitnessKind::OnionTruncation:
      return generate({FamilyKind::PhiInf, 0});
  }
  fail("UnknownFamily", "unknown witness");
}

PolyInterpretation witness(WitnessKind k, int n) {
  check_arity(k, n);
  switch (k) {
    case WitnessKind::PhiKTriangle:
      return phi_k_triangle();
    case WitnessKind::StackChain:
      return stack_chain(n);
    case WitnessKind::TildeFrameRing:
      return tilde_frame_ring(n);
    case WitnessKind::OnionTruncation:
      return onion_truncation(n);
  }
  fail("UnknownFamily", "unknown witness");
}

}  // namespace topoconn
