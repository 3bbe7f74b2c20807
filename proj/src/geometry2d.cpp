#include "topoconn/geometry2d.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "topoconn/error.hpp"

namespace topoconn {

Rat parse_rat(const std::string& s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0) fail("InvalidRational", "not a rational number: '" + s + "'");
  if (s.find('/') != std::string::npos && r.get_den() == 0) fail("InvalidRational", "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rat_string(const Rat& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

bool operator<(const Line& l, const Line& m) {
  if (l.a != m.a) return l.a < m.a;
  if (l.b != m.b) return l.b < m.b;
  return l.c < m.c;
}
bool operator==(const Line& l, const Line& m) { return l.a == m.a && l.b == m.b && l.c == m.c; }

size_t max_cells() {
  const char* e = std::getenv("TOPOCONN_MAX_CELLS");
  if (e && *e) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end && *end == 0 && v > 0) return static_cast<size_t>(v);
  }
  return 2000000;
}

struct RegionAccess {
  static PolyRegion raw(std::vector<Line> lines, std::set<std::string> cells) {
    PolyRegion r;
    r.lines_ = std::move(lines);
    r.cells_ = std::move(cells);
    return r;
  }
};

namespace {

// Canonical line through the rational coefficients; *flipped reports a sign change.
Line make_line(const Rat& a, const Rat& b, const Rat& c, bool* flipped = nullptr) {
  if (a == 0 && b == 0) fail("DegenerateLine", "line coefficients a and b are both zero");
  mpz_class d = 1;
  for (const Rat* r : {&a, &b, &c}) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), r->get_den().get_mpz_t());
  Line l;
  l.a = Rat(a * d).get_num();
  l.b = Rat(b * d).get_num();
  l.c = Rat(c * d).get_num();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), l.a.get_mpz_t(), l.b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), l.c.get_mpz_t());
  l.a /= g;
  l.b /= g;
  l.c /= g;
  bool flip = l.b < 0 || (l.b == 0 && l.a < 0);
  if (flip) {
    l.a = -l.a;
    l.b = -l.b;
    l.c = -l.c;
  }
  if (flipped) *flipped = flip;
  return l;
}

Line line_through(const Point& p, const Point& q) {
  Rat a = p.y - q.y, b = q.x - p.x;
  return make_line(a, b, -(a * p.x + b * p.y));
}

int sign_at(const Line& l, const Point& p) {
  Rat v = l.a * p.x + l.b * p.y + l.c;
  return sgn(v);
}

char sign_char(int s) { return s > 0 ? '+' : (s < 0 ? '-' : '0'); }

// Arrangement of finitely many lines: open cells, and optionally edges and vertices.
struct Arr {
  struct Edge {
    int line;
    int plus, minus;  // cells on either side
    int v0 = -1, v1 = -1;
  };

  std::vector<Line> lines;
  std::vector<std::string> cells;
  std::vector<Point> sample;
  std::vector<char> unbounded;
  std::unordered_map<std::string, int> index;

  std::vector<Edge> edges;
  std::vector<Point> verts;
  std::vector<std::vector<int>> vert_cells;

  int cell(const std::string& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

struct PointLess {
  bool operator()(const Point& p, const Point& q) const {
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
  }
};

Arr build(std::vector<Line> lines, bool topology) {
  Arr A;
  A.lines = std::move(lines);
  size_t n = A.lines.size();
  const auto& L = A.lines;

  std::map<Point, std::vector<int>, PointLess> vmap;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      mpz_class det = L[i].a * L[j].b - L[j].a * L[i].b;
      if (det == 0) continue;
      Rat x(mpz_class(L[i].b * L[j].c - L[j].b * L[i].c), det);
      Rat y(mpz_class(L[j].a * L[i].c - L[i].a * L[j].c), det);
      x.canonicalize();
      y.canonicalize();
      auto& v = vmap[Point{x, y}];
      v.push_back(static_cast<int>(i));
      v.push_back(static_cast<int>(j));
    }

  std::set<Rat> xs;
  for (auto& [p, ls] : vmap) xs.insert(p.x);
  for (const Line& l : L)
    if (l.b == 0) xs.insert(Rat(-l.c, l.a));
  std::vector<Rat> sx;
  if (xs.empty()) {
    sx.push_back(0);
  } else {
    sx.push_back(*xs.begin() - 1);
    for (auto it = xs.begin(), nx = std::next(it); nx != xs.end(); ++it, ++nx) sx.push_back((*it + *nx) / 2);
    sx.push_back(*xs.rbegin() + 1);
  }

  size_t cap = max_cells();
  std::vector<int> nonvert;
  for (size_t i = 0; i < n; ++i)
    if (L[i].b != 0) nonvert.push_back(static_cast<int>(i));
  std::string s(n, '?');
  std::vector<std::pair<Rat, int>> ys;
  for (size_t k = 0; k < sx.size(); ++k) {
    const Rat& x = sx[k];
    for (size_t i = 0; i < n; ++i)
      if (L[i].b == 0) s[i] = sign_char(sgn(L[i].a * x + L[i].c));
    ys.clear();
    for (int i : nonvert) ys.emplace_back(-(L[i].a * x + L[i].c) / L[i].b, i);
    std::sort(ys.begin(), ys.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    for (auto& [y, i] : ys) s[i] = '-';
    size_t m = ys.size();
    for (size_t g = 0; g <= m; ++g) {
      if (g > 0) s[ys[g - 1].second] = '+';
      if (A.index.count(s)) continue;
      Rat y;
      if (m == 0) y = 0;
      else if (g == 0) y = ys[0].first - 1;
      else if (g == m) y = ys[m - 1].first + 1;
      else y = (ys[g - 1].first + ys[g].first) / 2;
      A.index.emplace(s, static_cast<int>(A.cells.size()));
      A.cells.push_back(s);
      A.sample.push_back(Point{x, y});
      A.unbounded.push_back(k == 0 || k + 1 == sx.size() || g == 0 || g == m);
      if (A.cells.size() > cap)
        fail("ArrangementTooLarge", "arrangement exceeds " + std::to_string(cap) + " cells (TOPOCONN_MAX_CELLS)");
    }
  }
  // a cell first met in an inner slab may still reach an outer slab or the top/bottom
  for (size_t k = 0; k < sx.size(); ++k) {
    if (k != 0 && k + 1 != sx.size()) continue;
    const Rat& x = sx[k];
    for (size_t i = 0; i < n; ++i)
      if (L[i].b == 0) s[i] = sign_char(sgn(L[i].a * x + L[i].c));
    ys.clear();
    for (int i : nonvert) ys.emplace_back(-(L[i].a * x + L[i].c) / L[i].b, i);
    std::sort(ys.begin(), ys.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    for (auto& [y, i] : ys) s[i] = '-';
    for (size_t g = 0; g <= ys.size(); ++g) {
      if (g > 0) s[ys[g - 1].second] = '+';
      A.unbounded[A.index.at(s)] = 1;
    }
  }
  // top and bottom gaps of inner slabs
  for (size_t k = 1; k + 1 < sx.size(); ++k) {
    const Rat& x = sx[k];
    for (size_t i = 0; i < n; ++i)
      if (L[i].b == 0) s[i] = sign_char(sgn(L[i].a * x + L[i].c));
    for (int i : nonvert) s[i] = '-';
    A.unbounded[A.index.at(s)] = 1;
    for (int i : nonvert) s[i] = '+';
    A.unbounded[A.index.at(s)] = 1;
  }

  if (!topology) return A;

  std::vector<std::vector<int>> on_line(n);
  for (auto& [p, ls] : vmap) {
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    int v = static_cast<int>(A.verts.size());
    A.verts.push_back(p);
    std::string vs(n, '?');
    std::vector<int> zeros;
    size_t z = 0;
    for (size_t i = 0; i < n; ++i) {
      if (z < ls.size() && ls[z] == static_cast<int>(i)) {
        vs[i] = '0';
        zeros.push_back(static_cast<int>(i));
        ++z;
        on_line[i].push_back(v);
      } else {
        vs[i] = sign_char(sign_at(L[i], p));
      }
    }
    std::vector<int> inc;
    if (zeros.size() <= 16) {
      for (uint32_t mask = 0; mask < (1u << zeros.size()); ++mask) {
        for (size_t t = 0; t < zeros.size(); ++t) vs[zeros[t]] = ((mask >> t) & 1) ? '+' : '-';
        int c = A.cell(vs);
        if (c >= 0) inc.push_back(c);
      }
      for (int i : zeros) vs[i] = '0';
    } else {
      for (size_t c = 0; c < A.cells.size(); ++c) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = vs[i] == '0' || vs[i] == A.cells[c][i];
        if (ok) inc.push_back(static_cast<int>(c));
      }
    }
    A.vert_cells.push_back(std::move(inc));
  }

  for (size_t i = 0; i < n; ++i) {
    const Line& l = L[i];
    auto& vs = on_line[i];
    // order along the line by x, or by y for vertical lines
    std::sort(vs.begin(), vs.end(), [&](int p, int q) {
      return l.b != 0 ? A.verts[p].x < A.verts[q].x : A.verts[p].y < A.verts[q].y;
    });
    Point dir = l.b != 0 ? Point{Rat(1), Rat(-l.a, l.b)} : Point{Rat(0), Rat(1)};
    dir.y.canonicalize();
    auto add = [&](const Point& p, int v0, int v1) {
      std::string es(n, '?');
      for (size_t j = 0; j < n; ++j) es[j] = j == i ? '0' : sign_char(sign_at(L[j], p));
      es[i] = '+';
      int plus = A.cell(es);
      es[i] = '-';
      int minus = A.cell(es);
      if (plus < 0 || minus < 0) fail("InternalError", "edge without adjacent cells");
      A.edges.push_back(Arr::Edge{static_cast<int>(i), plus, minus, v0, v1});
    };
    if (vs.empty()) {
      Point p = l.b != 0 ? Point{Rat(0), Rat(-l.c, l.b)} : Point{Rat(-l.c, l.a), Rat(0)};
      p.x.canonicalize();
      p.y.canonicalize();
      add(p, -1, -1);
      continue;
    }
    const Point& first = A.verts[vs.front()];
    add(Point{first.x - dir.x, first.y - dir.y}, -1, vs.front());
    for (size_t k = 0; k + 1 < vs.size(); ++k) {
      const Point& p = A.verts[vs[k]];
      const Point& q = A.verts[vs[k + 1]];
      add(Point{(p.x + q.x) / 2, (p.y + q.y) / 2}, vs[k], vs[k + 1]);
    }
    const Point& last = A.verts[vs.back()];
    add(Point{last.x + dir.x, last.y + dir.y}, vs.back(), -1);
  }
  return A;
}

PolyRegion canonical(const Arr& A, const std::vector<char>& in) {
  size_t n = A.lines.size();
  std::vector<char> keep(n, 0);
  for (const auto& e : A.edges)
    if (in[e.plus] != in[e.minus]) keep[e.line] = 1;
  std::vector<Line> lines;
  for (size_t i = 0; i < n; ++i)
    if (keep[i]) lines.push_back(A.lines[i]);
  std::set<std::string> cells;
  for (size_t c = 0; c < A.cells.size(); ++c) {
    if (!in[c]) continue;
    std::string t;
    t.reserve(lines.size());
    for (size_t i = 0; i < n; ++i)
      if (keep[i]) t.push_back(A.cells[c][i]);
    cells.insert(std::move(t));
  }
  return RegionAccess::raw(std::move(lines), std::move(cells));
}

PolyRegion from_predicate(std::vector<Line> lines, const std::function<bool(const Point&)>& inside) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  Arr A = build(std::move(lines), true);
  std::vector<char> in(A.cells.size());
  for (size_t c = 0; c < A.cells.size(); ++c) in[c] = inside(A.sample[c]);
  return canonical(A, in);
}

// Common refinement of several regions.
struct Overlay {
  Arr arr;
  std::vector<std::vector<char>> labels;

  Overlay(const std::vector<const PolyRegion*>& regions, bool topology) {
    std::vector<Line> all;
    for (auto* r : regions) all.insert(all.end(), r->lines().begin(), r->lines().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    arr = build(all, topology);
    for (auto* r : regions) {
      std::vector<size_t> pos;
      for (const Line& l : r->lines())
        pos.push_back(static_cast<size_t>(std::lower_bound(arr.lines.begin(), arr.lines.end(), l) - arr.lines.begin()));
      std::vector<char> lab(arr.cells.size());
      std::string t(pos.size(), '?');
      for (size_t c = 0; c < arr.cells.size(); ++c) {
        for (size_t k = 0; k < pos.size(); ++k) t[k] = arr.cells[c][pos[k]];
        lab[c] = r->cells().count(t) > 0;
      }
      labels.push_back(std::move(lab));
    }
  }
};

bool contact_lab(const Arr& A, const std::vector<char>& p, const std::vector<char>& q) {
  for (size_t c = 0; c < A.cells.size(); ++c)
    if (p[c] && q[c]) return true;
  for (const auto& e : A.edges)
    if ((p[e.plus] || p[e.minus]) && (q[e.plus] || q[e.minus])) return true;
  for (const auto& inc : A.vert_cells) {
    bool hp = false, hq = false;
    for (int c : inc) {
      hp = hp || p[c];
      hq = hq || q[c];
    }
    if (hp && hq) return true;
  }
  return false;
}

// Number of pieces of the closure (via_vertices) or of the interior.
size_t components(const Arr& A, const std::vector<char>& lab, bool via_vertices) {
  std::vector<int> parent(A.cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (const auto& e : A.edges)
    if (lab[e.plus] && lab[e.minus]) unite(e.plus, e.minus);
  if (via_vertices)
    for (const auto& inc : A.vert_cells) {
      int first = -1;
      for (int c : inc) {
        if (!lab[c]) continue;
        if (first < 0) first = c;
        else unite(first, c);
      }
    }
  std::set<int> roots;
  for (size_t c = 0; c < A.cells.size(); ++c)
    if (lab[c]) roots.insert(find(static_cast<int>(c)));
  return roots.size();
}

Rat cross(const Point& o, const Point& p, const Point& q) {
  return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
}

bool on_segment(const Point& p, const Point& q, const Point& r) {
  // r collinear with pq
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

bool segments_meet(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  int d1 = sgn(cross(q1, q2, p1)), d2 = sgn(cross(q1, q2, p2));
  int d3 = sgn(cross(p1, p2, q1)), d4 = sgn(cross(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool same(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }

Rat area2(const Loop& l) {
  Rat s = 0;
  for (size_t i = 0; i < l.size(); ++i) {
    const Point& p = l[i];
    const Point& q = l[(i + 1) % l.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return s;
}

// point strictly off the boundary
bool inside_loop(const Loop& l, const Point& p) {
  bool in = false;
  for (size_t i = 0; i < l.size(); ++i) {
    const Point& a = l[i];
    const Point& b = l[(i + 1) % l.size()];
    if ((a.y > p.y) != (b.y > p.y)) {
      Rat x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) in = !in;
    }
  }
  return in;
}

bool collinear(const Loop& l) {
  for (size_t k = 2; k < l.size(); ++k)
    if (sgn(cross(l[0], l[1], l[k])) != 0) return false;
  return true;
}

Loop clean_loop(const Loop& raw) {
  Loop l;
  for (const Point& p : raw)
    if (l.empty() || !same(l.back(), p)) l.push_back(p);
  while (l.size() > 1 && same(l.front(), l.back())) l.pop_back();
  return l;
}

void check_simple(const Loop& l) {
  size_t m = l.size();
  for (size_t i = 0; i < m; ++i) {
    const Point& a = l[i];
    const Point& b = l[(i + 1) % m];
    const Point& c = l[(i + 2) % m];
    // doubling back along the previous edge
    if (sgn(cross(a, b, c)) == 0 && sgn((a.x - b.x) * (c.x - b.x) + (a.y - b.y) * (c.y - b.y)) > 0)
      fail("SelfIntersectingBoundary", "boundary folds back on itself");
    for (size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // adjacent through the wrap
      if (segments_meet(a, b, l[j], l[(j + 1) % m]))
        fail("SelfIntersectingBoundary", "boundary edges " + std::to_string(i) + " and " + std::to_string(j) + " meet");
    }
  }
}

// ccw order of directions measured from r, in (0, 2pi)
bool angle_less(const Point& r, const Point& d, const Point& e) {
  auto rel = [&](const Point& v) { return Point{r.x * v.x + r.y * v.y, r.x * v.y - r.y * v.x}; };
  Point a = rel(d), b = rel(e);
  auto half = [](const Point& v) { return v.y < 0 || (v.y == 0 && v.x < 0); };
  // angle 0 (straight back) sorts first so that it is never preferred
  auto key0 = [](const Point& v) { return v.y == 0 && v.x > 0; };
  if (key0(a) != key0(b)) return key0(a);
  bool ha = half(a), hb = half(b);
  if (ha != hb) return !ha;
  return a.x * b.y - a.y * b.x > 0;
}

std::vector<Loop> trace_boundary(const PolyRegion& p) {
  Arr A = build(p.lines(), true);
  std::vector<char> in(A.cells.size());
  for (size_t c = 0; c < A.cells.size(); ++c) in[c] = p.cells().count(A.cells[c]) > 0;
  struct Half {
    int from, to;
  };
  std::vector<Half> hs;
  for (const auto& e : A.edges) {
    if (in[e.plus] == in[e.minus]) continue;
    if (e.v0 < 0 || e.v1 < 0) fail("InternalError", "unbounded boundary edge in a bounded region");
    const Line& l = A.lines[e.line];
    const Point& a = A.verts[e.v0];
    const Point& b = A.verts[e.v1];
    Rat dx = b.x - a.x, dy = b.y - a.y;
    bool left_positive = -l.a * dy + l.b * dx > 0;
    bool in_positive = in[e.plus];
    if (left_positive == in_positive) hs.push_back({e.v0, e.v1});
    else hs.push_back({e.v1, e.v0});
  }
  std::vector<std::vector<int>> out(A.verts.size());
  for (size_t h = 0; h < hs.size(); ++h) out[hs[h].from].push_back(static_cast<int>(h));
  std::vector<char> used(hs.size(), 0);
  auto dir = [&](int h) {
    const Point& a = A.verts[hs[h].from];
    const Point& b = A.verts[hs[h].to];
    return Point{b.x - a.x, b.y - a.y};
  };
  std::vector<Loop> loops;
  for (size_t s = 0; s < hs.size(); ++s) {
    if (used[s]) continue;
    Loop loop;
    int h = static_cast<int>(s);
    while (!used[h]) {
      used[h] = 1;
      loop.push_back(A.verts[hs[h].from]);
      Point d = dir(h);
      Point r{-d.x, -d.y};
      int best = -1;
      for (int g : out[hs[h].to]) {
        if (best < 0 || angle_less(r, dir(best), dir(g))) best = g;
      }
      if (best < 0) fail("InternalError", "open boundary chain");
      h = best;
    }
    // drop vertices where the boundary runs straight on
    Loop simple;
    for (size_t i = 0; i < loop.size(); ++i) {
      const Point& a = loop[(i + loop.size() - 1) % loop.size()];
      const Point& b = loop[i];
      const Point& c = loop[(i + 1) % loop.size()];
      if (sgn(cross(a, b, c)) != 0 || sgn((a.x - b.x) * (c.x - b.x) + (a.y - b.y) * (c.y - b.y)) > 0)
        simple.push_back(b);
    }
    auto least = std::min_element(simple.begin(), simple.end(), PointLess{});
    std::rotate(simple.begin(), least, simple.end());
    loops.push_back(std::move(simple));
  }
  return loops;
}

}  // namespace

PolyRegion::PolyRegion(std::vector<Line> lines, std::set<std::string> cells) {
  size_t n = lines.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return lines[i] < lines[j]; });
  std::vector<Line> sorted;
  for (size_t i : order) sorted.push_back(lines[i]);
  for (const auto& c : cells)
    if (c.size() != n) fail("InvalidRegion", "cell sign vector has the wrong length");
  auto copy = sorted;
  copy.erase(std::unique(copy.begin(), copy.end()), copy.end());
  Arr A = build(copy, true);
  std::vector<char> in(A.cells.size());
  for (size_t c = 0; c < A.cells.size(); ++c) {
    // evaluate the original sign vector at the cell's sample point
    std::string t(n, '?');
    for (size_t k = 0; k < n; ++k) t[k] = sign_char(sign_at(lines[k], A.sample[c]));
    in[c] = cells.count(t) > 0;
  }
  *this = canonical(A, in);
}

PolyRegion PolyRegion::whole() { return RegionAccess::raw({}, {""}); }

bool PolyRegion::bounded() const {
  Arr A = build(lines_, false);
  for (size_t c = 0; c < A.cells.size(); ++c)
    if (A.unbounded[c] && cells_.count(A.cells[c])) return false;
  return true;
}

bool PolyRegion::cobounded() const {
  Arr A = build(lines_, false);
  for (size_t c = 0; c < A.cells.size(); ++c)
    if (A.unbounded[c] && !cells_.count(A.cells[c])) return false;
  return true;
}

std::optional<bool> PolyRegion::contains(const Point& p) const {
  std::string s(lines_.size(), '?');
  for (size_t i = 0; i < lines_.size(); ++i) {
    int v = sign_at(lines_[i], p);
    if (v == 0) return std::nullopt;
    s[i] = sign_char(v);
  }
  return cells_.count(s) > 0;
}

PolyRegion box(const Point& lo, const Point& hi) {
  if (lo.x >= hi.x || lo.y >= hi.y) return PolyRegion();
  std::vector<Line> ls = {make_line(1, 0, -lo.x), make_line(1, 0, -hi.x), make_line(0, 1, -lo.y),
                          make_line(0, 1, -hi.y)};
  return from_predicate(ls, [&](const Point& p) { return lo.x < p.x && p.x < hi.x && lo.y < p.y && p.y < hi.y; });
}

PolyRegion halfplane(const Rat& a, const Rat& b, const Rat& c) {
  Line l = make_line(a, b, c);
  return from_predicate({l}, [&](const Point& p) { return a * p.x + b * p.y + c > 0; });
}

PolyRegion polygon(const Loop& outer_raw, const std::vector<Loop>& holes_raw) {
  Loop outer = clean_loop(outer_raw);
  if (outer.size() < 3 || collinear(outer)) return PolyRegion();
  check_simple(outer);
  std::vector<Loop> holes;
  for (const Loop& h : holes_raw) {
    Loop c = clean_loop(h);
    if (c.size() < 3 || collinear(c)) continue;
    check_simple(c);
    holes.push_back(std::move(c));
  }
  std::vector<Line> ls;
  auto edges = [&](const Loop& l) {
    for (size_t i = 0; i < l.size(); ++i) ls.push_back(line_through(l[i], l[(i + 1) % l.size()]));
  };
  edges(outer);
  for (const Loop& h : holes) edges(h);
  return from_predicate(ls, [&](const Point& p) {
    if (!inside_loop(outer, p)) return false;
    for (const Loop& h : holes)
      if (inside_loop(h, p)) return false;
    return true;
  });
}

PolyRegion complement(const PolyRegion& p) {
  Arr A = build(p.lines(), false);
  std::set<std::string> cells;
  for (const auto& c : A.cells)
    if (!p.cells().count(c)) cells.insert(c);
  return RegionAccess::raw(p.lines(), std::move(cells));
}

static PolyRegion combine(const PolyRegion& p, const PolyRegion& q, bool is_sum) {
  Overlay o({&p, &q}, true);
  std::vector<char> in(o.arr.cells.size());
  for (size_t c = 0; c < in.size(); ++c)
    in[c] = is_sum ? (o.labels[0][c] || o.labels[1][c]) : (o.labels[0][c] && o.labels[1][c]);
  return canonical(o.arr, in);
}

PolyRegion sum(const PolyRegion& p, const PolyRegion& q) { return combine(p, q, true); }
PolyRegion product(const PolyRegion& p, const PolyRegion& q) { return combine(p, q, false); }

PolyRegion transform(const PolyRegion& p, const std::array<Rat, 4>& m, const Point& t) {
  Rat det = m[0] * m[3] - m[1] * m[2];
  if (det == 0) fail("UsageError", "transformation matrix is singular");
  Rat i00 = m[3] / det, i01 = -m[1] / det, i10 = -m[2] / det, i11 = m[0] / det;
  size_t n = p.lines().size();
  std::vector<Line> ls;
  std::vector<char> flip(n);
  for (size_t k = 0; k < n; ++k) {
    const Line& l = p.lines()[k];
    Rat a = l.a * i00 + l.b * i10;
    Rat b = l.a * i01 + l.b * i11;
    Rat c = l.c - a * t.x - b * t.y;
    bool f = false;
    ls.push_back(make_line(a, b, c, &f));
    flip[k] = f;
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return ls[i] < ls[j]; });
  std::vector<Line> sorted;
  for (size_t i : order) sorted.push_back(ls[i]);
  std::set<std::string> cells;
  for (const auto& s : p.cells()) {
    std::string t2(n, '?');
    for (size_t k = 0; k < n; ++k) {
      char ch = s[order[k]];
      if (flip[order[k]]) ch = ch == '+' ? '-' : '+';
      t2[k] = ch;
    }
    cells.insert(std::move(t2));
  }
  return RegionAccess::raw(std::move(sorted), std::move(cells));
}

bool contact(const PolyRegion& p, const PolyRegion& q) {
  if (p.is_empty() || q.is_empty()) return false;
  Overlay o({&p, &q}, true);
  return contact_lab(o.arr, o.labels[0], o.labels[1]);
}

bool connected(const PolyRegion& p) {
  Overlay o({&p}, true);
  return components(o.arr, o.labels[0], true) <= 1;
}

bool interior_connected(const PolyRegion& p) {
  Overlay o({&p}, true);
  return components(o.arr, o.labels[0], false) <= 1;
}

PolyLoops to_loops(const PolyRegion& p) {
  PolyLoops out;
  PolyRegion r = p;
  if (!p.bounded()) {
    if (!p.cobounded())
      fail("Unrepresentable", "region is neither bounded nor the complement of a bounded region");
    r = complement(p);
    out.complemented = true;
  }
  std::vector<Loop> outers, holes;
  for (Loop& l : trace_boundary(r)) (area2(l) > 0 ? outers : holes).push_back(std::move(l));
  for (const Loop& l : outers) out.polygons.push_back({l, {}});
  for (Loop& h : holes) {
    // midpoint of the first edge lies on no other loop
    Point m{(h[0].x + h[1].x) / 2, (h[0].y + h[1].y) / 2};
    int best = -1;
    for (size_t k = 0; k < outers.size(); ++k) {
      if (!inside_loop(outers[k], m)) continue;
      if (best < 0 || area2(outers[k]) < area2(outers[best])) best = static_cast<int>(k);
    }
    if (best < 0) fail("InternalError", "hole outside every outer loop");
    out.polygons[best].holes.push_back(std::move(h));
  }
  auto loop_less = [](const Loop& a, const Loop& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), PointLess{});
  };
  for (auto& pw : out.polygons) std::sort(pw.holes.begin(), pw.holes.end(), loop_less);
  std::sort(out.polygons.begin(), out.polygons.end(),
            [&](const PolygonWithHoles& a, const PolygonWithHoles& b) { return loop_less(a.outer, b.outer); });
  return out;
}

PolyRegion from_loops(const PolyLoops& l) {
  PolyRegion r;
  for (const auto& pw : l.polygons) r = sum(r, polygon(pw.outer, pw.holes));
  return l.complemented ? complement(r) : r;
}

// ---------------------------------------------------------------- evaluation

namespace {

class Evaluator {
 public:
  Evaluator(const PolyInterpretation& m, const Formula& f) {
    std::vector<const PolyRegion*> rs;
    for (const auto& v : variables(f)) {
      auto it = m.valuation.find(v);
      if (it == m.valuation.end()) fail("UnboundVariable", "variable '" + v + "' has no region");
      names_.push_back(v);
      rs.push_back(&it->second);
    }
    o_ = std::make_unique<Overlay>(rs, true);
    for (size_t i = 0; i < names_.size(); ++i) memo_[names_[i]] = o_->labels[i];
  }

  const std::vector<char>& term(const Term& t) {
    std::string key = print(t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    size_t n = o_->arr.cells.size();
    std::vector<char> v(n);
    switch (t.kind) {
      case TermKind::Var: fail("UnboundVariable", "variable '" + t.name + "' has no region");
      case TermKind::Zero: break;
      case TermKind::One: std::fill(v.begin(), v.end(), 1); break;
      case TermKind::Complement: {
        const auto& a = term(*t.left);
        for (size_t c = 0; c < n; ++c) v[c] = !a[c];
        break;
      }
      case TermKind::Sum:
      case TermKind::Product: {
        std::vector<char> a = term(*t.left);
        const auto& b = term(*t.right);
        for (size_t c = 0; c < n; ++c) v[c] = t.kind == TermKind::Sum ? (a[c] || b[c]) : (a[c] && b[c]);
        break;
      }
    }
    return memo_[key] = std::move(v);
  }

  bool holds(const Formula& f) {
    switch (f.kind) {
      case FormulaKind::Eq: {
        std::vector<char> a = term(*f.a);
        return a == term(*f.b);
      }
      case FormulaKind::Contact: {
        std::vector<char> a = term(*f.a);
        return contact_lab(o_->arr, a, term(*f.b));
      }
      case FormulaKind::Conn: return components(o_->arr, term(*f.a), true) <= 1;
      case FormulaKind::IntConn: return components(o_->arr, term(*f.a), false) <= 1;
      case FormulaKind::And: return holds(*f.f) && holds(*f.g);
      case FormulaKind::Not: return !holds(*f.f);
    }
    return false;
  }

  PolyRegion region(const Term& t) { return canonical(o_->arr, term(t)); }

 private:
  std::vector<std::string> names_;
  std::unique_ptr<Overlay> o_;
  std::map<std::string, std::vector<char>> memo_;
};

}  // namespace

PolyRegion eval_term(const PolyInterpretation& m, const Term& t) {
  Evaluator ev(m, *eq(std::make_shared<const Term>(t), zero()));
  return ev.region(t);
}

bool eval(const PolyInterpretation& m, const Formula& f) {
  Evaluator ev(m, f);
  return ev.holds(f);
}

std::vector<std::pair<FormulaPtr, bool>> conjunct_report(const PolyInterpretation& m, const FormulaPtr& f) {
  Evaluator ev(m, *f);
  std::vector<std::pair<FormulaPtr, bool>> out;
  for (const auto& g : conjuncts(f)) out.emplace_back(g, ev.holds(*g));
  return out;
}

}  // namespace topoconn
