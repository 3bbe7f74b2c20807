#include "topoconn/embed3d.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "topoconn/error.hpp"

namespace topoconn {

using Rat = mpq_class;

QuasiSaw neighbourhood_to_quasisaw(const Graph& g) {
  if (g.vertices.empty()) fail("EmptyGraph", "graph has no vertices");
  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    if (!idx.emplace(g.vertices[i], i).second) fail("InvalidGraph", "duplicate vertex '" + g.vertices[i] + "'");

  // normalise orientation to vertex order, drop duplicates
  std::set<std::pair<size_t, size_t>> es;
  for (auto& [x, y] : g.edges) {
    auto ix = idx.find(x), iy = idx.find(y);
    if (ix == idx.end() || iy == idx.end()) fail("UnknownPoint", "edge {" + x + ", " + y + "} has an unknown end");
    if (ix->second == iy->second) fail("InvalidGraph", "self-loop at '" + x + "'");
    es.insert(std::minmax(ix->second, iy->second));
  }

  std::vector<size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (auto& [a, b] : es) parent[find(a)] = find(b);
  for (size_t i = 1; i < parent.size(); ++i)
    if (find(i) != find(0)) fail("DisconnectedGraph", "vertex '" + g.vertices[i] + "' is not reachable");

  std::vector<QuasiSaw::Depth1> w1;
  std::set<std::string> used(g.vertices.begin(), g.vertices.end());
  for (auto& [a, b] : es) {
    std::string id = "z_" + g.vertices[a] + "_" + g.vertices[b];
    while (used.count(id)) id += "'";
    used.insert(id);
    w1.push_back({id, {g.vertices[a], g.vertices[b]}});
  }
  return QuasiSaw(g.vertices, std::move(w1));
}

std::string to_dot(const Graph& g) {
  std::string out = "graph neighbourhood {\n";
  for (auto& v : g.vertices) out += "  \"" + v + "\";\n";
  for (auto& [x, y] : g.edges) out += "  \"" + x + "\" -- \"" + y + "\";\n";
  return out + "}\n";
}

namespace {

int universal_point(const QuasiSaw& s) {
  for (size_t z = 0; z < s.n1(); ++z)
    if (s.succ(z).all()) return static_cast<int>(z);
  return -1;
}

}  // namespace

QsInterpretation normalize_z0(const QsInterpretation& m) {
  const QuasiSaw& s = *m.space;
  if (universal_point(s) >= 0) return m;
  std::string id = "z0";
  for (int k = 1; s.index0(id) >= 0 || s.index1(id) >= 0; ++k) id = "z0_" + std::to_string(k);
  std::vector<QuasiSaw::Depth1> w1;
  for (size_t z = 0; z < s.n1(); ++z) {
    QuasiSaw::Depth1 d{s.w1()[z], {}};
    for (size_t x = 0; x < s.n0(); ++x)
      if (s.succ(z).test(x)) d.succ.push_back(s.w0()[x]);
    w1.push_back(std::move(d));
  }
  w1.push_back({id, s.w0()});
  // cores live on W0, so the valuation carries over unchanged
  return {std::make_shared<const QuasiSaw>(s.w0(), std::move(w1)), m.valuation};
}

// ---- exact geometry ----

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 mul(const Vec3& a, const Rat& k) { return {a[0] * k, a[1] * k, a[2] * k}; }
Rat dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Rat norm2(const Vec3& a) { return dot(a, a); }

Rat point_segment2(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 ab = sub(b, a);
  Rat l = norm2(ab);
  if (l == 0) return norm2(sub(p, a));
  Rat t = dot(sub(p, a), ab) / l;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return norm2(sub(p, add(a, mul(ab, t))));
}

// The minimum is either an interior critical point or has one parameter at 0 or 1.
Rat segment_segment2(const Vec3& a1, const Vec3& b1, const Vec3& a2, const Vec3& b2) {
  Rat best = point_segment2(a1, a2, b2);
  for (const Rat& d : {point_segment2(b1, a2, b2), point_segment2(a2, a1, b1), point_segment2(b2, a1, b1)})
    if (d < best) best = d;
  Vec3 d1 = sub(b1, a1), d2 = sub(b2, a2), r = sub(a1, a2);
  Rat a = dot(d1, d1), e = dot(d2, d2), b = dot(d1, d2), c = dot(d1, r), f = dot(d2, r);
  Rat den = a * e - b * b;
  if (den != 0) {
    Rat s = (b * f - c * e) / den, t = (a * f - b * c) / den;
    if (s >= 0 && s <= 1 && t >= 0 && t <= 1) {
      Rat d = norm2(sub(add(a1, mul(d1, s)), add(a2, mul(d2, t))));
      if (d < best) best = d;
    }
  }
  return best;
}

// A ball is a capsule with a == b.
struct Solid {
  std::string owner;
  Vec3 a, b;
  Rat r;
};

std::vector<Solid> solids(const Scene& s) {
  std::vector<Solid> out;
  for (auto& x : s.balls) out.push_back({x.owner, x.center, x.center, x.radius});
  for (auto& x : s.rods) out.push_back({x.owner, x.a, x.b, x.radius});
  return out;
}

Rat dist2(const Solid& p, const Solid& q) {
  bool pb = p.a == p.b, qb = q.a == q.b;
  if (pb && qb) return norm2(sub(p.a, q.a));
  if (pb) return point_segment2(p.a, q.a, q.b);
  if (qb) return point_segment2(q.a, p.a, p.b);
  return segment_segment2(p.a, p.b, q.a, q.b);
}

bool overlap(const Solid& p, const Solid& q) {
  Rat rr = p.r + q.r;
  return dist2(p, q) < rr * rr;
}

bool touch(const Solid& p, const Solid& q) {
  Rat rr = p.r + q.r;
  return dist2(p, q) <= rr * rr;
}

// Rationals by height |p| + q, then q, then p.
class RationalSeq {
 public:
  const Rat& at(size_t i) {
    while (v_.size() <= i) grow();
    return v_[i];
  }

 private:
  void grow() {
    ++h_;
    for (long q = 1; q <= h_; ++q) {
      long p = h_ - q;
      if (p == 0) {
        if (q == 1) v_.emplace_back(0);
        continue;
      }
      if (std::gcd(p, q) != 1) continue;
      v_.emplace_back(-p, q);
      v_.emplace_back(p, q);
    }
  }
  std::vector<Rat> v_;
  long h_ = 0;
};

// Index triples (i, j, l) by i + j + l, then lexicographically.
class TripleSeq {
 public:
  Vec3 next() {
    Vec3 p{seq_.at(i_), seq_.at(j_), seq_.at(sum_ - i_ - j_)};
    if (j_ < sum_ - i_) {
      ++j_;
    } else if (i_ < sum_) {
      ++i_;
      j_ = 0;
    } else {
      ++sum_;
      i_ = j_ = 0;
    }
    return p;
  }

 private:
  RationalSeq seq_;
  size_t sum_ = 0, i_ = 0, j_ = 0;
};

// mpq_class(a, b) does not reduce
Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

Vec3 v3(const Rat& x, const Rat& y, const Rat& z) { return {x, y, z}; }

}  // namespace

Scene embed(const QsInterpretation& m, int stage) {
  if (stage < 1) fail("UsageError", "stage must be at least 1");
  const QuasiSaw& sp = *m.space;
  int z0 = universal_point(sp);
  if (z0 < 0) fail("NotNormalized", "no depth-1 point sees every depth-0 point; run normalize_z0 first");

  Scene s;
  s.stage = stage;
  const size_t n = sp.n0();
  // initial unit balls near a rational circle of radius L, each at its own height and nudged
  // by prime denominators, so rods from the (mostly axis-aligned) enumerated points are skew
  // rather than exactly coplanar
  const Rat L = Rat(4 * static_cast<long>(n) + 4);
  for (size_t i = 0; i < n; ++i) {
    long k = static_cast<long>(i) + 1;
    Rat t = frac(k - 1, static_cast<long>(n));
    Rat den = 1 + t * t;
    s.balls.push_back({sp.w0()[i], v3(L * (1 - t * t) / den + frac(k, 89), 2 * L * t / den + frac(k * k, 83), frac(7 * (2 * k - 1), 5) + frac(k * k * k, 97)), Rat(1), 0, ""});
  }
  // cells stacked on the z-axis, radius 2, 5 apart; z0 is what is left over
  int j = 0;
  for (size_t z = 0; z < sp.n1(); ++z) {
    if (static_cast<int>(z) == z0) {
      s.hosts.push_back({sp.w1()[z], true, v3(0, 0, 0), Rat(0)});
    } else {
      s.hosts.push_back({sp.w1()[z], false, v3(0, 0, Rat(6 + 5 * j)), Rat(2)});
      ++j;
    }
  }
  if (n == 1) return s;  // the single ball is the whole space

  std::vector<Solid> sol;
  for (auto& b : s.balls) sol.push_back({b.owner, b.center, b.center, b.radius});

  // host index for q, or -1 when q is in no open cell
  auto host_of = [&](const Vec3& q) -> int {
    for (size_t h = 0; h < s.hosts.size(); ++h) {
      auto& c = s.hosts[h];
      if (!c.complement && norm2(sub(q, c.center)) < c.radius * c.radius) return static_cast<int>(h);
    }
    for (auto& c : s.hosts) {
      if (c.complement) continue;
      if (norm2(sub(q, c.center)) <= c.radius * c.radius) return -1;
    }
    for (size_t i = 0; i < n; ++i)
      if (norm2(sub(q, s.balls[i].center)) <= s.balls[i].radius * s.balls[i].radius) return -1;
    return z0;
  };
  auto clear_of_solids = [&](const Vec3& q, const Rat& rho) {
    Solid pt{"", q, q, rho};
    for (auto& o : sol) {
            if (touch(pt, o)) return false;
    }
    return true;
  };
  auto fits_cell = [&](const Vec3& q, const Rat& rho, int h) {
    auto& c = s.hosts[h];
    if (!c.complement) {
      if (rho >= c.radius) return false;
      Rat rest = c.radius - rho;
      return norm2(sub(q, c.center)) < rest * rest;
    }
    for (auto& o : s.hosts) {
      if (o.complement) continue;
      Rat rr = o.radius + rho;
      if (norm2(sub(q, o.center)) <= rr * rr) return false;
    }
    for (size_t i = 0; i < n; ++i) {
      Rat rr = s.balls[i].radius + rho;
      if (norm2(sub(q, s.balls[i].center)) <= rr * rr) return false;
    }
    return true;
  };

  TripleSeq points;
  for (int step = 1; step <= stage; ++step) {
    // first enumerated point that is uncovered and strictly inside a cell; each point is
    // taken at most once
    Vec3 q;
    int h;
    for (;;) {
      q = points.next();
      h = host_of(q);
      if (h >= 0 && clear_of_solids(q, Rat(0))) break;
    }
    Rat rho = frac(1, 2 * step);
    while (!(fits_cell(q, rho, h) && clear_of_solids(q, rho))) rho /= 2;

    const std::string& hid = s.hosts[h].id;
    std::vector<size_t> owners;
    for (size_t x = 0; x < n; ++x)
      if (sp.succ(sp.index1(hid)).test(x)) owners.push_back(x);

    // each owner's ball sits at distance rho/2 (L1) from q on the ray toward its initial
    // ball, so rods fan out from q and only meet near it
    std::vector<Vec3> centers;
    for (size_t x : owners) {
      Vec3 d = sub(s.balls[x].center, q);
      Rat l1 = abs(d[0]) + abs(d[1]) + abs(d[2]);
      centers.push_back(add(q, mul(d, rho / (2 * l1))));
    }
    Rat sigma = rho / 4;
    for (bool ok = false; !ok;) {
      ok = true;
      for (size_t a = 0; a < centers.size() && ok; ++a)
        for (size_t b = a + 1; b < centers.size() && ok; ++b)
          if (norm2(sub(centers[a], centers[b])) <= 4 * sigma * sigma) ok = false;
      if (!ok) sigma /= 2;
      if (sigma < Rat(1, 1L << 60)) fail("RoutingFailure", "two owners share a direction", "step " + std::to_string(step));
    }
    const size_t first_new = s.balls.size();
    for (size_t i = 0; i < owners.size(); ++i)
      s.balls.push_back({sp.w0()[owners[i]], centers[i], sigma, step, hid});
    for (size_t i = first_new; i < s.balls.size(); ++i)
      sol.push_back({s.balls[i].owner, s.balls[i].center, s.balls[i].center, s.balls[i].radius});

    // rods aim at the initial ball's centre. They start thin since they can never shrink
    // later and the enumerated points crowd around the origin; the width halves up to 32 times
    for (size_t i = 0; i < owners.size(); ++i) {
      const Ball& init = s.balls[owners[i]];
      const std::string own = init.owner;
      bool placed = false;
      Rat w = sigma / 256;
      for (int tries = 0; tries < 32 && !placed; ++tries, w /= 2) {
        Solid cand{own, centers[i], init.center, w};
        bool ok = true;
        for (auto& o : sol)
          if (o.owner != own && touch(cand, o)) {
            ok = false;
            break;
          }
        if (ok) {
          s.rods.push_back({own, centers[i], init.center, w, step, hid});
          placed = true;
        }
      }
      if (!placed) fail("RoutingFailure", "no clear rod for '" + own + "'", "step " + std::to_string(step));
      sol.push_back({s.rods.back().owner, s.rods.back().a, s.rods.back().b, s.rods.back().radius});
    }
  }
  return s;
}

std::vector<std::pair<size_t, size_t>> overlapping_pairs(const Scene& s, bool parallel, int jobs) {
  auto sol = solids(s);
  const long N = static_cast<long>(sol.size());
  std::vector<std::pair<size_t, size_t>> out;
  if (!parallel) {
    for (long i = 0; i < N; ++i)
      for (long j = i + 1; j < N; ++j)
        if (sol[i].owner != sol[j].owner && overlap(sol[i], sol[j])) out.push_back({i, j});
    return out;
  }
  int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::pair<size_t, size_t>> mine;
#pragma omp for schedule(dynamic, 8) nowait
    for (long i = 0; i < N; ++i)
      for (long j = i + 1; j < N; ++j)
        if (sol[i].owner != sol[j].owner && overlap(sol[i], sol[j])) mine.push_back({i, j});
#pragma omp critical
    out.insert(out.end(), mine.begin(), mine.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

SceneReport verify_scene(const Scene& s, const QsInterpretation& m, int jobs) {
  SceneReport rep;
  const QuasiSaw& sp = *m.space;
  auto sol = solids(s);
  auto name = [&](size_t i) {
    return i < s.balls.size() ? "ball " + std::to_string(i) : "rod " + std::to_string(i - s.balls.size());
  };
  bool shape = s.stage >= 1;
  if (!shape) rep.problems.push_back("stage must be at least 1");
  for (size_t i = 0; i < sol.size(); ++i) {
    if (sol[i].r <= 0) {
      shape = false;
      rep.problems.push_back(name(i) + ": radius not positive");
    }
    if (sp.index0(sol[i].owner) < 0) {
      shape = false;
      rep.problems.push_back(name(i) + ": owner '" + sol[i].owner + "' is not a depth-0 point");
    }
  }

  // (1)
  auto bad = overlapping_pairs(s, jobs != 1, jobs);
  rep.disjoint = bad.empty();
  for (auto& [i, j] : bad)
    rep.problems.push_back("overlap: " + name(i) + " (" + sol[i].owner + ") and " + name(j) + " (" + sol[j].owner + ")");

  // (2) union-find over touching solids of one owner
  std::vector<size_t> parent(sol.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (size_t i = 0; i < sol.size(); ++i)
    for (size_t j = i + 1; j < sol.size(); ++j)
      if (sol[i].owner == sol[j].owner && touch(sol[i], sol[j])) parent[find(i)] = find(j);
  std::map<std::string, size_t> root;
  rep.connected = true;
  for (size_t i = 0; i < sol.size(); ++i) {
    auto [it, fresh] = root.emplace(sol[i].owner, find(i));
    if (!fresh && find(it->second) != find(i)) {
      rep.connected = false;
      rep.problems.push_back(name(i) + " is cut off from the rest of '" + sol[i].owner + "'");
    }
  }
  // rod ends sit inside the owner's balls
  for (size_t r = 0; r < s.rods.size(); ++r) {
    auto& rod = s.rods[r];
    for (const Vec3* e : {&rod.a, &rod.b}) {
      bool in = false;
      for (auto& b : s.balls)
        if (b.owner == rod.owner && norm2(sub(*e, b.center)) < b.radius * b.radius) in = true;
      if (!in) {
        shape = false;
        rep.problems.push_back("rod " + std::to_string(r) + ": endpoint outside its owner's balls");
      }
    }
  }

  // (3)
  rep.hosts = true;
  std::map<std::string, const HostCell*> cells;
  for (auto& c : s.hosts) cells[c.id] = &c;
  auto succ_ok = [&](const std::string& host, const std::string& owner, const std::string& what) {
    int z = sp.index1(host), x = sp.index0(owner);
    if (z < 0 || !cells.count(host)) {
      rep.hosts = false;
      rep.problems.push_back(what + ": unknown host '" + host + "'");
      return false;
    }
    if (x < 0 || !sp.succ(z).test(x)) {
      rep.hosts = false;
      rep.problems.push_back(what + ": " + host + " R " + owner + " does not hold");
      return false;
    }
    return true;
  };
  std::map<std::string, int> initial;
  for (size_t i = 0; i < s.balls.size(); ++i) {
    auto& b = s.balls[i];
    std::string what = "ball " + std::to_string(i);
    if (b.step == 0) {
      ++initial[b.owner];
      continue;
    }
    if (!succ_ok(b.host, b.owner, what)) continue;
    const HostCell& c = *cells[b.host];
    bool inside = true;
    if (!c.complement) {
      Rat rest = c.radius - b.radius;
      inside = rest > 0 && norm2(sub(b.center, c.center)) < rest * rest;
    } else {
      for (auto& o : s.hosts) {
        Rat rr = o.radius + b.radius;
        if (!o.complement && norm2(sub(b.center, o.center)) <= rr * rr) inside = false;
      }
      for (auto& o : s.balls) {
        Rat rr = o.radius + b.radius;
        if (o.step == 0 && norm2(sub(b.center, o.center)) <= rr * rr) inside = false;
      }
    }
    if (!inside) {
      rep.hosts = false;
      rep.problems.push_back(what + ": not strictly inside cell " + b.host);
    }
  }
  for (size_t r = 0; r < s.rods.size(); ++r) succ_ok(s.rods[r].host, s.rods[r].owner, "rod " + std::to_string(r));
  for (auto& x : sp.w0())
    if (initial[x] != 1) {
      rep.hosts = false;
      rep.problems.push_back("'" + x + "' needs exactly one initial ball");
    }

  rep.valid = shape && rep.disjoint && rep.connected && rep.hosts;
  return rep;
}

}  // namespace topoconn
