#include "topoconn/quasisaw.hpp"

#include <numeric>
#include <sstream>

#include "topoconn/error.hpp"

namespace topoconn {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

QuasiSaw::QuasiSaw(std::vector<std::string> w0, std::vector<Depth1> w1) : w0_(std::move(w0)) {
  for (size_t i = 0; i < w0_.size(); ++i) {
    if (!idx0_.emplace(w0_[i], static_cast<int>(i)).second)
      fail("InvalidQuasiSaw", "duplicate depth-0 point '" + w0_[i] + "'");
  }
  for (size_t k = 0; k < w1.size(); ++k) {
    const auto& z = w1[k];
    if (idx0_.count(z.id) || !idx1_.emplace(z.id, static_cast<int>(k)).second)
      fail("InvalidQuasiSaw", "duplicate point '" + z.id + "'");
    if (z.succ.empty()) fail("InvalidQuasiSaw", "depth-1 point '" + z.id + "' has no successors");
    Bits b(w0_.size());
    for (const auto& x : z.succ) {
      auto it = idx0_.find(x);
      if (it == idx0_.end()) fail("UnknownPoint", "successor '" + x + "' of '" + z.id + "' is not a depth-0 point");
      b.set(it->second);
    }
    w1_.push_back(z.id);
    succ_.push_back(std::move(b));
  }
}

int QuasiSaw::index0(const std::string& id) const {
  auto it = idx0_.find(id);
  return it == idx0_.end() ? -1 : it->second;
}

int QuasiSaw::index1(const std::string& id) const {
  auto it = idx1_.find(id);
  return it == idx1_.end() ? -1 : it->second;
}

bool QuasiSaw::two_quasi_saw() const {
  for (const auto& s : succ_)
    if (s.count() > 2) return false;
  return true;
}

bool QuasiSaw::connected() const {
  if (w0_.empty()) return true;
  UnionFind uf(w0_.size());
  for (const auto& s : succ_) {
    size_t first = s.find_first();
    for (size_t x = s.find_next(first); x != Bits::npos; x = s.find_next(x)) uf.unite(first, x);
  }
  int root = uf.find(0);
  for (size_t i = 1; i < w0_.size(); ++i)
    if (uf.find(i) != root) return false;
  return true;
}

QsRegion qs_zero(const SpacePtr& s) { return {s, Bits(s->n0())}; }

QsRegion qs_one(const SpacePtr& s) {
  Bits b(s->n0());
  b.set();
  return {s, b};
}

QsRegion qs_region(const SpacePtr& s, const std::vector<std::string>& core_ids) {
  Bits b(s->n0());
  for (const auto& id : core_ids) {
    int i = s->index0(id);
    if (i < 0) fail("UnknownPoint", "'" + id + "' is not a depth-0 point");
    b.set(i);
  }
  return {s, b};
}

static void same_space(const QsRegion& a, const QsRegion& b) {
  if (a.space != b.space) fail("SpaceMismatch", "regions belong to different spaces");
}

QsRegion algebra(BoolOp op, const std::vector<QsRegion>& args) {
  if (args.empty()) fail("ArityError", "algebra needs at least one argument");
  for (const auto& r : args) same_space(args[0], r);
  if (op == BoolOp::Complement) {
    if (args.size() != 1) fail("ArityError", "complement takes one argument");
    return {args[0].space, ~args[0].core};
  }
  Bits acc = args[0].core;
  for (size_t i = 1; i < args.size(); ++i) {
    if (op == BoolOp::Sum) acc |= args[i].core;
    else acc &= args[i].core;
  }
  return {args[0].space, acc};
}

PointSet points(const QsRegion& r) {
  const QuasiSaw& s = *r.space;
  PointSet p{r.core, Bits(s.n1())};
  for (size_t z = 0; z < s.n1(); ++z)
    if (s.succ(z).intersects(r.core)) p.w1.set(z);
  return p;
}

PointSet make_point_set(const QuasiSaw& s, const std::vector<std::string>& ids) {
  PointSet p{Bits(s.n0()), Bits(s.n1())};
  for (const auto& id : ids) {
    int i = s.index0(id);
    if (i >= 0) {
      p.w0.set(i);
      continue;
    }
    int k = s.index1(id);
    if (k < 0) fail("UnknownPoint", "'" + id + "' is not a point of the space");
    p.w1.set(k);
  }
  return p;
}

std::vector<std::string> point_ids(const QuasiSaw& s, const PointSet& p) {
  std::vector<std::string> out;
  for (size_t i = 0; i < s.n0(); ++i)
    if (p.w0.test(i)) out.push_back(s.w0()[i]);
  for (size_t k = 0; k < s.n1(); ++k)
    if (p.w1.test(k)) out.push_back(s.w1()[k]);
  return out;
}

ClosureInteriorBoundary closure_interior_boundary(const QuasiSaw& s, const std::vector<std::string>& ids) {
  PointSet p = make_point_set(s, ids);
  PointSet cl = p, in{p.w0, Bits(s.n1())};
  for (size_t z = 0; z < s.n1(); ++z) {
    if (s.succ(z).intersects(p.w0)) cl.w1.set(z);
    if (p.w1.test(z) && s.succ(z).is_subset_of(p.w0)) in.w1.set(z);
  }
  PointSet bd{cl.w0 - in.w0, cl.w1 - in.w1};
  return {point_ids(s, cl), point_ids(s, in), point_ids(s, bd)};
}

bool contact(const QsRegion& a, const QsRegion& b) {
  same_space(a, b);
  if (a.core.intersects(b.core)) return true;
  const QuasiSaw& s = *a.space;
  for (size_t z = 0; z < s.n1(); ++z)
    if (s.succ(z).intersects(a.core) && s.succ(z).intersects(b.core)) return true;
  return false;
}

// Components of the core, linking the successors of every admitted depth-1 point.
static bool core_connected(const QsRegion& a, bool interior) {
  const QuasiSaw& s = *a.space;
  size_t first = a.core.find_first();
  if (first == Bits::npos) return true;
  UnionFind uf(s.n0());
  for (size_t z = 0; z < s.n1(); ++z) {
    const Bits& sc = s.succ(z);
    if (interior ? !sc.is_subset_of(a.core) : !sc.intersects(a.core)) continue;
    Bits m = sc & a.core;
    size_t f = m.find_first();
    for (size_t x = m.find_next(f); x != Bits::npos; x = m.find_next(x)) uf.unite(f, x);
  }
  int root = uf.find(first);
  for (size_t x = a.core.find_next(first); x != Bits::npos; x = a.core.find_next(x))
    if (uf.find(x) != root) return false;
  return true;
}

bool connected(const QsRegion& a) { return core_connected(a, false); }
bool interior_connected(const QsRegion& a) { return core_connected(a, true); }

QsRegion eval_term(const QsInterpretation& m, const Term& t) {
  switch (t.kind) {
    case TermKind::Var: {
      auto it = m.valuation.find(t.name);
      if (it == m.valuation.end()) fail("UnboundVariable", "variable '" + t.name + "' has no value", t.name);
      if (it->second.size() != m.space->n0())
        fail("InvalidModel", "value of '" + t.name + "' has the wrong size");
      return {m.space, it->second};
    }
    case TermKind::Zero: return qs_zero(m.space);
    case TermKind::One: return qs_one(m.space);
    case TermKind::Sum: return algebra(BoolOp::Sum, {eval_term(m, *t.left), eval_term(m, *t.right)});
    case TermKind::Product: return algebra(BoolOp::Product, {eval_term(m, *t.left), eval_term(m, *t.right)});
    case TermKind::Complement: return algebra(BoolOp::Complement, {eval_term(m, *t.left)});
  }
  return qs_zero(m.space);
}

bool eval(const QsInterpretation& m, const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Eq: return eval_term(m, *f.a).core == eval_term(m, *f.b).core;
    case FormulaKind::Contact: return contact(eval_term(m, *f.a), eval_term(m, *f.b));
    case FormulaKind::Conn: return connected(eval_term(m, *f.a));
    case FormulaKind::IntConn: return interior_connected(eval_term(m, *f.a));
    case FormulaKind::And: return eval(m, *f.f) && eval(m, *f.g);
    case FormulaKind::Not: return !eval(m, *f.f);
  }
  return false;
}

std::vector<std::pair<FormulaPtr, bool>> conjunct_report(const QsInterpretation& m, const FormulaPtr& f) {
  std::vector<std::pair<FormulaPtr, bool>> rows;
  for (const auto& c : conjuncts(f)) rows.emplace_back(c, eval(m, *c));
  return rows;
}

std::string to_dot(const QuasiSaw& s) {
  std::ostringstream os;
  os << "graph quasisaw {\n";
  for (const auto& x : s.w0()) os << "  \"" << x << "\" [shape=circle];\n";
  for (size_t z = 0; z < s.n1(); ++z) {
    os << "  \"" << s.w1()[z] << "\" [shape=point];\n";
    for (size_t x = 0; x < s.n0(); ++x)
      if (s.succ(z).test(x)) os << "  \"" << s.w1()[z] << "\" -- \"" << s.w0()[x] << "\";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace topoconn
