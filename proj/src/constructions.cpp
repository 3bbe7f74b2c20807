#include "topoconn/constructions.hpp"

#include <map>

#include "topoconn/error.hpp"

namespace topoconn {

namespace {

struct FamilyInfo {
  FamilyKind kind;
  const char* name;
  int min_n;  // 0 when the family takes no parameter
};

const FamilyInfo kFamilies[] = {
    {FamilyKind::PhiK, "phi_k", 1},
    {FamilyKind::Wiggly, "wiggly", 0},
    {FamilyKind::PhiInf, "phi_inf", 0},
    {FamilyKind::PhiInfInterior, "phi_inf_interior", 0},
    {FamilyKind::PsiInf, "psi_inf", 0},
    {FamilyKind::PhiNotC, "phi_not_c", 0},
    {FamilyKind::Stack, "stack", 3},
    {FamilyKind::StackW, "stack_w", 3},
    {FamilyKind::Frame, "frame", 3},
    {FamilyKind::TildeStack, "tilde_stack", 2},
    {FamilyKind::TildeFrame, "tilde_frame", 3},
    {FamilyKind::EtaStar, "eta_star", 0},
    {FamilyKind::Eta, "eta", 0},
    {FamilyKind::PhiStarInf, "phi_star_inf", 0},
};

const FamilyInfo& info(FamilyKind k) {
  for (auto& f : kFamilies)
    if (f.kind == k) return f;
  fail("UnknownFamily", "unknown family");
}

TermPtr v(const std::string& name) { return var(name); }
TermPtr v(const std::string& base, int i) { return var(base + std::to_string(i)); }

void append(std::vector<FormulaPtr>& out, const std::vector<FormulaPtr>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::vector<Triple> triples(const std::string& base, int from, int to) {
  std::vector<Triple> out;
  for (int i = from; i <= to; ++i) out.push_back(triple(ThreeRegionVar::named(base + std::to_string(i))));
  return out;
}

std::vector<ThreeRegionVar> three_vars(const std::string& base, int from, int to) {
  std::vector<ThreeRegionVar> out;
  for (int i = from; i <= to; ++i) out.push_back(ThreeRegionVar::named(base + std::to_string(i)));
  return out;
}

FormulaPtr phi_k(int k) {
  std::vector<FormulaPtr> out;
  for (int i = 1; i <= k; ++i) {
    out.push_back(iconn(v("r", i)));
    out.push_back(neq(v("r", i), zero()));
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      out.push_back(iconn(sum(v("r", i), v("r", j))));
      out.push_back(eq(product(v("r", i), v("r", j)), zero()));
    }
  return conj(out);
}

FormulaPtr wiggly() {
  auto r1 = v("r1"), r2 = v("r2"), r3 = v("r3");
  return conj({iconn(r1), iconn(r2), iconn(r3), iconn(sum(sum(r1, r2), r3)), lnot(iconn(sum(r1, r2))),
               lnot(iconn(sum(r1, r3)))});
}

FormulaPtr phi_inf() {
  std::vector<FormulaPtr> out;
  auto d = [](int i) { return v("d", i % 4); };
  auto a = [](int i) { return v("a", i % 4); };
  auto t = v("t");
  out.push_back(eq(sum_of({d(0), d(1), d(2), d(3)}), one()));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out.push_back(eq(product(d(i), d(j)), zero()));
  for (int i = 0; i < 4; ++i) {
    out.push_back(neq(a(i), zero()));
    out.push_back(leq(a(i), d(i)));
  }
  out.push_back(neq(t, zero()));
  for (int i = 0; i < 4; ++i) out.push_back(conn(sum_of({a(i), d(i + 1), t})));
  for (int i = 0; i < 4; ++i) {
    out.push_back(disjoint(a(i), product(d(i + 1), complement(a(i + 1)))));
    out.push_back(disjoint(a(i), t));
  }
  for (int i = 0; i < 4; ++i) out.push_back(disjoint(d(i), d(i + 2)));
  return conj(out);
}

FormulaPtr eta_family() {
  std::vector<FormulaPtr> out;
  out.push_back(eq(v("r"), sum(v("r1"), v("r2"))));
  out.push_back(eq(v("s"), sum(v("s1"), v("s2"))));
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      std::string u = "u" + std::to_string(i) + std::to_string(j) + "_";
      std::vector<TermPtr> vs;
      for (int k = 0; k < 6; ++k) vs.push_back(v(u + "t", k));
      vs.push_back(v(u + "m1"));
      vs.push_back(v(u + "m2"));
      append(out, eta_star(v("r", i), v("s", j), vs));
    }
  return conj(out);
}

FormulaPtr phi_star_inf() {
  // i ranges over {0, 1}; the wrap-around index is taken mod 2
  auto ab = [](char base, int i, int j) { return v(std::string(1, base) + std::to_string(i) + "_" + std::to_string(j)); };
  std::vector<FormulaPtr> out;
  append(out, tilde_frame({v("s"), v("s'"), v("b"), v("b'"), v("a"), v("a'")}));
  for (int i = 0; i < 2; ++i) append(out, tilde_stack({v("s"), ab('b', i, 1), ab('b', i, 2), ab('b', i, 3), v("b")}));
  for (int i = 0; i < 2; ++i)
    append(out, tilde_stack({ab('b', (i + 1) % 2, 2), ab('a', i, 1), ab('a', i, 2), ab('a', i, 3), v("a")}));
  for (int i = 0; i < 2; ++i)
    append(out, tilde_stack({ab('a', (i + 1) % 2, 2), ab('b', i, 1), ab('b', i, 2), ab('b', i, 3), v("b")}));
  std::vector<TermPtr> regions = {v("s"), v("s'"), v("a"), v("a'"), v("b"), v("b'")};
  for (char base : {'a', 'b'})
    for (int i = 0; i < 2; ++i)
      for (int j = 1; j <= 3; ++j) regions.push_back(ab(base, i, j));
  for (size_t i = 0; i < regions.size(); ++i)
    for (size_t j = i + 1; j < regions.size(); ++j) out.push_back(eq(product(regions[i], regions[j]), zero()));
  return conj(out);
}

// Hands out fresh_<schema>_<n>, skipping names already present.
class Fresh {
 public:
  explicit Fresh(std::set<std::string> taken) : taken_(std::move(taken)) {}
  TermPtr operator()(const std::string& schema) {
    for (;;) {
      std::string name = "fresh_" + schema + "_" + std::to_string(++count_[schema]);
      if (taken_.insert(name).second) return var(name);
    }
  }

 private:
  std::set<std::string> taken_;
  std::map<std::string, int> count_;
};

std::vector<FormulaPtr> eliminate_one(const TermPtr& x, const TermPtr& y, ContactTarget target, Fresh& fresh) {
  if (target == ContactTarget::Bci) {
    std::vector<TermPtr> vs;
    for (int i = 0; i < 8; ++i) vs.push_back(fresh("eta"));
    return eta_star(x, y, vs);
  }
  // A complement side is split into two parts before the schema is applied,
  // since the complement of -r need not be connected.
  TermPtr r = x, s = y;
  if (r->kind == TermKind::Complement && s->kind != TermKind::Complement) std::swap(r, s);
  if (s->kind == TermKind::Complement) {
    auto s1 = fresh("split"), s2 = fresh("split");
    auto r1 = fresh("notc"), r2 = fresh("notc");
    std::vector<FormulaPtr> out{eq(s, sum(s1, s2))};
    append(out, phi_not_c(r, s1, r1, nullptr));
    append(out, phi_not_c(r, s2, r2, nullptr));
    return out;
  }
  auto r1 = fresh("notc"), s1 = fresh("notc");
  return phi_not_c(r, s, r1, s1);
}

FormulaPtr eliminate(const FormulaPtr& f, ContactTarget target, Fresh& fresh) {
  switch (f->kind) {
    case FormulaKind::And: {
      auto l = eliminate(f->f, target, fresh);  // left first, for stable fresh numbering
      return land(l, eliminate(f->g, target, fresh));
    }
    case FormulaKind::Not:
      if (f->f->kind == FormulaKind::Contact) return conj(eliminate_one(f->f->a, f->f->b, target, fresh));
      return lnot(eliminate(f->f, target, fresh));
    case FormulaKind::Contact:
      // negative only through deeper nesting; C is weakened to not-schema
      return lnot(conj(eliminate_one(f->a, f->b, target, fresh)));
    default:
      return f;
  }
}

}  // namespace

std::string family_name(FamilyKind k) { return info(k).name; }

FamilyKind parse_family(const std::string& s) {
  for (auto& f : kFamilies)
    if (s == f.name) return f.kind;
  fail("UnknownFamily", "unknown family '" + s + "'");
}

bool family_indexed(FamilyKind k) { return info(k).min_n > 0; }

ThreeRegionVar ThreeRegionVar::named(const std::string& base) { return {base, base + "_m", base + "_i"}; }

Triple triple(const ThreeRegionVar& v) { return {var(v.outer), var(v.middle), var(v.inner)}; }

Triple scale(const TermPtr& w, const Triple& a) {
  return {product(w, a.outer), product(w, a.middle), product(w, a.inner)};
}

std::vector<FormulaPtr> phi_not_c(const TermPtr& r, const TermPtr& s, const TermPtr& r2, const TermPtr& s2) {
  auto x = sum(r, r2), y = s2 ? sum(s, s2) : s;
  return {conn(x), conn(y), lnot(conn(sum(x, y)))};
}

std::vector<FormulaPtr> stack(const std::vector<Triple>& a) {
  if (a.size() < 3) fail("ArityError", "stack needs at least 3 arguments");
  std::vector<FormulaPtr> out;
  size_t k = a.size();
  for (size_t i = 0; i < k; ++i) {
    std::vector<TermPtr> parts{a[i].middle};
    for (size_t j = i + 1; j < k; ++j) parts.push_back(a[j].inner);
    out.push_back(conn(sum_of(parts)));
  }
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 2; j < k; ++j) out.push_back(disjoint(a[i].outer, a[j].outer));
  return out;
}

std::vector<FormulaPtr> stack_w(const TermPtr& w, const std::vector<Triple>& a) {
  if (a.empty()) fail("ArityError", "stack_w needs at least 3 arguments");
  std::vector<FormulaPtr> out{disjoint(product(w, a[0].middle), product(complement(w), a[0].middle))};
  std::vector<Triple> rest = a;
  rest[0] = scale(complement(w), a[0]);
  append(out, stack(rest));
  return out;
}

std::vector<FormulaPtr> frame(const std::vector<Triple>& a) {
  if (a.size() < 4) fail("ArityError", "frame needs n >= 3");
  size_t n = a.size() - 1;
  std::vector<FormulaPtr> out = stack(std::vector<Triple>(a.begin(), a.end() - 1));
  std::vector<TermPtr> mid;
  for (size_t i = 1; i + 2 <= n; ++i) mid.push_back(a[i].outer);
  out.push_back(disjoint(a[n].outer, sum_of(mid)));
  out.push_back(conn(a[n].middle));
  out.push_back(neq(product(a[0].middle, a[n].middle), zero()));
  out.push_back(neq(product(a[n - 1].inner, a[n].middle), zero()));
  return out;
}

std::vector<FormulaPtr> tilde_stack(const std::vector<TermPtr>& a) {
  if (a.size() < 2) fail("ArityError", "tilde_stack needs at least 2 arguments");
  std::vector<FormulaPtr> out;
  size_t n = a.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    out.push_back(iconn(sum_of(std::vector<TermPtr>(a.begin() + i, a.end()))));
    out.push_back(eq(product(a[i], a[i + 1]), zero()));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 2; j < n; ++j) out.push_back(disjoint(a[i], a[j]));
  return out;
}

std::vector<FormulaPtr> tilde_frame(const std::vector<TermPtr>& a) {
  if (a.size() < 3) fail("ArityError", "tilde_frame needs at least 3 arguments");
  std::vector<FormulaPtr> out;
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    out.push_back(iconn(a[i]));
    out.push_back(iconn(sum(a[i], a[(i + 1) % n])));
    out.push_back(neq(a[i], zero()));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 2; j < n; ++j) out.push_back(eq(product(a[i], a[j]), zero()));
  return out;
}

std::vector<FormulaPtr> eta_star(const TermPtr& r, const TermPtr& s, const std::vector<TermPtr>& v) {
  if (v.size() != 8) fail("ArityError", "eta_star takes t0..t5, m1, m2");
  std::vector<TermPtr> t(v.begin(), v.begin() + 6);
  auto m1 = v[6], m2 = v[7];
  std::vector<FormulaPtr> out = tilde_frame(t);
  out.push_back(leq(r, m1));
  out.push_back(leq(s, m2));
  out.push_back(eq(product(sum_of(t), sum(m1, m2)), zero()));
  for (int i : {1, 3, 5})
    for (auto& m : {m1, m2}) out.push_back(iconn(sum(t[i], m)));
  return out;
}

FormulaPtr desugar_three_regions(const FormulaPtr& f, const std::vector<ThreeRegionVar>& vars) {
  if (vars.empty()) return f;
  std::set<std::string> seen;
  for (auto& tv : vars)
    for (auto& name : {tv.outer, tv.middle, tv.inner})
      if (!seen.insert(name).second) fail("NameCollision", "3-region component name '" + name + "' is used twice");
  std::vector<FormulaPtr> out = conjuncts(f);
  for (auto& tv : vars) {
    auto t = triple(tv);
    out.push_back(neq(t.inner, zero()));
    out.push_back(within(t.inner, t.middle));
    out.push_back(within(t.middle, t.outer));
  }
  return conj(out);
}

FormulaPtr transform_c_to_interior(const FormulaPtr& f) {
  for (auto& o : polarity(*f, Pred::Conn))
    if (o.sign < 0) fail("NegativeOccurrence", "c occurs negatively", path_string(o.path));
  return map_atoms(f, [](const FormulaPtr& a, int) { return a->kind == FormulaKind::Conn ? iconn(a->a) : a; });
}

FormulaPtr eliminate_contacts(const FormulaPtr& f, ContactTarget target) {
  for (auto& o : polarity(*f, Pred::Contact))
    if (o.sign > 0) fail("PositiveContact", "C occurs positively", path_string(o.path));
  Fresh fresh(variables(*f));
  return eliminate(f, target, fresh);
}

FormulaPtr generate(const FamilyId& id) {
  const FamilyInfo& fi = info(id.kind);
  if (fi.min_n > 0 && id.n < fi.min_n)
    fail("ArityError", std::string(fi.name) + " needs n >= " + std::to_string(fi.min_n));
  int n = id.n;
  switch (id.kind) {
    case FamilyKind::PhiK:
      return phi_k(n);
    case FamilyKind::Wiggly:
      return wiggly();
    case FamilyKind::PhiInf:
      return phi_inf();
    case FamilyKind::PhiInfInterior:
      return transform_c_to_interior(phi_inf());
    case FamilyKind::PsiInf:
      return eliminate_contacts(phi_inf(), ContactTarget::Bc);
    case FamilyKind::PhiNotC:
      return conj(phi_not_c(v("r"), v("s"), v("r'"), v("s'")));
    case FamilyKind::Stack:
      return desugar_three_regions(conj(stack(triples("a", 1, n))), three_vars("a", 1, n));
    case FamilyKind::StackW:
      return desugar_three_regions(conj(stack_w(v("w"), triples("a", 1, n))), three_vars("a", 1, n));
    case FamilyKind::Frame:
      return desugar_three_regions(conj(frame(triples("a", 0, n))), three_vars("a", 0, n));
    case FamilyKind::TildeStack:
    case FamilyKind::TildeFrame: {
      std::vector<TermPtr> a;
      int first = id.kind == FamilyKind::TildeStack ? 1 : 0;
      for (int i = first; i < first + n; ++i) a.push_back(v("a", i));
      return conj(id.kind == FamilyKind::TildeStack ? tilde_stack(a) : tilde_frame(a));
    }
    case FamilyKind::EtaStar: {
      std::vector<TermPtr> vs;
      for (int k = 0; k < 6; ++k) vs.push_back(v("t", k));
      vs.push_back(v("m1"));
      vs.push_back(v("m2"));
      return conj(eta_star(v("r"), v("s"), vs));
    }
    case FamilyKind::Eta:
      return eta_family();
    case FamilyKind::PhiStarInf:
      return phi_star_inf();
  }
  fail("UnknownFamily", "unknown family");
}

}  // namespace topoconn
