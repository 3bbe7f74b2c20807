#include "topoconn/pcp.hpp"

#include "topoconn/constructions.hpp"
#include "topoconn/error.hpp"

namespace topoconn {

namespace {

// Region naming. Primes are part of the identifier; 3-regions add _m and _i.
std::string num(int i) { return std::to_string(i); }
std::string S(int i) { return "s" + num(i); }
std::string Sp(int i) { return "s" + num(i) + "'"; }
std::string D(int i) { return "d" + num(i); }
std::string A(int i, int j, bool primed = false) { return "a" + num(i) + "_" + num(j) + (primed ? "'" : ""); }
std::string B(int i, int j, bool primed = false) { return "b" + num(i) + "_" + num(j) + (primed ? "'" : ""); }
std::string T(int j, int k, bool primed = false) { return "t" + num(j) + "_" + num(k) + (primed ? "'" : ""); }
std::string G(int k, bool primed = false) { return "g" + num(k) + (primed ? "'" : ""); }
std::string DT(int j) { return "dt" + num(j); }

int mod3(int i) { return ((i % 3) + 3) % 3; }

TermPtr v(const std::string& n) { return var(n); }

Triple tri(const std::string& n) { return triple(ThreeRegionVar::named(n)); }

TermPtr sum_names(const std::vector<std::string>& ns) {
  std::vector<TermPtr> ts;
  for (auto& n : ns) ts.push_back(v(n));
  return sum_of(ts);
}

// The frame cycle s0 .. s9, s8' .. s1'.
std::vector<std::string> frame_cycle() {
  std::vector<std::string> out;
  for (int i = 0; i <= 9; ++i) out.push_back(S(i));
  for (int i = 8; i >= 1; --i) out.push_back(Sp(i));
  return out;
}

// Components of the composite regions a_i and b_i (primed: a'_i and b'_i).
std::vector<std::string> a_parts(int i, bool p) {
  std::vector<std::string> out{A(mod3(i - 1), 3, p)};
  for (int j = 1; j <= 4; ++j) out.push_back(B(i, j, p));
  for (int j = 1; j <= 4; ++j) out.push_back(A(i, j, p));
  return out;
}
std::vector<std::string> b_parts(int i, bool p) {
  std::vector<std::string> out;
  for (int j = 2; j <= 5; ++j) out.push_back(B(i, j, p));
  return out;
}

// Every depicted 3-region, in emission order.
std::vector<std::string> depicted() {
  std::vector<std::string> out = frame_cycle();
  for (int i = 0; i <= 6; ++i) out.push_back(D(i));
  out.push_back("a");
  out.push_back("b");
  for (bool p : {false, true})
    for (int i = 0; i < 3; ++i)
      for (int j = 1; j <= 6; ++j) {
        out.push_back(A(i, j, p));
        out.push_back(B(i, j, p));
      }
  return out;
}

AdjacencyTable build_table() {
  AdjacencyTable t;
  t.version = "pcp-adjacency/1";
  auto allow = [&](const std::string& x, const std::string& y) {
    t.allowed_contacts.insert(x < y ? std::make_pair(x, y) : std::make_pair(y, x));
  };
  auto cyc = frame_cycle();
  for (size_t i = 0; i < cyc.size(); ++i) allow(cyc[i], cyc[(i + 1) % cyc.size()]);
  for (int i = 0; i < 6; ++i) allow(D(i), D(i + 1));
  // s0 sits inside d0 and s9 inside d6, so those touch the neighbours too
  for (auto& s : {S(0), S(1), Sp(1)}) allow(D(0), s);
  for (auto& s : {S(9), S(8), Sp(8)}) allow(D(6), s);
  // containments of stage 2 and 3
  for (int i : {5, 6, 7}) allow("a", S(i));
  for (int i : {5, 6, 7}) allow("b", Sp(i));
  for (int i : {2, 3, 4}) allow(A(0, 3), S(i));
  for (int i : {2, 3, 4}) allow(A(0, 3, true), Sp(i));
  for (bool p : {false, true}) {
    std::string top = p ? "a" : "b", bottom = p ? "b" : "a";
    for (int i = 0; i < 3; ++i) {
      allow(A(mod3(i - 1), 3, p), B(i, 1, p));
      for (int j = 1; j < 6; ++j) allow(B(i, j, p), B(i, j + 1, p));
      allow(B(i, 6, p), top);
      allow(B(i, 3, p), A(i, 1, p));
      for (int j = 1; j < 6; ++j) allow(A(i, j, p), A(i, j + 1, p));
      allow(A(i, 6, p), bottom);
      // eta arcs cross the central chord
      for (int k : {2, 3, 4}) allow(B(i, 5, p), D(k));
    }
  }
  // zeta_i meets eta'_i and eta_i meets zeta'_i; eta_i and eta'_i may meet
  for (int i = 0; i < 3; ++i) {
    for (auto& x : b_parts(i, false))
      for (auto& y : a_parts(i, true)) allow(x, y);
    for (auto& x : a_parts(i, false))
      for (auto& y : b_parts(i, true)) allow(x, y);
    for (auto& x : b_parts(i, false))
      for (auto& y : b_parts(i, true)) allow(x, y);
  }
  return t;
}

struct Emitter {
  std::vector<FormulaPtr> out;
  CompileReport rep;
  std::map<std::pair<int, std::string>, size_t> index;

  void add(int stage, const std::string& family, const std::vector<FormulaPtr>& fs, bool transcription = false,
           const std::string& note = {}) {
    auto key = std::make_pair(stage, family);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rep.families.size()).first;
      rep.families.push_back({stage, family, 0, transcription, note});
    }
    rep.families[it->second].conjuncts += fs.size();
    out.insert(out.end(), fs.begin(), fs.end());
  }
  void add(int stage, const std::string& family, const FormulaPtr& f, bool transcription = false,
           const std::string& note = {}) {
    add(stage, family, std::vector<FormulaPtr>{f}, transcription, note);
  }
};

struct Letter {
  int j, k;  // tile index (1-based), position (1-based)
};

}  // namespace

bool AdjacencyTable::allowed(const std::string& x, const std::string& y) const {
  if (x == y) return true;
  return allowed_contacts.count(x < y ? std::make_pair(x, y) : std::make_pair(y, x)) > 0;
}

const AdjacencyTable& adjacency_table() {
  static const AdjacencyTable t = build_table();
  return t;
}

void validate(const PcpInstance& inst) {
  if (inst.tiles.empty()) fail("InvalidInstance", "an instance needs at least one tile");
  std::set<std::string> seen;
  for (auto& t : inst.tiles) {
    if (!seen.insert(t).second) fail("InvalidInstance", "duplicate tile '" + t + "'");
    for (auto* side : {&inst.lower, &inst.upper}) {
      auto it = side->find(t);
      if (it == side->end()) fail("InvalidInstance", "tile '" + t + "' has no word");
      if (it->second.empty()) fail("InvalidInstance", "tile '" + t + "' has an empty word");
      for (char ch : it->second)
        if (ch != '0' && ch != '1') fail("InvalidInstance", "tile '" + t + "' uses a letter outside {0,1}");
    }
  }
  for (auto* side : {&inst.lower, &inst.upper})
    for (auto& [t, w] : *side)
      if (!seen.count(t)) fail("InvalidInstance", "word for unknown tile '" + t + "'");
}

Compiled compile(const PcpInstance& inst) {
  validate(inst);
  Emitter e;
  const int ell = static_cast<int>(inst.tiles.size());
  std::vector<std::string> w1, w2;  // sigma_j, sigma'_j, j = 1..ell at index j-1
  for (auto& t : inst.tiles) {
    w1.push_back(inst.lower.at(t));
    w2.push_back(inst.upper.at(t));
  }

  // Stage 1: scaffolding
  {
    std::vector<Triple> fr;
    for (auto& n : frame_cycle()) fr.push_back(tri(n));
    e.add(1, "frame", frame(fr));
    e.add(1, "cord endpoints", {leq(v(S(0)), tri(D(0)).middle), leq(v(S(9)), tri(D(6)).inner)}, true,
          "endpoint regions read as d0 and d6");
    std::vector<Triple> ds;
    for (int i = 0; i <= 6; ++i) ds.push_back(tri(D(i)));
    e.add(1, "cord stack", stack(ds));
    std::vector<FormulaPtr> closure;
    auto regions = depicted();
    const auto& table = adjacency_table();
    for (size_t i = 0; i < regions.size(); ++i)
      for (size_t j = i + 1; j < regions.size(); ++j)
        if (!table.allowed(regions[i], regions[j])) closure.push_back(disjoint(v(regions[i]), v(regions[j])));
    e.add(1, "non-contact closure", closure, true, "pairs outside " + table.version);
  }

  // Stages 2 and 3: the zeta/eta sequences below and above, then their matching
  for (bool p : {false, true}) {
    int stage = p ? 3 : 2;
    std::string top = p ? "a" : "b", bottom = p ? "b" : "a";
    if (!p) {
      e.add(2, "sequence anchors",
            {leq(v(S(6)), tri("a").inner), leq(v(Sp(6)), tri("b").inner), leq(v(S(3)), tri(A(0, 3)).middle)});
    } else {
      e.add(3, "sequence anchors", leq(v(Sp(3)), tri(A(0, 3, true)).middle));
    }
    for (int i = 0; i < 3; ++i) {
      std::vector<Triple> bs{tri(A(mod3(i - 1), 3, p))};
      for (int j = 1; j <= 6; ++j) bs.push_back(tri(B(i, j, p)));
      bs.push_back(tri(top));
      e.add(stage, "switched b stack", stack_w(v("z"), bs));
      std::vector<Triple> as{tri(B(i, 3, p))};
      for (int j = 1; j <= 6; ++j) as.push_back(tri(A(i, j, p)));
      as.push_back(tri(bottom));
      e.add(stage, "a stack", stack(as));
    }
    e.add(stage, "chord crossing", conn(sum(v(B(0, 5, p)), v(D(3)))));
    if (!p) {
      e.add(2, "switch separation", disjoint(v(S(3)), v("z")));
      std::vector<std::string> far{S(0), S(9)};
      for (int i = 0; i <= 5; ++i) far.push_back(D(i));
      for (int k = 1; k <= 6; ++k) e.add(2, "lower window", disjoint(v(A(1, k)), sum_names(far)));
    }
  }
  {
    std::vector<std::string> cut = frame_cycle();
    for (int i : {1, 2, 3, 4, 6}) cut.push_back(D(i));
    e.add(3, "zeta* confinement", disjoint(v("zstar"), sum_names(cut)));
    e.add(3, "zeta* arc", {conn(v("z")), within(v("z"), v("zstar"))});
    for (int i = 0; i < 3; ++i)
      for (int j = 1; j <= 6; ++j)
        e.add(3, "b avoids z", {disjoint(v(B(i, j)), v("z")), disjoint(v(B(i, j, true)), v("z"))});
    for (bool p : {false, true}) {
      std::vector<std::string> star{p ? "a" : "b"};
      for (int i = 0; i < 3; ++i) star.push_back(B(i, 6, p));
      for (int i = 0; i < 3; ++i)
        e.add(3, p ? "a avoids b'*" : "a' avoids b*", disjoint(sum_names(a_parts(i, !p)), sum_names(star)), p,
              p ? "symmetric counterpart, stated in prose" : "");
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        e.add(3, "a' b index match", disjoint(sum_names(a_parts(i, true)), sum_names(b_parts(j, false))));
        e.add(3, "a b' index match", disjoint(sum_names(a_parts(i, false)), sum_names(b_parts(j, true))));
        if (i < j) e.add(3, "b b' order", disjoint(sum_names(b_parts(i, false)), sum_names(b_parts(j, true))));
      }
  }

  // Stage 4: labels
  std::vector<Letter> letters, letters_p;
  for (int j = 1; j <= ell; ++j) {
    for (int k = 1; k <= static_cast<int>(w1[j - 1].size()); ++k) letters.push_back({j, k});
    for (int k = 1; k <= static_cast<int>(w2[j - 1].size()); ++k) letters_p.push_back({j, k});
  }
  auto u = [&](int j, bool p) { return static_cast<int>((p ? w2 : w1)[j - 1].size()); };
  for (int i = 0; i < 3; ++i) {
    auto bi = sum_names(b_parts(i, false));
    e.add(4, "binary labels", {leq(bi, sum(v("l0"), v("l1"))), disjoint(product(bi, v("l0")), product(bi, v("l1")))},
          true, "index range taken mod 3");
  }
  for (bool p : {false, true}) {
    const auto& ls = p ? letters_p : letters;
    std::string sep = p ? Sp(3) : S(3);
    for (int i = 0; i < 3; ++i) {
      auto ai = sum_names(a_parts(i, p));
      std::vector<std::string> all;
      for (auto& l : ls) all.push_back(T(l.j, l.k, p));
      std::vector<FormulaPtr> fs{leq(ai, sum_names(all))};
      for (size_t x = 0; x < ls.size(); ++x)
        for (size_t y = x + 1; y < ls.size(); ++y)
          fs.push_back(disjoint(product(ai, v(all[x])), product(ai, v(all[y]))));
      e.add(4, p ? "letter labels'" : "letter labels", fs, true, "labelling lemma applied to a_i");
    }
    std::vector<FormulaPtr> first, next, wrap, last;
    for (auto& l : ls) {
      if (l.k != 1) first.push_back(disjoint(v(T(l.j, l.k, p)), v(sep)));
      if (l.k != u(l.j, p)) last.push_back(disjoint(v(T(l.j, l.k, p)), v("zstar")));
    }
    for (int k = 0; k < 3; ++k) {
      auto ak = sum_names(a_parts(k, p)), ak1 = sum_names(a_parts(mod3(k + 1), p));
      for (auto& x : ls)
        for (auto& y : ls) {
          auto lhs = product(ak, v(T(x.j, x.k, p))), rhs = product(ak1, v(T(y.j, y.k, p)));
          if (x.k < u(x.j, p) && (y.j != x.j || y.k != x.k + 1)) next.push_back(disjoint(lhs, rhs));
          if (x.k == u(x.j, p) && y.k != 1) wrap.push_back(disjoint(lhs, rhs));
        }
    }
    bool tr = p;
    std::string note = p ? "primed side, stated as corresponding formulas" : "";
    e.add(4, p ? "block start'" : "block start", first, tr, note);
    e.add(4, p ? "block continue'" : "block continue", next, tr, note);
    e.add(4, p ? "block boundary'" : "block boundary", wrap, tr, note);
    e.add(4, p ? "block end'" : "block end", last, tr, note);
  }

  // Stage 5: matching the words
  for (bool p : {false, true}) {
    const auto& ls = p ? letters_p : letters;
    std::vector<FormulaPtr> fs;
    for (auto& l : ls) {
      char letter = (p ? w2 : w1)[l.j - 1][l.k - 1];
      for (int h = 0; h < 2; ++h)
        if (letter != '0' + h) fs.push_back(disjoint(v("l" + num(h)), v(T(l.j, l.k, p))));
    }
    e.add(5, p ? "letter agreement'" : "letter agreement", fs);
  }
  for (bool p : {false, true}) {
    const auto& ls = p ? letters_p : letters;
    std::vector<std::string> as;
    for (int i = 0; i < 3; ++i)
      for (auto& n : a_parts(i, p)) as.push_back(n);
    std::vector<FormulaPtr> colour{leq(sum_of({sum_names(a_parts(0, p)), sum_names(a_parts(1, p)), sum_names(a_parts(2, p))}),
                                       sum(v("f0"), v("f1")))};
    for (int i = 0; i < 3; ++i) {
      auto ai = sum_names(a_parts(i, p));
      colour.push_back(disjoint(product(v("f0"), ai), product(v("f1"), ai)));
    }
    std::vector<FormulaPtr> alt;
    for (int h = 0; h < 2; ++h) {
      auto fh = v("f" + num(h)), fo = v("f" + num(1 - h));
      for (auto& l : ls)
        if (l.k < u(l.j, p)) alt.push_back(disjoint(product(fh, v(T(l.j, l.k, p))), product(fo, v(T(l.j, l.k + 1, p)))));
      for (int j = 1; j <= ell; ++j)
        for (int j2 = 1; j2 <= ell; ++j2)
          for (int i = 0; i < 3; ++i)
            alt.push_back(disjoint(product(product(fh, v(T(j, u(j, p), p))), sum_names(a_parts(i, p))),
                                   product(product(fh, v(T(j2, 1, p))), sum_names(a_parts(mod3(i + 1), p)))));
    }
    e.add(5, p ? "block colours'" : "block colours", colour, p, p ? "same colours on the primed side" : "");
    e.add(5, p ? "colour alternation'" : "colour alternation", alt, true,
          "next block start read as unprimed t on the same side");
  }
  for (bool p : {false, true}) {
    for (int k = 0; k < 2; ++k) {
      std::vector<std::string> starts;
      for (int j = 1; j <= ell; ++j) starts.push_back(T(j, 1, p));
      auto w = complement(product(v("f" + num(k)), sum_names(starts)));
      for (int i = 0; i < 3; ++i)
        e.add(5, p ? "block links'" : "block links", stack_w(w, {tri(B(i, 1, p)), tri(G(k, p)), tri(p ? "b" : "a")}),
              true, "k ranges over both colours");
    }
  }
  {
    auto frame_sum = sum_names(frame_cycle());
    std::vector<FormulaPtr> stay, colour;
    for (int k = 0; k < 2; ++k) {
      stay.push_back(disjoint(v(G(k)), frame_sum));
      stay.push_back(disjoint(v(G(k, true)), frame_sum));
      colour.push_back(disjoint(v(G(k)), v("f" + num(1 - k))));
      colour.push_back(disjoint(v(G(k, true)), v("f" + num(1 - k))));
    }
    e.add(5, "theta inside windows", stay, true, "prose: theta_h must cross some zeta'");
    e.add(5, "link colours", colour);
    e.add(5, "link separation", disjoint(sum(v(G(0)), v(G(0, true))), sum(v(G(1)), v(G(1, true)))));
    std::vector<std::string> dts;
    for (int j = 1; j <= ell; ++j) dts.push_back(DT(j));
    std::vector<FormulaPtr> tl;
    for (int i = 0; i < 2; ++i) {
      tl.push_back(leq(v(G(i)), sum_names(dts)));
      for (int j = 1; j <= ell; ++j)
        tl.push_back(disjoint(product(v(DT(j)), v(G(i))), product(complement(v(DT(j))), v(G(i)))));
    }
    e.add(5, "tile labels", tl, true, "contact conjunct read as negative");
    std::vector<FormulaPtr> tm;
    for (bool p : {false, true})
      for (auto& l : (p ? letters_p : letters))
        for (int j2 = 1; j2 <= ell; ++j2)
          if (j2 != l.j) tm.push_back(disjoint(v(T(l.j, l.k, p)), v(DT(j2))));
    e.add(5, "tile agreement", tm, true, "p_{j,k} read as t_{j,k}");
  }

  std::vector<ThreeRegionVar> threes;
  for (auto& n : depicted()) threes.push_back(ThreeRegionVar::named(n));
  for (bool p : {false, true})
    for (int k = 0; k < 2; ++k) threes.push_back(ThreeRegionVar::named(G(k, p)));
  std::vector<FormulaPtr> implicit;
  for (auto& tv : threes) {
    auto t = triple(tv);
    implicit.push_back(neq(t.inner, zero()));
    implicit.push_back(within(t.inner, t.middle));
    implicit.push_back(within(t.middle, t.outer));
  }
  e.add(0, "implicit 3-region conjuncts", implicit);

  Compiled c;
  c.formula = conj(e.out);
  c.report = e.rep;
  c.report.stage_conjuncts.assign(6, 0);
  for (auto& f : c.report.families) c.report.stage_conjuncts[f.stage] += f.conjuncts;
  c.report.variables = variables(*c.formula).size();
  c.report.atoms = atom_count(*c.formula);
  size_t n = ell;
  for (int j = 0; j < ell; ++j) n += w1[j].size() + w2[j].size();
  c.report.size = n;
  c.report.c0 = 6000;
  c.report.c1 = 4;
  c.report.within_envelope = c.report.atoms <= c.report.c0 + c.report.c1 * n * n;
  return c;
}

std::string target_name(PcpTarget t) {
  switch (t) {
    case PcpTarget::BCc: return "bcc";
    case PcpTarget::Bc: return "bc";
    case PcpTarget::BCci: return "bcci";
    case PcpTarget::Bci: return "bci";
  }
  return "";
}

PcpTarget parse_target(const std::string& s) {
  for (auto t : {PcpTarget::BCc, PcpTarget::Bc, PcpTarget::BCci, PcpTarget::Bci})
    if (s == target_name(t)) return t;
  fail("UsageError", "unknown target '" + s + "' (bcc, bc, bcci, bci)");
}

FormulaPtr compile_variant(const PcpInstance& inst, PcpTarget target) {
  auto f = compile(inst).formula;
  switch (target) {
    case PcpTarget::BCc: return f;
    case PcpTarget::Bc: return eliminate_contacts(f, ContactTarget::Bc);
    case PcpTarget::BCci: return transform_c_to_interior(f);
    case PcpTarget::Bci: return eliminate_contacts(transform_c_to_interior(f), ContactTarget::Bci);
  }
  return f;
}

}  // namespace topoconn
