// Acceptance criteria 1-10. One line per criterion; exit status is the number of failures.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gen.hpp"
#include "geom_gen.hpp"
#include "topoconn/constructions.hpp"
#include "topoconn/embed3d.hpp"
#include "topoconn/io.hpp"
#include "topoconn/pcp.hpp"
#include "topoconn/solver.hpp"

using namespace topoconn;

namespace {

const char* kCoTriple = "co(r1) & co(r2) & co(r3) & co(r1 + r2 + r3) & !co(r1 + r2) & !co(r1 + r3)";

QsInterpretation saw3() {
  auto s = std::make_shared<const QuasiSaw>(std::vector<std::string>{"x1", "x2", "x3"},
                                            std::vector<QuasiSaw::Depth1>{{"z", {"x1", "x2", "x3"}}});
  QsInterpretation m{s, {}};
  m.valuation["r1"] = qs_region(s, {"x1"}).core;
  m.valuation["r2"] = qs_region(s, {"x2"}).core;
  m.valuation["r3"] = qs_region(s, {"x3"}).core;
  return m;
}

// re-check a witness the way `check` does: serialise, read back, evaluate
bool recheck(const FormulaPtr& f, const QsInterpretation& m) {
  auto back = qs_model_from_json(json::parse(qs_model_to_json(m).dump()));
  return eval(back, *f);
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0 = none
  std::function<void(Outcome&)> run;
};

void c1(Outcome& o) {
  auto m = saw3();
  auto f = parse(kCoTriple);
  auto rep = conjunct_report(m, f);
  size_t good = 0;
  for (auto& [c, v] : rep) good += v;
  o.require(eval(m, *f), "co-triple formula true on saw3");
  // six conjuncts in the display: three c°(r_i), c°(r1+r2+r3), two ¬c°(r1+r_i)
  o.require(rep.size() == 6 && good == 6, "all conjuncts true");
  o.detail << good << "/" << rep.size() << " conjuncts true";
}

void c2(Outcome& o) {
  auto f = parse(kCoTriple);
  auto r2 = solve(f, SpaceClass::QS2, 4);
  auto rc = solve(f, SpaceClass::ConnQS, 4);
  o.require(!r2.sat, "QS2 bound 4 unsat");
  o.require(rc.sat && verify(*f, rc.witness, SpaceClass::ConnQS), "ConnQS bound 4 sat, verified");
  o.detail << "QS2: " << (r2.sat ? "sat" : "unsat_up_to_bound(4)") << ", ConnQS: " << (rc.sat ? "sat" : "unsat");
  if (rc.sat) o.detail << " |W0|=" << rc.witness.space->n0() << " |W1|=" << rc.witness.space->n1();
}

void c3(Outcome& o) {
  std::mt19937_64 rng(3);
  size_t checked = 0, bad = 0;
  for (int it = 0; it < 500; ++it) {
    int n0 = 1 + static_cast<int>(rng() % 6), n1 = static_cast<int>(rng() % 8);
    std::vector<std::string> w0;
    for (int i = 0; i < n0; ++i) w0.push_back("p" + std::to_string(i));
    std::vector<QuasiSaw::Depth1> w1;
    for (int k = 0; k < n1; ++k) {
      QuasiSaw::Depth1 z{"q" + std::to_string(k), {w0[rng() % n0]}};
      if (rng() % 3) {
        auto other = w0[rng() % n0];
        if (other != z.succ[0]) z.succ.push_back(other);
      }
      w1.push_back(z);
    }
    auto s = std::make_shared<const QuasiSaw>(w0, w1);
    if (!s->two_quasi_saw()) {
      ++bad;
      continue;
    }
    for (int r = 0; r < 20; ++r) {
      QsRegion reg{s, Bits(n0)};
      for (int i = 0; i < n0; ++i) reg.core[i] = rng() % 2;
      ++checked;
      if (connected(reg) != interior_connected(reg)) ++bad;
    }
  }
  o.require(checked == 10000 && bad == 0, "no counterexamples");
  o.detail << checked << " regions, " << bad << " counterexamples";
}

void c4(Outcome& o) {
  for (int k : {3, 5}) {
    auto f = generate({FamilyKind::PhiK, k});
    auto r = solve(f, SpaceClass::ConnQS, default_bound(*f));
    o.require(r.sat && verify(*f, r.witness, SpaceClass::ConnQS), "phi_" + std::to_string(k) + " sat");
    o.detail << "phi_" << k << ": " << (r.sat ? "sat |W0|=" + std::to_string(r.witness.space->n0()) : "unsat") << "; ";
  }
  auto f3 = generate({FamilyKind::PhiK, 3});
  bool tri = eval(witness(WitnessKind::PhiKTriangle, 3), *f3);
  o.require(tri, "PhiKTriangle satisfies phi_3 in the plane");
  o.detail << "triangle witness " << (tri ? "true" : "false");
}

void c5(Outcome& o) {
  auto f = generate({FamilyKind::PhiInf, 0});
  int b = default_bound(*f);
  SolveStats st;
  auto r = solve(f, SpaceClass::QS2, b, {}, &st);
  o.require(r.sat, "sat over QS2");
  if (r.sat) {
    o.require(verify(*f, r.witness, SpaceClass::QS2), "verified");
    o.require(recheck(f, r.witness), "re-verifies after a JSON round trip");
    o.detail << "sat, |W0|=" << r.witness.space->n0() << " |W1|=" << r.witness.space->n1() << " (default bound " << b
             << ")";
  }
}

void c6(Outcome& o) {
  std::mt19937_64 rng(6);
  size_t laws = 0, law_fail = 0;
  for (int i = 0; i < 200; ++i) {
    PolyRegion x = testgen::random_rectilinear(rng), y = testgen::random_rectilinear(rng),
               z = testgen::random_rectilinear(rng);
    bool ok[8] = {sum(x, y) == sum(y, x),
                  product(x, y) == product(y, x),
                  sum(sum(x, y), z) == sum(x, sum(y, z)),
                  product(x, sum(y, z)) == sum(product(x, y), product(x, z)),
                  complement(sum(x, y)) == product(complement(x), complement(y)),
                  complement(complement(x)) == x,
                  product(x, complement(x)).is_empty(),
                  sum(x, complement(x)).is_whole()};
    for (bool b : ok) {
      ++laws;
      law_fail += !b;
    }
  }
  size_t samples = 0, disagree = 0;
  for (int c = 0; c < 50; ++c) {
    auto bx = testgen::random_boxes(rng), by = testgen::random_boxes(rng);
    PolyRegion x = testgen::region_of(bx), y = testgen::region_of(by);
    PolyRegion s = sum(x, y), p = product(x, y), k = complement(x);
    for (int i = 0; i < 10000; ++i) {
      Point q = testgen::random_offgrid_point(rng);
      bool ix = bx.inside(q), iy = by.inside(q);
      ++samples;
      if (x.contains(q) != ix || s.contains(q) != (ix || iy) || p.contains(q) != (ix && iy) || k.contains(q) != !ix)
        ++disagree;
    }
  }
  o.require(law_fail == 0, "Boolean laws");
  o.require(disagree == 0, "sampling oracle");
  o.detail << laws - law_fail << "/" << laws << " law instances, " << samples << " samples, " << disagree
           << " discrepancies";
}

void c7(Outcome& o) {
  auto sc = witness(WitnessKind::StackChain, 3);
  bool stack_ok = eval(sc, *witness_formula(WitnessKind::StackChain, 3));
  o.require(stack_ok, "StackChain(3) satisfies desugared stack(a1, a2, a3)");
  auto phi = generate({FamilyKind::PhiInf, 0});
  const std::set<std::string> frozen{"c(a0 + d1 + t)"};
  for (int k = 1; k <= 3; ++k) {
    std::set<std::string> failing;
    for (auto& [c, v] : conjunct_report(witness(WitnessKind::OnionTruncation, k), phi))
      if (!v) failing.insert(print(c));
    o.require(!failing.empty() && failing == frozen, "OnionTruncation(" + std::to_string(k) + ") frozen failing set");
  }
  o.detail << "stack chain " << (stack_ok ? "true" : "false") << "; onion k=1..3 fail exactly {c(a0 + d1 + t)}";
}

void c8(Outcome& o) {
  std::mt19937_64 rng(8);
  std::vector<std::string> names{"a", "b", "c"};
  int models = 0, bad = 0;
  for (int i = 0; i < 50; ++i) {
    auto f = testgen::random_negc_formula(rng, names);
    auto g = eliminate_contacts(f, ContactTarget::Bc);
    // bound 2: at 3 the formulas whose schema has no small model (e.g. !C(1, -b)) cost
    // minutes of exhaustive search and contribute nothing
    for (uint64_t seed : {0, 1, 2, 3}) {
      SolveOptions opt;
      opt.seed = seed;
      auto r = solve(g, SpaceClass::QS, 2, opt);
      if (!r.sat) continue;
      ++models;
      if (!eval(r.witness, *f)) ++bad;
    }
  }
  o.require(bad == 0 && models > 0, "Bc elimination entails its input");
  auto phi = generate({FamilyKind::PhiInf, 0});
  auto tilde = transform_c_to_interior(phi);
  int tilde_models = 0;
  for (auto cls : {SpaceClass::QS2, SpaceClass::QS}) {
    auto r = solve(tilde, cls, default_bound(*tilde));
    o.require(r.sat && eval(r.witness, *phi), "phi~inf model satisfies phi_inf over " + class_name(cls));
    tilde_models += r.sat;
  }
  o.detail << models << " models of eliminated formulas, " << bad << " violations; " << tilde_models
           << "/2 phi~inf models satisfy phi_inf";
}

void c9(Outcome& o) {
  auto inst = [](std::vector<std::pair<std::string, std::string>> w, std::vector<std::string> up) {
    PcpInstance p;
    for (size_t i = 0; i < w.size(); ++i) {
      p.tiles.push_back(w[i].first);
      p.lower[w[i].first] = w[i].second;
      p.upper[w[i].first] = up[i];
    }
    return p;
  };
  std::vector<PcpInstance> micro{
      inst({{"t", "0"}}, {"0"}),
      inst({{"t", "1"}}, {"10"}),
      inst({{"t1", "01"}, {"t2", "1"}}, {"0", "11"}),
      inst({{"x", "000"}}, {"0"}),
      inst({{"a", "0"}, {"b", "1"}, {"c", "01"}}, {"1", "0", "10"}),
      inst({{"t1", "0101"}}, {"1010"}),
      inst({{"p", "1"}, {"q", "11"}}, {"111", "1"}),
      inst({{"a", "01"}, {"b", "10"}, {"c", "0"}, {"d", "1"}}, {"0", "1", "01", "10"}),
      inst({{"u", "00110"}}, {"1"}),
      inst({{"v", "1"}, {"w", "0"}}, {"1", "0"}),
  };
  std::function<size_t(const Formula&)> contacts = [&](const Formula& f) -> size_t {
    if (f.kind == FormulaKind::And) return contacts(*f.f) + contacts(*f.g);
    if (f.kind == FormulaKind::Not) return contacts(*f.f);
    return f.kind == FormulaKind::Contact;
  };
  size_t worst = 0;
  for (auto& p : micro) {
    auto a = compile(p), b = compile(p);
    o.require(print(a.formula) == print(b.formula), "deterministic");
    bool neg = true;
    for (auto& occ : polarity(*a.formula, Pred::Contact)) neg = neg && occ.sign < 0;
    o.require(neg, "every C negative");
    o.require(contacts(*compile_variant(p, PcpTarget::Bc)) == 0, "Bc variant has no C");
    o.require(a.report.within_envelope && a.report.atoms == atom_count(*a.formula), "envelope");
    worst = std::max(worst, a.report.atoms);
  }
  o.detail << "10 instances; largest " << worst << " atoms within " << compile(micro[0]).report.c0 << " + "
           << compile(micro[0]).report.c1 << "*size^2";
}

void c10(Outcome& o) {
  auto m = saw3();
  auto s = embed(m, 3);
  auto r = verify_scene(s, m);
  o.require(r.valid, "saw3 stage 3 scene valid");
  Graph g;
  for (int i = 1; i <= 6; ++i) g.vertices.push_back("X" + std::to_string(i));
  for (auto [a, b] : std::vector<std::pair<int, int>>{
           {1, 2}, {2, 3}, {1, 3}, {3, 4}, {2, 5}, {1, 5}, {1, 4}, {3, 6}, {4, 5}, {1, 6}, {4, 6}, {5, 6}})
    g.edges.insert({"X" + std::to_string(a), "X" + std::to_string(b)});
  auto q = neighbourhood_to_quasisaw(g);
  o.require(q.connected() && q.two_quasi_saw() && q.n1() == 12, "g6 graph gives a connected 2-quasi-saw, |W1| = 12");
  o.detail << "scene " << s.balls.size() << " balls, " << s.rods.size() << " rods, " << (r.valid ? "valid" : "invalid")
           << "; g6 |W1|=" << q.n1();
}

}  // namespace

int main() {
  std::vector<Criterion> all{
      {1, "saw3 model of the co-triple formula", 1, c1},
      {2, "co-triple formula: unsat over QS2, sat over ConnQS (bound 4)", 30, c2},
      {3, "c <=> c° on 2-quasi-saws", 0, c3},
      {4, "phi_3, phi_5 sat over ConnQS; triangle witness", 60, c4},
      {5, "phi_inf sat over QS2 with re-verified witness", 120, c5},
      {6, "polygon algebra laws and sampling oracle", 0, c6},
      {7, "figure-as-data: stack chain, onion truncations", 0, c7},
      {8, "transformation entailment", 0, c8},
      {9, "PCP compiler guarantees", 10, c9},
      {10, "embedding: saw3 scene, g6 graph", 60, c10},
  };
  int failures = 0;
  for (auto& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      std::ostringstream b;
      b << "runtime under " << c.budget_s << " s";
      o.require(false, b.str());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << ": " << o.detail.str()
              << " (" << secs << " s)" << std::endl;
  }
  return failures;
}
