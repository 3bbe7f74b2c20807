#include "topoconn/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <map>
#include <random>

#include "topoconn/error.hpp"

namespace topoconn {

std::string class_name(SpaceClass c) {
  switch (c) {
    case SpaceClass::QS: return "qs";
    case SpaceClass::QS2: return "qs2";
    case SpaceClass::ConnQS: return "conn-qs";
    case SpaceClass::ConnQS2: return "conn-qs2";
  }
  return "?";
}

SpaceClass parse_class(const std::string& s) {
  if (s == "qs") return SpaceClass::QS;
  if (s == "qs2") return SpaceClass::QS2;
  if (s == "conn-qs") return SpaceClass::ConnQS;
  if (s == "conn-qs2") return SpaceClass::ConnQS2;
  fail("UsageError", "unknown space class '" + s + "'");
}

static bool pairs_only(SpaceClass c) { return c == SpaceClass::QS2 || c == SpaceClass::ConnQS2; }
static bool needs_connected(SpaceClass c) { return c == SpaceClass::ConnQS || c == SpaceClass::ConnQS2; }

bool in_class(const QuasiSaw& s, SpaceClass c) {
  if (pairs_only(c) && !s.two_quasi_saw()) return false;
  if (needs_connected(c) && !s.connected()) return false;
  return true;
}

bool verify(const Formula& f, const QsInterpretation& w, SpaceClass cls) {
  bool holds = eval(w, f);
  return in_class(*w.space, cls) && holds;
}

int default_bound(const Formula& f) {
  long v = static_cast<long>(variables(f).size());
  long a = static_cast<long>(atom_count(f));
  long b = std::max(2L, v * (a + 1));
  return static_cast<int>(std::min<long>(b, INT_MAX));
}

namespace {

// ---------------------------------------------------------------- compiled formula

enum : int8_t { F = 0, T = 1, U = 2 };

struct TermNode {
  TermKind kind;
  int var = -1, l = -1, r = -1;
};

struct AtomNode {
  FormulaKind kind;
  int a = -1, b = -1;
};

struct FNode {
  int kind;  // 0 atom, 1 and, 2 not
  int atom = -1, l = -1, r = -1;
};

struct Compiled {
  std::vector<std::string> vars;
  std::vector<TermNode> terms;
  std::vector<AtomNode> atoms;
  std::vector<FNode> nodes;
  int root = -1;

  std::map<std::string, int> var_index, term_index, atom_index;

  int add_term(const Term& t) {
    std::string key = print(t);
    auto it = term_index.find(key);
    if (it != term_index.end()) return it->second;
    TermNode n{t.kind};
    switch (t.kind) {
      case TermKind::Var: n.var = var_index.at(t.name); break;
      case TermKind::Zero:
      case TermKind::One: break;
      case TermKind::Complement: n.l = add_term(*t.left); break;
      default:
        n.l = add_term(*t.left);
        n.r = add_term(*t.right);
    }
    terms.push_back(n);
    return term_index[key] = static_cast<int>(terms.size()) - 1;
  }

  int add_atom(const Formula& f) {
    std::string key = print(f);
    auto it = atom_index.find(key);
    if (it != atom_index.end()) return it->second;
    AtomNode a{f.kind};
    a.a = add_term(*f.a);
    if (f.b) a.b = add_term(*f.b);
    atoms.push_back(a);
    return atom_index[key] = static_cast<int>(atoms.size()) - 1;
  }

  int add(const Formula& f) {
    FNode n{0};
    if (f.kind == FormulaKind::And) {
      n.kind = 1;
      n.l = add(*f.f);
      n.r = add(*f.g);
    } else if (f.kind == FormulaKind::Not) {
      n.kind = 2;
      n.l = add(*f.f);
    } else {
      n.atom = add_atom(f);
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }

  int8_t eval3(const std::vector<int8_t>& st, int i) const {
    const FNode& n = nodes[i];
    if (n.kind == 0) return st[n.atom];
    if (n.kind == 2) {
      int8_t v = eval3(st, n.l);
      return v == U ? static_cast<int8_t>(U) : static_cast<int8_t>(1 - v);
    }
    int8_t a = eval3(st, n.l);
    if (a == F) return F;
    int8_t b = eval3(st, n.r);
    if (b == F) return F;
    return (a == T && b == T) ? T : U;
  }
  int8_t eval3(const std::vector<int8_t>& st) const { return eval3(st, root); }
};

Compiled compile(const Formula& f, SpaceClass cls) {
  Compiled c;
  for (const auto& v : variables(f)) {
    c.var_index[v] = static_cast<int>(c.vars.size());
    c.vars.push_back(v);
  }
  c.root = c.add(f);
  if (needs_connected(cls)) {
    // The whole space is connected iff the region 1 is.
    FormulaPtr whole = conn(one());
    int r = c.add(*whole);
    c.nodes.push_back(FNode{1, -1, c.root, r});
    c.root = static_cast<int>(c.nodes.size()) - 1;
  }
  return c;
}

// ---------------------------------------------------------------- point types

struct TypeInfo {
  uint32_t bits;
  std::vector<char> val;   // truth of every term node at a point of this type
  Bits eq_false;           // Eq atoms this point refutes
  Bits contact_true;       // Contact atoms this point witnesses
};

std::vector<TypeInfo> admissible_types(const Compiled& c) {
  size_t v = c.vars.size();
  std::vector<TypeInfo> out;
  size_t na = c.atoms.size();
  std::vector<int8_t> st(na);
  for (uint64_t t = 0; t < (uint64_t{1} << v); ++t) {
    TypeInfo ti{static_cast<uint32_t>(t), std::vector<char>(c.terms.size()), Bits(na), Bits(na)};
    for (size_t i = 0; i < c.terms.size(); ++i) {
      const TermNode& n = c.terms[i];
      char x = 0;
      switch (n.kind) {
        case TermKind::Var: x = (t >> n.var) & 1; break;
        case TermKind::Zero: x = 0; break;
        case TermKind::One: x = 1; break;
        case TermKind::Sum: x = ti.val[n.l] | ti.val[n.r]; break;
        case TermKind::Product: x = ti.val[n.l] & ti.val[n.r]; break;
        case TermKind::Complement: x = !ti.val[n.l]; break;
      }
      ti.val[i] = x;
    }
    for (size_t k = 0; k < na; ++k) {
      const AtomNode& a = c.atoms[k];
      st[k] = U;
      if (a.kind == FormulaKind::Eq && ti.val[a.a] != ti.val[a.b]) {
        ti.eq_false.set(k);
        st[k] = F;
      }
      if (a.kind == FormulaKind::Contact && ti.val[a.a] && ti.val[a.b]) {
        ti.contact_true.set(k);
        st[k] = T;
      }
    }
    if (c.eval3(st) != F) out.push_back(std::move(ti));
  }
  return out;
}

// ---------------------------------------------------------------- search

struct Shared {
  std::atomic<uint64_t> nodes{0};
  std::atomic<bool> out_of_budget{false};
  std::atomic<long> best_task{LONG_MAX};
  uint64_t max_nodes = 0;
};

struct Found {
  std::vector<int> types;          // type index per point
  std::vector<uint64_t> w1;        // successor masks
};

class Search {
 public:
  Search(const Compiled& c, const std::vector<TypeInfo>& types, SpaceClass cls, int n, size_t max_w1,
         Shared& shared, long task)
      : c_(c), types_(types), cls_(cls), n_(n), max_w1_(max_w1), sh_(shared), task_(task) {
    size_t na = c_.atoms.size();
    suffix_eqf_.assign(types_.size() + 1, Bits(na));
    for (size_t i = types_.size(); i-- > 0;) suffix_eqf_[i] = suffix_eqf_[i + 1] | types_[i].eq_false;
  }

  // Explores every set of distinct point types whose least member is `first`.
  bool run(int first) {
    set_ = {first};
    return set_dfs(first + 1, types_[first].eq_false, types_[first].contact_true);
  }

  const Found& found() const { return found_; }

 private:
  const Compiled& c_;
  const std::vector<TypeInfo>& types_;
  SpaceClass cls_;
  int n_;
  size_t max_w1_;
  Shared& sh_;
  long task_;
  std::vector<Bits> suffix_eqf_;
  std::vector<int> set_, mult_, seq_;
  Found found_;

  // depth-1 phase
  std::vector<uint64_t> amask_, bmask_;
  std::vector<uint64_t> cands_;
  std::vector<std::vector<int>> rel_;
  std::vector<std::vector<int>> touches_;
  std::vector<char> in_lower_, in_upper_;
  size_t lower_count_ = 0;
  std::vector<int8_t> st_;
  struct Undo {
    int what;  // 0 lower flag, 1 upper flag, 2 atom status
    int index;
    int8_t old;
  };
  std::vector<Undo> trail_;

  bool stop() {
    uint64_t k = sh_.nodes.fetch_add(1, std::memory_order_relaxed);
    if (sh_.max_nodes && k >= sh_.max_nodes) sh_.out_of_budget = true;
    return sh_.out_of_budget.load(std::memory_order_relaxed) ||
           sh_.best_task.load(std::memory_order_relaxed) < task_;
  }

  // Eq atoms depend only on which types occur, so sets are decided before multiplicities.
  bool set_dfs(size_t i, const Bits& eqf, const Bits& ct) {
    if (stop()) return false;
    std::vector<int8_t> st(c_.atoms.size());
    for (size_t k = 0; k < st.size(); ++k) {
      const AtomNode& a = c_.atoms[k];
      if (a.kind == FormulaKind::Eq) st[k] = eqf.test(k) ? F : (suffix_eqf_[i].test(k) ? U : T);
      else st[k] = ct.test(k) ? T : U;
    }
    if (c_.eval3(st) == F) return false;
    if (i == types_.size()) {
      mult_.assign(set_.size(), 1);
      return compose(0, n_ - static_cast<int>(set_.size()), eqf);
    }
    if (static_cast<int>(set_.size()) < n_) {
      set_.push_back(static_cast<int>(i));
      if (set_dfs(i + 1, eqf | types_[i].eq_false, ct | types_[i].contact_true)) return true;
      set_.pop_back();
    }
    return set_dfs(i + 1, eqf, ct);
  }

  bool compose(size_t i, int extra, const Bits& eqf) {
    if (i + 1 == set_.size()) {
      mult_[i] = 1 + extra;
      seq_.clear();
      for (size_t t = 0; t < set_.size(); ++t)
        for (int m = 0; m < mult_[t]; ++m) seq_.push_back(set_[t]);
      if (stop()) return false;
      return leaf(eqf);
    }
    for (int k = 0; k <= extra; ++k) {
      mult_[i] = 1 + k;
      if (compose(i + 1, extra - k, eqf)) return true;
    }
    return false;
  }

  static bool grow(uint64_t target, const std::vector<uint64_t>& edges) {
    if (std::popcount(target) <= 1) return true;
    uint64_t comp = target & (~target + 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (uint64_t e : edges) {
        if ((e & comp) && (e & ~comp)) {
          comp |= e;
          changed = true;
        }
      }
    }
    return comp == target;
  }

  bool atom_at(int k, const std::vector<char>& flag) const {
    const AtomNode& a = c_.atoms[k];
    uint64_t A = amask_[k];
    if (a.kind == FormulaKind::Contact) {
      if (A & bmask_[k]) return true;
      for (int j : rel_[k])
        if (flag[j]) return true;
      return false;
    }
    std::vector<uint64_t> edges;
    edges.reserve(rel_[k].size());
    for (int j : rel_[k])
      if (flag[j]) edges.push_back(a.kind == FormulaKind::Conn ? (cands_[j] & A) : cands_[j]);
    return grow(A, edges);
  }

  bool relevant(int k, uint64_t s) const {
    const AtomNode& a = c_.atoms[k];
    uint64_t A = amask_[k];
    switch (a.kind) {
      case FormulaKind::Contact: return (s & A) && (s & bmask_[k]);
      case FormulaKind::Conn: return std::popcount(s & A) >= 2;
      case FormulaKind::IntConn: return (s & ~A) == 0;
      default: return false;
    }
  }

  void candidates() {
    cands_.clear();
    if (pairs_only(cls_)) {
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) cands_.push_back((uint64_t{1} << i) | (uint64_t{1} << j));
      return;
    }
    uint64_t full = (uint64_t{1} << n_) - 1;
    for (uint64_t s = 0; s <= full; ++s)
      if (std::popcount(s) >= 2) cands_.push_back(s);
    std::stable_sort(cands_.begin(), cands_.end(),
                     [](uint64_t a, uint64_t b) { return std::popcount(a) < std::popcount(b); });
  }

  bool leaf(const Bits& eqf) {
    size_t na = c_.atoms.size(), nt = c_.terms.size();
    std::vector<uint64_t> tm(nt, 0);
    for (int p = 0; p < n_; ++p) {
      const TypeInfo& ti = types_[seq_[p]];
      for (size_t i = 0; i < nt; ++i)
        if (ti.val[i]) tm[i] |= uint64_t{1} << p;
    }
    amask_.assign(na, 0);
    bmask_.assign(na, 0);
    st_.assign(na, U);
    for (size_t k = 0; k < na; ++k) {
      const AtomNode& a = c_.atoms[k];
      amask_[k] = tm[a.a];
      if (a.b >= 0) bmask_[k] = tm[a.b];
      if (a.kind == FormulaKind::Eq) st_[k] = eqf.test(k) ? F : T;
    }
    candidates();
    std::vector<char> none(cands_.size(), 0), all(cands_.size(), 1);
    rel_.assign(na, {});
    std::vector<char> used(cands_.size(), 0);
    for (size_t k = 0; k < na; ++k) {
      if (c_.atoms[k].kind == FormulaKind::Eq) continue;
      for (size_t j = 0; j < cands_.size(); ++j)
        if (relevant(k, cands_[j])) rel_[k].push_back(static_cast<int>(j));
      bool lo = atom_at(k, none);
      bool hi = atom_at(k, all);
      st_[k] = lo ? T : (!hi ? F : U);
      if (st_[k] == U)
        for (int j : rel_[k]) used[j] = 1;
    }
    int8_t v = c_.eval3(st_);
    if (v == F) return false;
    if (v == T) {
      cands_.clear();
      in_lower_.clear();
      return accept();
    }
    // Candidates that cannot change an undecided atom are never needed.
    std::vector<int> remap(cands_.size(), -1);
    std::vector<uint64_t> kept;
    for (size_t j = 0; j < cands_.size(); ++j)
      if (used[j]) {
        remap[j] = static_cast<int>(kept.size());
        kept.push_back(cands_[j]);
      }
    cands_ = std::move(kept);
    touches_.assign(cands_.size(), {});
    for (size_t k = 0; k < na; ++k) {
      std::vector<int> r;
      for (int j : rel_[k])
        if (remap[j] >= 0) r.push_back(remap[j]);
      rel_[k] = std::move(r);
      if (st_[k] == U)
        for (int j : rel_[k]) touches_[j].push_back(static_cast<int>(k));
    }
    in_lower_.assign(cands_.size(), 0);
    in_upper_.assign(cands_.size(), 1);
    lower_count_ = 0;
    trail_.clear();
    return w1_dfs();
  }

  bool accept() {
    found_.types = seq_;
    found_.w1.clear();
    for (size_t j = 0; j < in_lower_.size(); ++j)
      if (in_lower_[j]) found_.w1.push_back(cands_[j]);
    return true;
  }

  void set_status(int k, int8_t v) {
    trail_.push_back({2, k, st_[k]});
    st_[k] = v;
  }

  void include(int j) {
    trail_.push_back({0, j, in_lower_[j]});
    in_lower_[j] = 1;
    ++lower_count_;
    for (int k : touches_[j])
      if (st_[k] == U && atom_at(k, in_lower_)) set_status(k, T);
  }

  void exclude(int j) {
    trail_.push_back({1, j, in_upper_[j]});
    in_upper_[j] = 0;
    for (int k : touches_[j])
      if (st_[k] == U && !atom_at(k, in_upper_)) set_status(k, F);
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      Undo u = trail_.back();
      trail_.pop_back();
      if (u.what == 0) {
        in_lower_[u.index] = u.old;
        --lower_count_;
      } else if (u.what == 1) {
        in_upper_[u.index] = u.old;
      } else {
        st_[u.index] = u.old;
      }
    }
  }

  // Would deciding candidate j this way falsify the formula outright?
  bool refuted_by(int j, bool take) {
    std::vector<std::pair<int, int8_t>> changed;
    std::vector<char>& flag = take ? in_lower_ : in_upper_;
    char old = flag[j];
    flag[j] = take ? 1 : 0;
    for (int k : touches_[j]) {
      if (st_[k] != U) continue;
      bool v = atom_at(k, flag);
      if (take ? v : !v) {
        changed.emplace_back(k, st_[k]);
        st_[k] = take ? T : F;
      }
    }
    bool refuted = !changed.empty() && c_.eval3(st_) == F;
    for (auto& [k, s] : changed) st_[k] = s;
    flag[j] = old;
    return refuted;
  }

  // Failed-literal probing until nothing changes; false on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      int8_t v = c_.eval3(st_);
      if (v == F) return false;
      if (v == T) return true;
      for (size_t j = 0; j < cands_.size(); ++j) {
        if (in_lower_[j] || !in_upper_[j]) continue;
        bool touches_unknown = false;
        for (int k : touches_[j])
          if (st_[k] == U) touches_unknown = true;
        if (!touches_unknown) continue;
        bool can_take = lower_count_ < max_w1_ && !refuted_by(static_cast<int>(j), true);
        if (!can_take) {
          exclude(static_cast<int>(j));
          changed = true;
          if (c_.eval3(st_) == F) return false;
          continue;
        }
        if (refuted_by(static_cast<int>(j), false)) {
          include(static_cast<int>(j));
          changed = true;
          if (c_.eval3(st_) == F) return false;
        }
      }
    }
    return true;
  }

  bool w1_dfs() {
    if (stop()) return false;
    size_t mark = trail_.size();
    if (!propagate()) {
      undo(mark);
      return false;
    }
    int8_t v = c_.eval3(st_);
    if (v == T) return accept();
    int pick = -1;
    for (size_t j = 0; j < cands_.size() && pick < 0; ++j) {
      if (in_lower_[j] || !in_upper_[j]) continue;
      for (int k : touches_[j])
        if (st_[k] == U) {
          pick = static_cast<int>(j);
          break;
        }
    }
    if (pick < 0) {
      undo(mark);
      return false;
    }
    size_t mark2 = trail_.size();
    // exclude first, so witnesses stay small
    exclude(pick);
    if (w1_dfs()) return true;
    undo(mark2);
    if (lower_count_ < max_w1_) {
      include(pick);
      if (w1_dfs()) return true;
      undo(mark2);
    }
    undo(mark);
    return false;
  }
};

QsInterpretation build_witness(const Compiled& c, const std::vector<TypeInfo>& types, const Found& f) {
  int n = static_cast<int>(f.types.size());
  std::vector<std::string> w0;
  for (int p = 0; p < n; ++p) w0.push_back("x" + std::to_string(p + 1));
  std::vector<QuasiSaw::Depth1> w1;
  for (size_t k = 0; k < f.w1.size(); ++k) {
    QuasiSaw::Depth1 z{"z" + std::to_string(k + 1), {}};
    for (int p = 0; p < n; ++p)
      if ((f.w1[k] >> p) & 1) z.succ.push_back(w0[p]);
    w1.push_back(std::move(z));
  }
  auto space = std::make_shared<const QuasiSaw>(w0, w1);
  QsInterpretation m{space, {}};
  for (size_t v = 0; v < c.vars.size(); ++v) {
    Bits b(n);
    for (int p = 0; p < n; ++p)
      if ((types[f.types[p]].bits >> v) & 1) b.set(p);
    m.valuation[c.vars[v]] = b;
  }
  return m;
}

}  // namespace

SatResult solve(const FormulaPtr& f, SpaceClass cls, int bound, const SolveOptions& opt, SolveStats* stats) {
  classify(*f);
  if (bound < 1) fail("UsageError", "bound must be positive");
  Compiled c = compile(*f, cls);
  if (c.vars.size() > 20)
    fail("BoundTooLarge", "search supports at most 20 variables, formula has " + std::to_string(c.vars.size()));
  std::vector<TypeInfo> types = admissible_types(c);
  if (opt.seed != 0) {
    std::mt19937_64 rng(opt.seed);
    std::shuffle(types.begin(), types.end(), rng);
  }
  int ceiling = std::min(opt.max_w0, pairs_only(cls) ? 64 : 16);

  Shared sh;
  sh.max_nodes = opt.max_nodes;
  SatResult res;
  res.bound = bound;
  long long max_w1_ll = static_cast<long long>(bound) * bound;
  size_t max_w1 = static_cast<size_t>(std::min<long long>(max_w1_ll, 1LL << 40));

  for (int n = 1; n <= bound; ++n) {
    if (n > ceiling)
      fail("BoundTooLarge", "no model with |W0| <= " + std::to_string(ceiling) +
                                " and the search ceiling is below the requested bound " + std::to_string(bound));
    int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
    long ntasks = static_cast<long>(types.size());
    std::vector<Found> found(types.size());
    sh.best_task = LONG_MAX;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long t = 0; t < ntasks; ++t) {
      if (sh.best_task.load() < t || sh.out_of_budget.load()) continue;
      Search s(c, types, cls, n, max_w1, sh, t);
      if (s.run(static_cast<int>(t))) {
        found[t] = s.found();
        long cur = sh.best_task.load();
        while (t < cur && !sh.best_task.compare_exchange_weak(cur, t)) {
        }
      }
    }
    if (sh.out_of_budget) fail("BoundTooLarge", "search node budget exhausted at |W0| = " + std::to_string(n));
    if (sh.best_task != LONG_MAX) {
      res.sat = true;
      res.witness = build_witness(c, types, found[sh.best_task]);
      if (!verify(*f, res.witness, cls)) fail("InternalError", "search produced a witness that does not verify");
      if (stats) stats->model_w0 = n;
      break;
    }
  }
  if (stats) stats->nodes = sh.nodes;
  return res;
}

SatResult solve_reference(const FormulaPtr& f, SpaceClass cls, int bound) {
  classify(*f);
  if (bound < 1) fail("UsageError", "bound must be positive");
  if (bound > 3) fail("BoundTooLarge", "the reference enumerator is limited to bound 3");
  auto names = variables(*f);
  std::vector<std::string> vars(names.begin(), names.end());
  SatResult res;
  res.bound = bound;
  for (int n = 1; n <= bound; ++n) {
    std::vector<std::string> w0;
    for (int p = 0; p < n; ++p) w0.push_back("x" + std::to_string(p + 1));
    std::vector<unsigned> subsets;
    for (unsigned s = 1; s < (1u << n); ++s)
      if (!pairs_only(cls) || std::popcount(s) <= 2) subsets.push_back(s);
    if (n * vars.size() > 24) fail("BoundTooLarge", "too many variables for the reference enumerator");
    unsigned nvals = 1u << (n * vars.size());
    for (unsigned w = 0; w < (1u << subsets.size()); ++w) {
      if (std::popcount(w) > bound * bound) continue;
      std::vector<QuasiSaw::Depth1> w1;
      for (size_t k = 0; k < subsets.size(); ++k) {
        if (!((w >> k) & 1)) continue;
        QuasiSaw::Depth1 z{"z" + std::to_string(w1.size() + 1), {}};
        for (int p = 0; p < n; ++p)
          if ((subsets[k] >> p) & 1) z.succ.push_back(w0[p]);
        w1.push_back(std::move(z));
      }
      auto space = std::make_shared<const QuasiSaw>(w0, w1);
      if (!in_class(*space, cls)) continue;
      for (unsigned val = 0; val < nvals; ++val) {
        QsInterpretation m{space, {}};
        for (size_t v = 0; v < vars.size(); ++v) {
          Bits b(n);
          for (int p = 0; p < n; ++p)
            if ((val >> (v * n + p)) & 1) b.set(p);
          m.valuation[vars[v]] = b;
        }
        if (eval(m, *f)) {
          res.sat = true;
          res.witness = m;
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace topoconn
