#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace topoconn {

enum class TermKind { Var, Zero, One, Sum, Product, Complement };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;  // Var only
  TermPtr left;      // Sum, Product, Complement
  TermPtr right;     // Sum, Product
};

enum class FormulaKind { Eq, Contact, Conn, IntConn, And, Not };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  TermPtr a, b;        // Eq, Contact use both; Conn, IntConn use a
  FormulaPtr f, g;     // And uses both; Not uses f
};

// Term constructors.
TermPtr var(const std::string& name);
TermPtr zero();
TermPtr one();
TermPtr sum(TermPtr l, TermPtr r);
TermPtr product(TermPtr l, TermPtr r);
TermPtr complement(TermPtr t);
// Left-nested sum of a non-empty list; empty list gives 0.
TermPtr sum_of(const std::vector<TermPtr>& ts);

// Formula constructors.
FormulaPtr eq(TermPtr l, TermPtr r);
FormulaPtr contact(TermPtr l, TermPtr r);
FormulaPtr conn(TermPtr t);
FormulaPtr iconn(TermPtr t);
FormulaPtr land(FormulaPtr l, FormulaPtr r);
FormulaPtr lnot(FormulaPtr f);

// Sugar, expanded into the core constructors.
FormulaPtr neq(TermPtr l, TermPtr r);          // !(l = r)
FormulaPtr leq(TermPtr l, TermPtr r);          // l * -r = 0
FormulaPtr within(TermPtr l, TermPtr r);       // l << r, i.e. !C(l, -r)
FormulaPtr disjoint(TermPtr l, TermPtr r);     // !C(l, r)
FormulaPtr lor(FormulaPtr l, FormulaPtr r);    // De Morgan
// Left-nested conjunction; the empty conjunction is "1 = 1".
FormulaPtr conj(const std::vector<FormulaPtr>& fs);

bool equal(const Term& x, const Term& y);
bool equal(const Formula& x, const Formula& y);

// Flatten top-level And nodes, left to right.
std::vector<FormulaPtr> conjuncts(const FormulaPtr& f);
std::set<std::string> variables(const Formula& f);
std::set<std::string> variables(const Term& t);
size_t atom_count(const Formula& f);
bool is_atom(const Formula& f);

FormulaPtr parse(const std::string& text);
TermPtr parse_term(const std::string& text);
std::string print(const Formula& f);
std::string print(const Term& t);
inline std::string print(const FormulaPtr& f) { return print(*f); }
inline std::string print(const TermPtr& t) { return print(*t); }

enum class LanguageTag { B, BC, Bc, Bci, BCc, BCci };
std::string tag_name(LanguageTag t);
LanguageTag classify(const Formula& f);
// Partial order of the language lattice.
bool tag_leq(LanguageTag a, LanguageTag b);

enum class Pred { Contact, Conn, IntConn };

struct Occurrence {
  std::vector<int> path;  // child indices from the root: 0 = f / left, 1 = g
  int sign;               // +1 or -1
};
std::vector<Occurrence> polarity(const Formula& f, Pred p);
std::string path_string(const std::vector<int>& path);

// Rebuild f bottom-up, replacing each atom with fn(atom, sign).
template <class Fn>
FormulaPtr map_atoms(const FormulaPtr& f, Fn&& fn, int sign = 1) {
  switch (f->kind) {
    case FormulaKind::And:
      return land(map_atoms(f->f, fn, sign), map_atoms(f->g, fn, sign));
    case FormulaKind::Not:
      return lnot(map_atoms(f->f, fn, -sign));
    default:
      return fn(f, sign);
  }
}

}  // namespace topoconn
