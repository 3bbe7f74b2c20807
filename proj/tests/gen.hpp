#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "topoconn/syntax.hpp"

namespace testgen {

using namespace topoconn;

inline TermPtr zero_or_one(std::mt19937_64& rng);

inline TermPtr random_term(std::mt19937_64& rng, const std::vector<std::string>& names, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 2);
  switch (pick(rng)) {
    case 0: return zero_or_one(rng);
    case 1:
    case 2: return var(names[std::uniform_int_distribution<size_t>(0, names.size() - 1)(rng)]);
    case 3: return sum(random_term(rng, names, depth - 1), random_term(rng, names, depth - 1));
    case 4: return product(random_term(rng, names, depth - 1), random_term(rng, names, depth - 1));
    default: return complement(random_term(rng, names, depth - 1));
  }
}

inline TermPtr zero_or_one(std::mt19937_64& rng) {
  return (rng() & 1) ? one() : zero(); }

inline FormulaPtr random_atom(std::mt19937_64& rng, const std::vector<std::string>& names, int tdepth,
                              bool allow_c = true, bool allow_ci = true) {
  std::vector<int> kinds = {0, 1};
  if (allow_c) kinds.push_back(2);
  if (allow_ci) kinds.push_back(3);
  int k = kinds[std::uniform_int_distribution<size_t>(0, kinds.size() - 1)(rng)];
  switch (k) {
    case 0: return eq(random_term(rng, names, tdepth), random_term(rng, names, tdepth));
    case 1: return contact(random_term(rng, names, tdepth), random_term(rng, names, tdepth));
    case 2: return conn(random_term(rng, names, tdepth));
    default: return iconn(random_term(rng, names, tdepth));
  }
}

inline FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& names, int depth,
                                 int tdepth, bool allow_c = true, bool allow_ci = true) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 3 : 0);
  switch (pick(rng)) {
    case 0: return random_atom(rng, names, tdepth, allow_c, allow_ci);
    case 1:
    case 2:
      return land(random_formula(rng, names, depth - 1, tdepth, allow_c, allow_ci),
                  random_formula(rng, names, depth - 1, tdepth, allow_c, allow_ci));
    default: return lnot(random_formula(rng, names, depth - 1, tdepth, allow_c, allow_ci));
  }
}

// Conjunction of 1..3 literals over the names, at least one of them a negative C.
inline FormulaPtr random_negc_formula(std::mt19937_64& rng, const std::vector<std::string>& names) {
  std::uniform_int_distribution<int> count(0, 2), kind(0, 3);
  std::vector<FormulaPtr> lits{lnot(contact(random_term(rng, names, 1), random_term(rng, names, 1)))};
  for (int i = count(rng); i > 0; --i) {
    auto x = random_term(rng, names, 1), y = random_term(rng, names, 1);
    switch (kind(rng)) {
      case 0: lits.push_back(lnot(contact(x, y))); break;
      case 1: lits.push_back(neq(x, zero())); break;
      case 2: lits.push_back(conn(x)); break;
      default: lits.push_back(eq(x, y)); break;
    }
  }
  std::shuffle(lits.begin(), lits.end(), rng);
  return conj(lits);
}

}  // namespace testgen
