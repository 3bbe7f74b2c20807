#pragma once

#include <string>
#include <vector>

#include "topoconn/geometry2d.hpp"
#include "topoconn/syntax.hpp"

namespace topoconn {

enum class FamilyKind {
  PhiK, Wiggly, PhiInf, PhiInfInterior, PsiInf, PhiNotC, Stack, StackW, Frame,
  TildeStack, TildeFrame, EtaStar, Eta, PhiStarInf
};

struct FamilyId {
  FamilyKind kind;
  int n = 0;  // k for PhiK, n for the indexed schemas; ignored otherwise
};

std::string family_name(FamilyKind k);  // CLI spelling, e.g. "phi_k", "tilde_stack"
FamilyKind parse_family(const std::string& s);
bool family_indexed(FamilyKind k);

FormulaPtr generate(const FamilyId& id);

// (r, r~, r°) spelled r, r_m, r_i.
struct ThreeRegionVar {
  std::string outer, middle, inner;
  static ThreeRegionVar named(const std::string& base);
};

FormulaPtr desugar_three_regions(const FormulaPtr& f, const std::vector<ThreeRegionVar>& vars);

FormulaPtr transform_c_to_interior(const FormulaPtr& f);

enum class ContactTarget { Bc, Bci };

// Replaces every negative C literal. Fresh names are fresh_<schema>_<n>, counted per call.
FormulaPtr eliminate_contacts(const FormulaPtr& f, ContactTarget target);

// Schema builders over arbitrary terms. The 3-region forms do not add the implicit conjuncts.
struct Triple {
  TermPtr outer, middle, inner;
};
Triple triple(const ThreeRegionVar& v);
Triple scale(const TermPtr& w, const Triple& a);  // w . a, componentwise

// s2 may be null, meaning s is used on its own
std::vector<FormulaPtr> phi_not_c(const TermPtr& r, const TermPtr& s, const TermPtr& r2, const TermPtr& s2);
std::vector<FormulaPtr> stack(const std::vector<Triple>& a);
std::vector<FormulaPtr> stack_w(const TermPtr& w, const std::vector<Triple>& a);
std::vector<FormulaPtr> frame(const std::vector<Triple>& a);
std::vector<FormulaPtr> tilde_stack(const std::vector<TermPtr>& a);
std::vector<FormulaPtr> tilde_frame(const std::vector<TermPtr>& a);
// v = t0..t5, m1, m2
std::vector<FormulaPtr> eta_star(const TermPtr& r, const TermPtr& s, const std::vector<TermPtr>& v);

enum class WitnessKind { PhiKTriangle, StackChain, TildeFrameRing, OnionTruncation };

std::string witness_name(WitnessKind k);  // "phi_k_triangle", "stack_chain", ...
WitnessKind parse_witness(const std::string& s);

// The formula each witness is built against; its evaluation contract is
// true for all but OnionTruncation, which must fail.
FormulaPtr witness_formula(WitnessKind k, int n);
PolyInterpretation witness(WitnessKind k, int n);

}  // namespace topoconn
