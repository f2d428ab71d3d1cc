#pragma once
// Labelled transition system over canonical forms.
//
// Membrane labels: phago n / cophago n{rho} / exo n / coexo n / pino n{rho}.
// System labels: phago n / cophago n / exo n (residue-valued) and id
// (ground-valued). Transition lists are multisets: one entry per
// derivation, duplicates kept (stochastic aggregation counts them).
// Every step records its derivation tree of rule names; n-ary par/comp
// nodes report rules relative to their right-nested binary reading.

#include <cstddef>
#include <stdexcept>

#include "brane/congruence.hpp"

namespace brane {

struct MemLabel {
  ActionKind kind;
  std::string name;
  std::optional<Canon> arg;  // class of the cophago/pino argument
};
int compare(const MemLabel&, const MemLabel&);
inline bool operator<(const MemLabel& a, const MemLabel& b) { return compare(a, b) < 0; }
inline bool operator==(const MemLabel& a, const MemLabel& b) { return compare(a, b) == 0; }
std::string render(const MemLabel&);

enum class SysLabelKind { Phago, CoPhago, Exo, Id };
struct SysLabel {
  SysLabelKind kind;
  std::string name;  // empty for Id
};
int compare(const SysLabel&, const SysLabel&);
inline bool operator<(const SysLabel& a, const SysLabel& b) { return compare(a, b) < 0; }
inline bool operator==(const SysLabel& a, const SysLabel& b) { return compare(a, b) == 0; }
inline bool operator!=(const SysLabel& a, const SysLabel& b) { return compare(a, b) != 0; }
std::string render(const SysLabel&);

struct Derivation {
  std::string rule;
  std::vector<Derivation> premises;
};

struct MemStep {
  MemLabel label;
  Canon target;
  Derivation deriv;
};

struct SysStep {
  SysLabel label;
  Canon target;  // ground for Id; residue lambda-class otherwise
  Derivation deriv;
};

std::vector<MemStep> mem_steps(const Canon& m);
std::vector<SysStep> sys_steps(const Canon& p);

// One-step reductions, implemented directly from the reduction rules
// (independent of the LTS; serves as its oracle). Multiset of targets.
std::vector<Canon> reduce(const Canon& p);

// ------------------------------------------------- bisimulation

struct BudgetError : std::runtime_error {
  explicit BudgetError(size_t budget)
      : std::runtime_error("state budget exceeded (" + std::to_string(budget) +
                           " states)"),
        budget(budget) {}
  size_t budget;
};

// Instantiation family for residue labels. Verdicts are relative to it:
// refutations are sound, "bisimilar" means no distinguishing context among
// the family's instantiations.
struct InstFamily {
  std::vector<Canon> mems;  // membrane fillers, always includes 0
  std::vector<Canon> syss;  // system fillers, always includes void
};

// {0, phago n, cophago n{0}, exo n, coexo n, pino n{0}} per action name of
// p/q, and {void} plus m[void] for each membrane filler m.
InstFamily default_family(const Term& p, const Term& q);

// Phago instantiation contexts \X. s[ r[X] o R ] for all s,r in fam.mems,
// R in fam.syss.
std::vector<Canon> phago_contexts(const InstFamily& fam);

struct BisimResult {
  bool bisimilar;
  std::vector<std::string> witness;  // distinguishing labels (refutations only)
};

// Strong bisimulation relative to fam over the closure of {p,q} under Id
// successors and instantiated residues. Throws BudgetError if the closure
// exceeds `budget` states and no one-step refutation exists.
BisimResult strong_bisim(const Term& p, const Term& q, const InstFamily& fam,
                         size_t budget = 100000);

}  // namespace brane
