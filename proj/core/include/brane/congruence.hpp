#pragma once
// Structural congruence via canonical forms.
//
// normalize() flattens `|`/`o` chains into sorted child multisets, removes
// units (sigma|0, P o void, <0>[void] -> void), recursively canonicalizes
// cophago/pino arguments and continuations, erases binder name hints and
// fully beta/eta-normalizes the meta layer. Two terms are congruent iff
// their canonical forms are equal; the rendered canonical form is the
// stable byte-string class key.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "brane/term.hpp"
#include "brane/typing.hpp"

namespace brane {

using ClassKey = std::string;

// A term in canonical form together with its class key. Ordered by key, so
// std::set<Canon>/std::map<Canon,...> iterate deterministically.
class Canon {
public:
  const Term& term() const { return t_; }
  const ClassKey& key() const { return k_; }

private:
  Canon(Term t, ClassKey k) : t_(std::move(t)), k_(std::move(k)) {}
  Term t_;
  ClassKey k_;
  friend Canon normalize(const Term&);
};

inline bool operator<(const Canon& a, const Canon& b) { return a.key() < b.key(); }
inline bool operator==(const Canon& a, const Canon& b) { return a.key() == b.key(); }
inline bool operator!=(const Canon& a, const Canon& b) { return a.key() != b.key(); }

Canon normalize(const Term& t);

// de Bruijn plumbing: add `by` to indices >= cutoff / substitute index j /
// does the term mention index j (relative to its own root)?
Term shift(const Term& t, int by, int cutoff = 0);
Term subst(const Term& t, int j, const Term& v);
bool uses_index(const Term& t, int j);

// Finite set of congruence classes, each with a canonical representative.
using ClassSet = std::set<Canon>;

// Structural congruence. Both sides must be well-typed under env with the
// same type (TypeError{Mismatch} otherwise).
bool equiv(const Term& a, const Term& b, const TypeEnv& env = {});

// { [f(x)] | f in fns of arrow type, x in args with matching domain }.
// Pairs that fail to type (or do not match) are skipped.
ClassSet class_apply(const ClassSet& fns, const ClassSet& args);

// Residuals of a class set by a fixed context:
//   residual_par(T, s)  = { [N] : [N | s]   in T }
//   residual_comp(T, P) = { [N] : [N o P]   in T }
//   residual_cell(T, s) = { [B] : [ s[B] ]  in T }   (includes [void] when
//                          s == 0 and [void] in T, since 0[void] == void)
ClassSet residual_par(const ClassSet& T, const Term& sigma);
ClassSet residual_comp(const ClassSet& T, const Term& P);
ClassSet residual_cell(const ClassSet& T, const Term& sigma);

// Multiset difference a \ b on canonical, compare()-sorted child vectors;
// nullopt if b is not contained in a.
std::optional<std::vector<Term>> multiset_subtract(const std::vector<Term>& a,
                                                   const std::vector<Term>& b);

// Rebuild a term from a child multiset: empty -> unit, singleton -> child.
Term par_of(std::vector<Term> parts);
Term comp_of(std::vector<Term> parts);

}  // namespace brane
