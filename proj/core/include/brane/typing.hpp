#pragma once
// Linear simple types for calculus terms and the lambda meta-layer.
// Base types: sys (systems), mem (membranes), act (actions); arrows for
// residues. The discipline is affine: across the children of any node a
// variable may be consumed at most once; zero uses are fine.

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "brane/term.hpp"

namespace brane {

enum class TypeErrorKind { Mismatch, Linearity, Unbound, ActionArg };

struct TypeError : std::runtime_error {
  TypeError(TypeErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  TypeErrorKind kind;
};

using TypeEnv = std::map<std::string, Type>;

struct Inferred {
  Type type;
  std::set<std::string> used;  // free variables consumed by the term
};

// Infers the unique type of t under env, enforcing linearity. Throws
// TypeError: Mismatch (ill-sorted node or application), Linearity (variable
// consumed twice), Unbound (free variable not in env / dangling index),
// ActionArg (cophago/pino argument is not a membrane).
Inferred infer(const TypeEnv& env, const Term& t);

// True iff t infers exactly to `expected`. Structural errors still throw.
bool check(const TypeEnv& env, const Term& t, const Type& expected);

}  // namespace brane
