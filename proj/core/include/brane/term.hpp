#pragma once
// Immutable term representation for the finite Brane Calculus with its
// simply-typed lambda meta-layer. Terms are shared, persistent trees with
// value semantics; all mutation happens by building new terms.
//
// Par (`|`) and comp (`o`) nodes are n-ary: the parser produces one flat
// node per operator chain, and canonicalization (congruence.hpp) flattens
// arbitrary nestings into sorted child multisets. Binders are locally
// nameless: bound occurrences carry a de Bruijn index (0 = innermost
// enclosing lambda) plus a name hint used only for rendering.

#include <cassert>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace brane {

// ---------------------------------------------------------------- types

enum class TypeKind { Sys, Mem, Act, Arrow };

class Type {
public:
  static Type sys();
  static Type mem();
  static Type act();
  static Type arrow(Type from, Type to);

  TypeKind kind() const;
  bool is_base() const;
  const Type& from() const;  // Arrow only
  const Type& to() const;    // Arrow only

private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend int compare(const Type&, const Type&);
};

struct Type::Node {
  TypeKind kind;
  std::optional<Type> a, b;  // Arrow: a -> b
};

inline TypeKind Type::kind() const { return node_->kind; }
inline bool Type::is_base() const { return node_->kind != TypeKind::Arrow; }

int compare(const Type& x, const Type& y);
inline bool operator==(const Type& x, const Type& y) { return compare(x, y) == 0; }
inline bool operator!=(const Type& x, const Type& y) { return compare(x, y) != 0; }

// ---------------------------------------------------------------- terms

enum class TermKind {
  MemZero,   // 0
  SysVoid,   // void
  FreeVar,   // $x
  BoundVar,  // lambda-bound occurrence, de Bruijn index
  Prefix,    // action . continuation
  MemPar,    // m1 | m2 | ...
  SysComp,   // p1 o p2 o ...
  Cell,      // membrane [ body ]
  Lambda,    // \x:T. body
  App,       // f(a)
};

enum class ActionKind { Phago, CoPhago, Exo, CoExo, Pino };

// Does the action kind carry a membrane argument (cophago n{m} / pino n{m})?
inline bool action_has_arg(ActionKind k) {
  return k == ActionKind::CoPhago || k == ActionKind::Pino;
}

class Term;
struct Action;

class Term {
public:
  static Term mem_zero();
  static Term sys_void();
  static Term free_var(std::string name);
  static Term bound_var(int index, std::string hint = "");
  static Term prefix(Action a, Term cont);
  static Term mem_par(std::vector<Term> parts);  // parts may be any size >= 1
  static Term sys_comp(std::vector<Term> parts);
  static Term cell(Term membrane, Term body);
  static Term lambda(std::string hint, Type annot, Term body);
  static Term app(Term fn, Term arg);

  TermKind kind() const;
  bool is(TermKind k) const;

  const std::string& name() const;   // FreeVar
  int index() const;                 // BoundVar
  const std::string& hint() const;   // BoundVar / Lambda
  Action action() const;             // Prefix
  const Term& cont() const;          // Prefix continuation
  const std::vector<Term>& parts() const;  // MemPar / SysComp
  const Term& membrane() const;      // Cell
  const Term& body() const;          // Cell / Lambda
  const Type& annot() const;         // Lambda
  const Term& fn() const;            // App
  const Term& arg() const;           // App

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend int compare(const Term&, const Term&);
  friend bool equal_exact(const Term&, const Term&);
};

struct Term::Node {
  TermKind kind{};
  ActionKind act{};          // Prefix
  int index = 0;             // BoundVar
  std::string text;          // FreeVar name, BoundVar/Lambda hint, Prefix action name
  std::optional<Type> annot; // Lambda
  std::vector<Term> kids;    // Prefix: [arg,] cont; Cell: mem, body; App: fn, arg
};

inline TermKind Term::kind() const { return node_->kind; }
inline bool Term::is(TermKind k) const { return node_->kind == k; }

// Value view of a prefix head. `arg` is set iff action_has_arg(kind).
struct Action {
  ActionKind kind;
  std::string name;
  std::optional<Term> arg;
};

// Alpha-invariant structural three-way comparison: de Bruijn indices and
// lambda annotations are compared, name hints are ignored. Total order used
// for canonical child sorting.
int compare(const Term& x, const Term& y);
inline bool equal(const Term& x, const Term& y) { return compare(x, y) == 0; }
inline bool operator<(const Term& x, const Term& y) { return compare(x, y) < 0; }

// Like equal() but also compares binder/bound-var name hints. Used by
// round-trip tests.
bool equal_exact(const Term& x, const Term& y);

// Child multiset views used by canonicalization and the set operations:
// 0 / void are the empty multiset, a par/comp node contributes its parts,
// anything else is a singleton.
std::vector<Term> par_multiset(const Term& m);
std::vector<Term> comp_multiset(const Term& p);

// All action names occurring anywhere in the term (including inside
// cophago/pino arguments, continuations and lambda bodies).
std::set<std::string> action_names(const Term& t);

}  // namespace brane
