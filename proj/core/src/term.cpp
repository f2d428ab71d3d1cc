#include "brane/term.hpp"

namespace brane {

// ---------------------------------------------------------------- types

Type Type::sys() {
  static const Type t{std::make_shared<const Node>(Node{TypeKind::Sys, {}, {}})};
  return t;
}
Type Type::mem() {
  static const Type t{std::make_shared<const Node>(Node{TypeKind::Mem, {}, {}})};
  return t;
}
Type Type::act() {
  static const Type t{std::make_shared<const Node>(Node{TypeKind::Act, {}, {}})};
  return t;
}
Type Type::arrow(Type from, Type to) {
  return Type{std::make_shared<const Node>(
      Node{TypeKind::Arrow, std::move(from), std::move(to)})};
}
const Type& Type::from() const {
  assert(node_->kind == TypeKind::Arrow);
  return *node_->a;
}
const Type& Type::to() const {
  assert(node_->kind == TypeKind::Arrow);
  return *node_->b;
}

int compare(const Type& x, const Type& y) {
  if (x.node_ == y.node_) return 0;
  int k = static_cast<int>(x.kind()) - static_cast<int>(y.kind());
  if (k != 0) return k < 0 ? -1 : 1;
  if (x.kind() != TypeKind::Arrow) return 0;
  if (int c = compare(x.from(), y.from())) return c;
  return compare(x.to(), y.to());
}

// ---------------------------------------------------------------- terms

Term Term::mem_zero() {
  static const Term t = [] {
    Node n;
    n.kind = TermKind::MemZero;
    return Term{std::make_shared<const Node>(std::move(n))};
  }();
  return t;
}
Term Term::sys_void() {
  static const Term t = [] {
    Node n;
    n.kind = TermKind::SysVoid;
    return Term{std::make_shared<const Node>(std::move(n))};
  }();
  return t;
}
Term Term::free_var(std::string name) {
  Node n;
  n.kind = TermKind::FreeVar;
  n.text = std::move(name);
  return Term{std::make_shared<const Node>(std::move(n))};
}
Term Term::bound_var(int index, std::string hint) {
  assert(index >= 0);
  Node n;
  n.kind = TermKind::BoundVar;
  n.index = index;
  n.text = std::move(hint);
  return Term{std::make_shared<const Node>(std::move(n))};
}
Term Term::prefix(Action a, Term cont) {
  assert(action_has_arg(a.kind) == a.arg.has_value());
  Node n;
  n.kind = TermKind::Prefix;
  n.act = a.kind;
  n.text = std::move(a.name);
  if (a.arg) n.kids.push_back(std::move(*a.arg));
  n.kids.push_back(std::move(cont));
  return Term{std::make_shared<const Node>(std::move(n))};
}
Term Term::mem_par(std::vector<Term> parts) {
  assert(!parts.empty());
  if (parts.size() == 1) return parts.front();
  Node n;
  n.kind = TermKind::MemPar;
  n.kids = std::move(parts);
  return Term{std::make_shared<const Node>(std::move(n))};
}
Term Term::sys_comp(std::vector<Term> parts) {
  assert(!parts.empty());
  if (parts.size() == 1) return parts.front();
  Node n;
  n.kind = TermKind::SysComp;
  n.kids = std::move(parts);
  return Term{std::make_shared<const Node>(std::move(n))};
}
Term Term::cell(Term membrane, Term body) {
  Node n;
  n.kind = TermKind::Cell;
  n.kids = {std::move(membrane), std::move(body)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
Term Term::lambda(std::string hint, Type annot, Term body) {
  Node n;
  n.kind = TermKind::Lambda;
  n.text = std::move(hint);
  n.annot = std::move(annot);
  n.kids = {std::move(body)};
  return Term{std::make_shared<const Node>(std::move(n))};
}
Term Term::app(Term fn, Term arg) {
  Node n;
  n.kind = TermKind::App;
  n.kids = {std::move(fn), std::move(arg)};
  return Term{std::make_shared<const Node>(std::move(n))};
}

const std::string& Term::name() const {
  assert(kind() == TermKind::FreeVar);
  return node_->text;
}
int Term::index() const {
  assert(kind() == TermKind::BoundVar);
  return node_->index;
}
const std::string& Term::hint() const {
  assert(kind() == TermKind::BoundVar || kind() == TermKind::Lambda);
  return node_->text;
}
Action Term::action() const {
  assert(kind() == TermKind::Prefix);
  Action a{node_->act, node_->text, {}};
  if (action_has_arg(node_->act)) a.arg = node_->kids.front();
  return a;
}
const Term& Term::cont() const {
  assert(kind() == TermKind::Prefix);
  return node_->kids.back();
}
const std::vector<Term>& Term::parts() const {
  assert(kind() == TermKind::MemPar || kind() == TermKind::SysComp);
  return node_->kids;
}
const Term& Term::membrane() const {
  assert(kind() == TermKind::Cell);
  return node_->kids[0];
}
const Term& Term::body() const {
  assert(kind() == TermKind::Cell || kind() == TermKind::Lambda);
  return node_->kids.back();
}
const Type& Term::annot() const {
  assert(kind() == TermKind::Lambda);
  return *node_->annot;
}
const Term& Term::fn() const {
  assert(kind() == TermKind::App);
  return node_->kids[0];
}
const Term& Term::arg() const {
  assert(kind() == TermKind::App);
  return node_->kids[1];
}

namespace {

int cmp_int(int a, int b) { return a < b ? -1 : a > b ? 1 : 0; }

int compare_impl(const Term& x, const Term& y, bool with_hints) {
  if (int c = cmp_int(static_cast<int>(x.kind()), static_cast<int>(y.kind())))
    return c;
  switch (x.kind()) {
    case TermKind::MemZero:
    case TermKind::SysVoid:
      return 0;
    case TermKind::FreeVar: {
      int c = x.name().compare(y.name());
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case TermKind::BoundVar: {
      if (int c = cmp_int(x.index(), y.index())) return c;
      if (with_hints) {
        int c = x.hint().compare(y.hint());
        return c < 0 ? -1 : c > 0 ? 1 : 0;
      }
      return 0;
    }
    case TermKind::Prefix: {
      Action a = x.action(), b = y.action();
      if (int c = cmp_int(static_cast<int>(a.kind), static_cast<int>(b.kind)))
        return c;
      if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
      if (a.arg) {
        if (int c = compare_impl(*a.arg, *b.arg, with_hints)) return c;
      }
      return compare_impl(x.cont(), y.cont(), with_hints);
    }
    case TermKind::MemPar:
    case TermKind::SysComp: {
      const auto& xs = x.parts();
      const auto& ys = y.parts();
      if (int c = cmp_int(static_cast<int>(xs.size()), static_cast<int>(ys.size())))
        return c;
      for (size_t i = 0; i < xs.size(); ++i)
        if (int c = compare_impl(xs[i], ys[i], with_hints)) return c;
      return 0;
    }
    case TermKind::Cell: {
      if (int c = compare_impl(x.membrane(), y.membrane(), with_hints)) return c;
      return compare_impl(x.body(), y.body(), with_hints);
    }
    case TermKind::Lambda: {
      if (int c = compare(x.annot(), y.annot())) return c;
      if (with_hints) {
        int c = x.hint().compare(y.hint());
        if (c != 0) return c < 0 ? -1 : 1;
      }
      return compare_impl(x.body(), y.body(), with_hints);
    }
    case TermKind::App: {
      if (int c = compare_impl(x.fn(), y.fn(), with_hints)) return c;
      return compare_impl(x.arg(), y.arg(), with_hints);
    }
  }
  return 0;  // unreachable
}

}  // namespace

int compare(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return 0;
  return compare_impl(x, y, false);
}

bool equal_exact(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return true;
  return compare_impl(x, y, true) == 0;
}

std::vector<Term> par_multiset(const Term& m) {
  if (m.is(TermKind::MemZero)) return {};
  if (m.is(TermKind::MemPar)) return m.parts();
  return {m};
}

std::vector<Term> comp_multiset(const Term& p) {
  if (p.is(TermKind::SysVoid)) return {};
  if (p.is(TermKind::SysComp)) return p.parts();
  return {p};
}

namespace {
void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::MemZero:
    case TermKind::SysVoid:
    case TermKind::FreeVar:
    case TermKind::BoundVar:
      return;
    case TermKind::Prefix: {
      Action a = t.action();
      out.insert(a.name);
      if (a.arg) collect_names(*a.arg, out);
      collect_names(t.cont(), out);
      return;
    }
    case TermKind::MemPar:
    case TermKind::SysComp:
      for (const auto& k : t.parts()) collect_names(k, out);
      return;
    case TermKind::Cell:
      collect_names(t.membrane(), out);
      collect_names(t.body(), out);
      return;
    case TermKind::Lambda:
      collect_names(t.body(), out);
      return;
    case TermKind::App:
      collect_names(t.fn(), out);
      collect_names(t.arg(), out);
      return;
  }
}
}  // namespace

std::set<std::string> action_names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

}  // namespace brane
