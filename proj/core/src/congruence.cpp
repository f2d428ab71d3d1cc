#include "brane/congruence.hpp"

#include <algorithm>

#include "brane/syntax.hpp"

namespace brane {

// Add `by` to every de Bruijn index >= cutoff.
Term shift(const Term& t, int by, int cutoff) {
  switch (t.kind()) {
    case TermKind::MemZero:
    case TermKind::SysVoid:
    case TermKind::FreeVar:
      return t;
    case TermKind::BoundVar:
      if (t.index() >= cutoff) return Term::bound_var(t.index() + by, t.hint());
      return t;
    case TermKind::Prefix: {
      Action a = t.action();
      if (a.arg) a.arg = shift(*a.arg, by, cutoff);
      return Term::prefix(std::move(a), shift(t.cont(), by, cutoff));
    }
    case TermKind::MemPar: {
      std::vector<Term> ks;
      for (const auto& k : t.parts()) ks.push_back(shift(k, by, cutoff));
      return Term::mem_par(std::move(ks));
    }
    case TermKind::SysComp: {
      std::vector<Term> ks;
      for (const auto& k : t.parts()) ks.push_back(shift(k, by, cutoff));
      return Term::sys_comp(std::move(ks));
    }
    case TermKind::Cell:
      return Term::cell(shift(t.membrane(), by, cutoff), shift(t.body(), by, cutoff));
    case TermKind::Lambda:
      return Term::lambda(t.hint(), t.annot(), shift(t.body(), by, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t.fn(), by, cutoff), shift(t.arg(), by, cutoff));
  }
  return t;  // unreachable
}

// Capture-free substitution of index j by v; indices above j shift down.
Term subst(const Term& t, int j, const Term& v) {
  switch (t.kind()) {
    case TermKind::MemZero:
    case TermKind::SysVoid:
    case TermKind::FreeVar:
      return t;
    case TermKind::BoundVar:
      if (t.index() == j) return shift(v, j, 0);
      if (t.index() > j) return Term::bound_var(t.index() - 1, t.hint());
      return t;
    case TermKind::Prefix: {
      Action a = t.action();
      if (a.arg) a.arg = subst(*a.arg, j, v);
      return Term::prefix(std::move(a), subst(t.cont(), j, v));
    }
    case TermKind::MemPar: {
      std::vector<Term> ks;
      for (const auto& k : t.parts()) ks.push_back(subst(k, j, v));
      return Term::mem_par(std::move(ks));
    }
    case TermKind::SysComp: {
      std::vector<Term> ks;
      for (const auto& k : t.parts()) ks.push_back(subst(k, j, v));
      return Term::sys_comp(std::move(ks));
    }
    case TermKind::Cell:
      return Term::cell(subst(t.membrane(), j, v), subst(t.body(), j, v));
    case TermKind::Lambda:
      return Term::lambda(t.hint(), t.annot(), subst(t.body(), j + 1, v));
    case TermKind::App:
      return Term::app(subst(t.fn(), j, v), subst(t.arg(), j, v));
  }
  return t;  // unreachable
}

bool uses_index(const Term& t, int j) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      return t.index() == j;
    case TermKind::Prefix: {
      Action a = t.action();
      if (a.arg && uses_index(*a.arg, j)) return true;
      return uses_index(t.cont(), j);
    }
    case TermKind::MemPar:
    case TermKind::SysComp:
      for (const auto& k : t.parts())
        if (uses_index(k, j)) return true;
      return false;
    case TermKind::Cell:
      return uses_index(t.membrane(), j) || uses_index(t.body(), j);
    case TermKind::Lambda:
      return uses_index(t.body(), j + 1);
    case TermKind::App:
      return uses_index(t.fn(), j) || uses_index(t.arg(), j);
    default:
      return false;
  }
}

namespace {

Term norm(const Term& t) {
  switch (t.kind()) {
    case TermKind::MemZero:
    case TermKind::SysVoid:
    case TermKind::FreeVar:
      return t;
    case TermKind::BoundVar:
      return t.hint().empty() ? t : Term::bound_var(t.index());
    case TermKind::Prefix: {
      Action a = t.action();
      if (a.arg) a.arg = norm(*a.arg);
      return Term::prefix(std::move(a), norm(t.cont()));
    }
    case TermKind::MemPar:
    case TermKind::SysComp: {
      bool par = t.is(TermKind::MemPar);
      TermKind same = par ? TermKind::MemPar : TermKind::SysComp;
      TermKind unit = par ? TermKind::MemZero : TermKind::SysVoid;
      std::vector<Term> ks;
      for (const auto& k : t.parts()) {
        Term n = norm(k);
        if (n.is(unit)) continue;
        if (n.is(same))  // children of a canonical node are already flat
          ks.insert(ks.end(), n.parts().begin(), n.parts().end());
        else
          ks.push_back(std::move(n));
      }
      if (ks.empty()) return par ? Term::mem_zero() : Term::sys_void();
      std::sort(ks.begin(), ks.end(),
                [](const Term& a, const Term& b) { return compare(a, b) < 0; });
      return par ? Term::mem_par(std::move(ks)) : Term::sys_comp(std::move(ks));
    }
    case TermKind::Cell: {
      Term m = norm(t.membrane());
      Term b = norm(t.body());
      if (m.is(TermKind::MemZero) && b.is(TermKind::SysVoid))
        return Term::sys_void();
      return Term::cell(std::move(m), std::move(b));
    }
    case TermKind::Lambda: {
      Term b = norm(t.body());
      // eta: \x. f(x) -> f  when f does not use x.
      if (b.is(TermKind::App) && b.arg().is(TermKind::BoundVar) &&
          b.arg().index() == 0 && !uses_index(b.fn(), 0))
        return norm(shift(b.fn(), -1, 0));
      return Term::lambda("", t.annot(), std::move(b));
    }
    case TermKind::App: {
      Term f = norm(t.fn());
      Term a = norm(t.arg());
      if (f.is(TermKind::Lambda))  // beta
        return norm(subst(f.body(), 0, a));
      return Term::app(std::move(f), std::move(a));
    }
  }
  return t;  // unreachable
}

}  // namespace

Canon normalize(const Term& t) {
  Term n = norm(t);
  std::string key = render(n);
  return Canon(std::move(n), std::move(key));
}

bool equiv(const Term& a, const Term& b, const TypeEnv& env) {
  Type ta = infer(env, a).type;
  Type tb = infer(env, b).type;
  if (ta != tb)
    throw TypeError(TypeErrorKind::Mismatch,
                    "cannot compare terms of different types (" + render(ta) +
                        " vs " + render(tb) + ")");
  return normalize(a).key() == normalize(b).key();
}

ClassSet class_apply(const ClassSet& fns, const ClassSet& args) {
  ClassSet out;
  for (const auto& f : fns) {
    Type ft = Type::sys();
    try {
      ft = infer({}, f.term()).type;
    } catch (const TypeError&) {
      continue;  // open or malformed representative
    }
    if (ft.kind() != TypeKind::Arrow) continue;
    for (const auto& x : args) {
      try {
        if (infer({}, x.term()).type != ft.from()) continue;
      } catch (const TypeError&) {
        continue;
      }
      out.insert(normalize(Term::app(f.term(), x.term())));
    }
  }
  return out;
}

std::optional<std::vector<Term>> multiset_subtract(const std::vector<Term>& a,
                                                   const std::vector<Term>& b) {
  std::vector<Term> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i], b[j]);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c == 0) {
      ++i;
      ++j;
    } else {
      return std::nullopt;  // b[j] not present in a
    }
  }
  if (j < b.size()) return std::nullopt;
  for (; i < a.size(); ++i) out.push_back(a[i]);
  return out;
}

Term par_of(std::vector<Term> parts) {
  if (parts.empty()) return Term::mem_zero();
  return Term::mem_par(std::move(parts));
}

Term comp_of(std::vector<Term> parts) {
  if (parts.empty()) return Term::sys_void();
  return Term::sys_comp(std::move(parts));
}

ClassSet residual_par(const ClassSet& T, const Term& sigma) {
  Canon s = normalize(sigma);
  std::vector<Term> sparts = par_multiset(s.term());
  ClassSet out;
  for (const auto& g : T) {
    if (auto rest = multiset_subtract(par_multiset(g.term()), sparts))
      out.insert(normalize(par_of(std::move(*rest))));
  }
  return out;
}

ClassSet residual_comp(const ClassSet& T, const Term& P) {
  Canon p = normalize(P);
  std::vector<Term> pparts = comp_multiset(p.term());
  ClassSet out;
  for (const auto& g : T) {
    if (auto rest = multiset_subtract(comp_multiset(g.term()), pparts))
      out.insert(normalize(comp_of(std::move(*rest))));
  }
  return out;
}

ClassSet residual_cell(const ClassSet& T, const Term& sigma) {
  Canon s = normalize(sigma);
  ClassSet out;
  for (const auto& g : T) {
    if (g.term().is(TermKind::Cell) && equal(g.term().membrane(), s.term()))
      out.insert(normalize(g.term().body()));
    else if (g.term().is(TermKind::SysVoid) && s.term().is(TermKind::MemZero))
      out.insert(normalize(Term::sys_void()));
  }
  return out;
}

}  // namespace brane
