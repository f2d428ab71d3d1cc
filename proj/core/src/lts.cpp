#include "brane/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace brane {

namespace {

const char* action_word(ActionKind k) {
  switch (k) {
    case ActionKind::Phago: return "phago";
    case ActionKind::CoPhago: return "cophago";
    case ActionKind::Exo: return "exo";
    case ActionKind::CoExo: return "coexo";
    case ActionKind::Pino: return "pino";
  }
  return "?";
}

}  // namespace

int compare(const MemLabel& a, const MemLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  bool ha = a.arg.has_value(), hb = b.arg.has_value();
  if (ha != hb) return ha < hb ? -1 : 1;
  if (!ha) return 0;
  if (a.arg->key() == b.arg->key()) return 0;
  return a.arg->key() < b.arg->key() ? -1 : 1;
}

std::string render(const MemLabel& l) {
  std::string out = action_word(l.kind);
  out += ' ';
  out += l.name;
  if (l.arg) {
    out += '{';
    out += l.arg->key();
    out += '}';
  }
  return out;
}

int compare(const SysLabel& a, const SysLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  return 0;
}

std::string render(const SysLabel& l) {
  switch (l.kind) {
    case SysLabelKind::Phago: return "phago " + l.name;
    case SysLabelKind::CoPhago: return "cophago " + l.name;
    case SysLabelKind::Exo: return "exo " + l.name;
    case SysLabelKind::Id: return "id";
  }
  return "?";
}

namespace {

Derivation leaf(const char* rule) { return Derivation{rule, {}}; }
Derivation node(const char* rule, std::vector<Derivation> prem) {
  return Derivation{rule, std::move(prem)};
}

// Lift a derivation of child `idx` of a right-nested spine that covers
// children lo..k-1: an L-wrapper unless idx is the last child, then one
// R-wrapper per level descended.
Derivation lift(Derivation d, const char* lname, const char* rname, size_t idx,
                size_t lo, size_t k) {
  if (idx + 1 < k) d = node(lname, {std::move(d)});
  for (size_t i = lo; i < idx; ++i) d = node(rname, {std::move(d)});
  return d;
}

const char* lname_for(SysLabelKind k) {
  switch (k) {
    case SysLabelKind::Phago: return "L-comp-phago";
    case SysLabelKind::CoPhago: return "L-comp-cophago";
    case SysLabelKind::Exo: return "L-comp-exo";
    case SysLabelKind::Id: return "L-comp-id";
  }
  return "?";
}
const char* rname_for(SysLabelKind k) {
  switch (k) {
    case SysLabelKind::Phago: return "R-comp-phago";
    case SysLabelKind::CoPhago: return "R-comp-cophago";
    case SysLabelKind::Exo: return "R-comp-exo";
    case SysLabelKind::Id: return "R-comp-id";
  }
  return "?";
}

Type res_phago_type() { return Type::arrow(Type::sys(), Type::sys()); }

// lambda Z:(sys->sys). Z(inner)
Term residue_phago(const Term& inner) {
  return Term::lambda("Z", res_phago_type(),
                      Term::app(Term::bound_var(0, "Z"), inner));
}

std::vector<Term> with_replaced(const std::vector<Term>& parts, size_t i,
                                const Term& t) {
  std::vector<Term> out = parts;
  out[i] = t;
  return out;
}

std::vector<Term> without(const std::vector<Term>& parts, size_t i) {
  std::vector<Term> out;
  out.reserve(parts.size() - 1);
  for (size_t j = 0; j < parts.size(); ++j)
    if (j != i) out.push_back(parts[j]);
  return out;
}

std::vector<Term> without2(const std::vector<Term>& parts, size_t i, size_t j) {
  std::vector<Term> out;
  out.reserve(parts.size() - 2);
  for (size_t k = 0; k < parts.size(); ++k)
    if (k != i && k != j) out.push_back(parts[k]);
  return out;
}

std::vector<MemStep> steps_of_mem(const Term& m);
std::vector<SysStep> steps_of_sys(const Term& p);

std::vector<MemStep> steps_of_mem(const Term& m) {
  std::vector<MemStep> out;
  switch (m.kind()) {
    case TermKind::Prefix: {
      const Action& a = m.action();
      MemLabel l{a.kind, a.name, {}};
      const char* rule = nullptr;
      switch (a.kind) {
        case ActionKind::Phago: rule = "phago-pref"; break;
        case ActionKind::CoPhago: rule = "cophago-pref"; break;
        case ActionKind::Exo: rule = "exo-pref"; break;
        case ActionKind::CoExo: rule = "coexo-pref"; break;
        case ActionKind::Pino: rule = "pino-pref"; break;
      }
      if (a.arg) l.arg = normalize(*a.arg);
      out.push_back({std::move(l), normalize(m.cont()), leaf(rule)});
      break;
    }
    case TermKind::MemPar: {
      const auto& parts = m.parts();
      size_t k = parts.size();
      for (size_t i = 0; i < k; ++i) {
        for (MemStep s : steps_of_mem(parts[i])) {
          Term t = Term::mem_par(with_replaced(parts, i, s.target.term()));
          out.push_back({std::move(s.label), normalize(t),
                         lift(std::move(s.deriv), "L-par", "R-par", i, 0, k)});
        }
      }
      break;
    }
    default:
      break;  // 0, variables, anything stuck: no transitions
  }
  return out;
}

std::vector<SysStep> steps_of_sys(const Term& p) {
  std::vector<SysStep> out;
  switch (p.kind()) {
    case TermKind::Cell: {
      const Term& sigma = p.membrane();
      const Term& body = p.body();
      std::vector<MemStep> msteps = steps_of_mem(sigma);
      std::vector<SysStep> qsteps = steps_of_sys(body);
      for (const MemStep& ms : msteps) {
        const Term& cont = ms.target.term();
        switch (ms.label.kind) {
          case ActionKind::Phago: {
            Term res = residue_phago(Term::cell(cont, body));
            out.push_back({{SysLabelKind::Phago, ms.label.name},
                           normalize(res),
                           node("phago", {ms.deriv})});
            break;
          }
          case ActionKind::CoPhago: {
            Term res = Term::lambda(
                "X", Type::sys(),
                Term::cell(cont,
                           Term::sys_comp({Term::cell(ms.label.arg->term(),
                                                      Term::bound_var(0, "X")),
                                           body})));
            out.push_back({{SysLabelKind::CoPhago, ms.label.name},
                           normalize(res),
                           node("cophago", {ms.deriv})});
            break;
          }
          case ActionKind::Exo: {
            Term res = Term::lambda(
                "X", Type::sys(),
                Term::lambda(
                    "y", Type::mem(),
                    Term::sys_comp(
                        {Term::cell(
                             Term::mem_par({cont, Term::bound_var(0, "y")}),
                             Term::bound_var(1, "X")),
                         body})));
            out.push_back({{SysLabelKind::Exo, ms.label.name},
                           normalize(res),
                           node("exo", {ms.deriv})});
            break;
          }
          case ActionKind::Pino: {
            Term t = Term::cell(
                cont, Term::sys_comp(
                          {Term::cell(ms.label.arg->term(), Term::sys_void()),
                           body}));
            out.push_back({{SysLabelKind::Id, ""},
                           normalize(t),
                           node("id-pino", {ms.deriv})});
            break;
          }
          case ActionKind::CoExo: {
            for (const SysStep& qs : qsteps) {
              if (qs.label.kind != SysLabelKind::Exo ||
                  qs.label.name != ms.label.name)
                continue;
              Term t = Term::app(Term::app(qs.target.term(), Term::sys_void()),
                                 cont);
              out.push_back({{SysLabelKind::Id, ""},
                             normalize(t),
                             node("id-exo", {qs.deriv, ms.deriv})});
            }
            break;
          }
        }
      }
      for (const SysStep& qs : qsteps) {
        if (qs.label.kind != SysLabelKind::Id) continue;
        Term t = Term::cell(sigma, qs.target.term());
        out.push_back(
            {{SysLabelKind::Id, ""}, normalize(t), node("id-loc", {qs.deriv})});
      }
      break;
    }
    case TermKind::SysComp: {
      const auto& parts = p.parts();
      size_t k = parts.size();
      std::vector<std::vector<SysStep>> csteps(k);
      for (size_t i = 0; i < k; ++i) csteps[i] = steps_of_sys(parts[i]);
      for (size_t i = 0; i < k; ++i) {
        std::vector<Term> rest = without(parts, i);
        for (const SysStep& s : csteps[i]) {
          Derivation d = lift(s.deriv, lname_for(s.label.kind),
                              rname_for(s.label.kind), i, 0, k);
          Term t = Term::sys_void();
          switch (s.label.kind) {
            case SysLabelKind::Id: {
              t = Term::sys_comp(with_replaced(parts, i, s.target.term()));
              break;
            }
            case SysLabelKind::Phago: {
              std::vector<Term> body{
                  Term::app(s.target.term(), Term::bound_var(0, "Z"))};
              body.insert(body.end(), rest.begin(), rest.end());
              t = Term::lambda("Z", res_phago_type(), Term::sys_comp(body));
              break;
            }
            case SysLabelKind::CoPhago: {
              std::vector<Term> body{
                  Term::app(s.target.term(), Term::bound_var(0, "X"))};
              body.insert(body.end(), rest.begin(), rest.end());
              t = Term::lambda("X", Type::sys(), Term::sys_comp(body));
              break;
            }
            case SysLabelKind::Exo: {
              std::vector<Term> grown{Term::bound_var(1, "X")};
              grown.insert(grown.end(), rest.begin(), rest.end());
              t = Term::lambda(
                  "X", Type::sys(),
                  Term::lambda(
                      "y", Type::mem(),
                      Term::app(Term::app(s.target.term(),
                                          Term::sys_comp(grown)),
                                Term::bound_var(0, "y"))));
              break;
            }
          }
          out.push_back({s.label, normalize(t), std::move(d)});
        }
      }
      // phago/cophago synchronisation across distinct components
      for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
          if (i == j) continue;
          for (const SysStep& fs : csteps[i]) {
            if (fs.label.kind != SysLabelKind::Phago) continue;
            for (const SysStep& as : csteps[j]) {
              if (as.label.kind != SysLabelKind::CoPhago ||
                  as.label.name != fs.label.name)
                continue;
              std::vector<Term> body{
                  Term::app(fs.target.term(), as.target.term())};
              std::vector<Term> rest = without2(parts, i, j);
              body.insert(body.end(), rest.begin(), rest.end());
              size_t a = std::min(i, j);
              Derivation d;
              if (i < j) {
                Derivation inner =
                    lift(as.deriv, "L-comp-cophago", "R-comp-cophago", j,
                         i + 1, k);
                d = node("id-phago-L", {fs.deriv, std::move(inner)});
              } else {
                Derivation inner = lift(fs.deriv, "L-comp-phago",
                                        "R-comp-phago", i, j + 1, k);
                d = node("id-phago-R", {as.deriv, std::move(inner)});
              }
              for (size_t lvl = 0; lvl < a; ++lvl)
                d = node("R-comp-id", {std::move(d)});
              out.push_back({{SysLabelKind::Id, ""},
                             normalize(Term::sys_comp(std::move(body))),
                             std::move(d)});
            }
          }
        }
      }
      break;
    }
    default:
      break;  // void, variables, lambdas, stuck applications
  }
  return out;
}

}  // namespace

std::vector<MemStep> mem_steps(const Canon& m) { return steps_of_mem(m.term()); }
std::vector<SysStep> sys_steps(const Canon& p) { return steps_of_sys(p.term()); }

// ------------------------------------------------- reduction oracle

namespace {

struct Occ {
  Action act;     // the consumed prefix
  Term cont;      // its continuation
  std::vector<Term> rest;  // remaining par components
};

std::vector<Occ> occurrences(const Term& mem, ActionKind kind) {
  std::vector<Occ> out;
  std::vector<Term> parts = par_multiset(mem);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].kind() != TermKind::Prefix) continue;
    if (parts[i].action().kind != kind) continue;
    out.push_back({parts[i].action(), parts[i].cont(), without(parts, i)});
  }
  return out;
}

Term par_with(const Term& cont, const std::vector<Term>& rest) {
  std::vector<Term> parts{cont};
  parts.insert(parts.end(), rest.begin(), rest.end());
  return Term::mem_par(std::move(parts));
}

std::vector<Term> reduce_sys(const Term& p);

std::vector<Term> reduce_cell(const Term& cell) {
  std::vector<Term> out;
  const Term& mem = cell.membrane();
  const Term& body = cell.body();
  for (const Occ& o : occurrences(mem, ActionKind::Pino)) {
    Term inner = Term::cell(*o.act.arg, Term::sys_void());
    out.push_back(Term::cell(par_with(o.cont, o.rest),
                             Term::sys_comp({inner, body})));
  }
  for (const Occ& co : occurrences(mem, ActionKind::CoExo)) {
    std::vector<Term> bodyParts = comp_multiset(body);
    for (size_t i = 0; i < bodyParts.size(); ++i) {
      if (bodyParts[i].kind() != TermKind::Cell) continue;
      const Term& inner = bodyParts[i];
      for (const Occ& ex : occurrences(inner.membrane(), ActionKind::Exo)) {
        if (ex.act.name != co.act.name) continue;
        std::vector<Term> merged{ex.cont, co.cont};
        merged.insert(merged.end(), ex.rest.begin(), ex.rest.end());
        merged.insert(merged.end(), co.rest.begin(), co.rest.end());
        Term residual =
            Term::cell(Term::mem_par(std::move(merged)),
                       Term::sys_comp(without(bodyParts, i)));
        out.push_back(Term::sys_comp({residual, inner.body()}));
      }
    }
  }
  for (const Term& r : reduce_sys(body)) out.push_back(Term::cell(mem, r));
  return out;
}

std::vector<Term> reduce_sys(const Term& p) {
  std::vector<Term> out;
  std::vector<Term> parts = comp_multiset(p);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].kind() != TermKind::Cell) continue;
    for (const Term& r : reduce_cell(parts[i]))
      out.push_back(Term::sys_comp(with_replaced(parts, i, r)));
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].kind() != TermKind::Cell) continue;
    for (size_t j = 0; j < parts.size(); ++j) {
      if (i == j || parts[j].kind() != TermKind::Cell) continue;
      for (const Occ& ph : occurrences(parts[i].membrane(), ActionKind::Phago)) {
        for (const Occ& co :
             occurrences(parts[j].membrane(), ActionKind::CoPhago)) {
          if (ph.act.name != co.act.name) continue;
          Term eaten = Term::cell(par_with(ph.cont, ph.rest), parts[i].body());
          Term wrapped = Term::cell(*co.act.arg, eaten);
          Term target = Term::cell(par_with(co.cont, co.rest),
                                   Term::sys_comp({wrapped, parts[j].body()}));
          out.push_back(
              Term::sys_comp(with_replaced(without(parts, i),
                                           j > i ? j - 1 : j, target)));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Canon> reduce(const Canon& p) {
  std::vector<Canon> out;
  for (const Term& t : reduce_sys(p.term())) out.push_back(normalize(t));
  return out;
}

// ------------------------------------------------- instantiation family

InstFamily default_family(const Term& p, const Term& q) {
  std::set<std::string> names = action_names(p);
  std::set<std::string> qnames = action_names(q);
  names.insert(qnames.begin(), qnames.end());
  InstFamily fam;
  ClassSet mems, syss;
  mems.insert(normalize(Term::mem_zero()));
  Term zero = Term::mem_zero();
  for (const std::string& n : names) {
    mems.insert(normalize(Term::prefix({ActionKind::Phago, n, {}}, zero)));
    mems.insert(normalize(Term::prefix({ActionKind::CoPhago, n, zero}, zero)));
    mems.insert(normalize(Term::prefix({ActionKind::Exo, n, {}}, zero)));
    mems.insert(normalize(Term::prefix({ActionKind::CoExo, n, {}}, zero)));
    mems.insert(normalize(Term::prefix({ActionKind::Pino, n, zero}, zero)));
  }
  syss.insert(normalize(Term::sys_void()));
  for (const Canon& m : mems)
    syss.insert(normalize(Term::cell(m.term(), Term::sys_void())));
  fam.mems.assign(mems.begin(), mems.end());
  fam.syss.assign(syss.begin(), syss.end());
  return fam;
}

std::vector<Canon> phago_contexts(const InstFamily& fam) {
  ClassSet set;
  for (const Canon& s : fam.mems)
    for (const Canon& r : fam.mems)
      for (const Canon& rest : fam.syss) {
        Term ctx = Term::lambda(
            "X", Type::sys(),
            Term::cell(s.term(),
                       Term::sys_comp({Term::cell(r.term(),
                                                  Term::bound_var(0, "X")),
                                       rest.term()})));
        set.insert(normalize(ctx));
      }
  return {set.begin(), set.end()};
}

// ------------------------------------------------- strong bisimulation

namespace {

struct StrongNode {
  std::set<size_t> idTargets;
  // per label: set of rows; a row lists the successor state for each
  // instantiation context in a fixed order
  std::map<SysLabel, std::set<std::vector<size_t>>> rows;
  std::set<SysLabel> labels;
};

struct StrongSpace {
  std::vector<Canon> states;
  std::map<ClassKey, size_t> index;
  std::vector<StrongNode> nodes;
};

size_t intern(StrongSpace& sp, const Canon& c, std::deque<size_t>& work) {
  auto it = sp.index.find(c.key());
  if (it != sp.index.end()) return it->second;
  size_t id = sp.states.size();
  sp.index.emplace(c.key(), id);
  sp.states.push_back(c);
  sp.nodes.emplace_back();
  work.push_back(id);
  return id;
}

std::set<SysLabel> root_labels(const Canon& c) {
  std::set<SysLabel> out;
  for (const SysStep& s : sys_steps(c)) out.insert(s.label);
  return out;
}

}  // namespace

BisimResult strong_bisim(const Term& p, const Term& q, const InstFamily& fam,
                         size_t budget) {
  Canon P = normalize(p), Q = normalize(q);
  if (P == Q) return {true, {}};
  // one-step refutation: compare enabled label sets at the roots
  {
    std::set<SysLabel> lp = root_labels(P), lq = root_labels(Q);
    if (lp != lq) {
      std::vector<std::string> w;
      for (const SysLabel& l : lp)
        if (!lq.count(l)) { w.push_back(render(l)); break; }
      if (w.empty())
        for (const SysLabel& l : lq)
          if (!lp.count(l)) { w.push_back(render(l)); break; }
      return {false, w};
    }
  }

  std::vector<Canon> phagoCtx = phago_contexts(fam);
  std::vector<Canon> exoPairsFirst;  // flattened (sys, mem) argument pairs
  std::vector<Canon> exoPairsSecond;
  for (const Canon& s : fam.syss)
    for (const Canon& m : fam.mems) {
      exoPairsFirst.push_back(s);
      exoPairsSecond.push_back(m);
    }

  StrongSpace sp;
  std::deque<size_t> work;
  size_t p0 = intern(sp, P, work);
  size_t q0 = intern(sp, Q, work);
  while (!work.empty()) {
    size_t id = work.front();
    work.pop_front();
    Canon state = sp.states[id];  // copy: sp.states may reallocate below
    std::map<SysLabel, ClassSet> residues;
    for (const SysStep& s : sys_steps(state)) {
      sp.nodes[id].labels.insert(s.label);
      if (s.label.kind == SysLabelKind::Id) {
        // intern first: it may grow sp.nodes and invalidate references
        size_t t = intern(sp, s.target, work);
        sp.nodes[id].idTargets.insert(t);
      } else {
        residues[s.label].insert(s.target);
      }
    }
    for (const auto& [label, set] : residues) {
      for (const Canon& res : set) {
        std::vector<size_t> row;
        switch (label.kind) {
          case SysLabelKind::Phago:
            for (const Canon& ctx : phagoCtx)
              row.push_back(intern(
                  sp, normalize(Term::app(res.term(), ctx.term())), work));
            break;
          case SysLabelKind::CoPhago:
            for (const Canon& arg : fam.syss)
              row.push_back(intern(
                  sp, normalize(Term::app(res.term(), arg.term())), work));
            break;
          case SysLabelKind::Exo:
            for (size_t k = 0; k < exoPairsFirst.size(); ++k)
              row.push_back(intern(
                  sp,
                  normalize(Term::app(
                      Term::app(res.term(), exoPairsFirst[k].term()),
                      exoPairsSecond[k].term())),
                  work));
            break;
          case SysLabelKind::Id:
            break;
        }
        sp.nodes[id].rows[label].insert(std::move(row));
      }
    }
    if (sp.states.size() > budget) throw BudgetError(budget);
  }

  // partition refinement
  size_t n = sp.states.size();
  std::vector<size_t> block(n, 0);
  size_t nblocks = 1;
  for (;;) {
    std::map<std::string, size_t> sigIds;
    std::vector<size_t> next(n);
    for (size_t i = 0; i < n; ++i) {
      std::ostringstream sig;
      sig << block[i] << ';';
      std::set<size_t> idb;
      for (size_t t : sp.nodes[i].idTargets) idb.insert(block[t]);
      for (size_t b : idb) sig << b << ',';
      sig << ';';
      for (const auto& [label, rows] : sp.nodes[i].rows) {
        sig << render(label) << ':';
        std::set<std::vector<size_t>> brows;
        for (const auto& row : rows) {
          std::vector<size_t> br;
          br.reserve(row.size());
          for (size_t t : row) br.push_back(block[t]);
          brows.insert(std::move(br));
        }
        for (const auto& br : brows) {
          for (size_t b : br) sig << b << '.';
          sig << '|';
        }
        sig << ';';
      }
      auto [it, fresh] = sigIds.emplace(sig.str(), sigIds.size());
      (void)fresh;
      next[i] = it->second;
    }
    if (sigIds.size() == nblocks) {
      block = next;
      break;
    }
    nblocks = sigIds.size();
    block = next;
  }

  if (block[p0] == block[q0]) return {true, {}};

  // best-effort witness: walk one distinguishing branch
  std::vector<std::string> witness;
  size_t a = p0, b = q0;
  for (size_t depth = 0; depth < nblocks && block[a] != block[b]; ++depth) {
    const StrongNode& na = sp.nodes[a];
    const StrongNode& nb = sp.nodes[b];
    bool advanced = false;
    // a label only one side enables
    for (const SysLabel& l : na.labels)
      if (!nb.labels.count(l)) {
        witness.push_back(render(l));
        return {false, witness};
      }
    for (const SysLabel& l : nb.labels)
      if (!na.labels.count(l)) {
        witness.push_back(render(l));
        return {false, witness};
      }
    // an id move into a block the other side cannot reach
    auto idBlocks = [&](const StrongNode& nd) {
      std::set<size_t> s;
      for (size_t t : nd.idTargets) s.insert(block[t]);
      return s;
    };
    std::set<size_t> ba = idBlocks(na), bb = idBlocks(nb);
    for (size_t t : na.idTargets) {
      if (bb.count(block[t])) continue;
      for (size_t u : nb.idTargets) {
        witness.push_back("id");
        a = t;
        b = u;
        advanced = true;
        break;
      }
      if (!advanced && nb.idTargets.empty()) {
        witness.push_back("id");
        return {false, witness};
      }
      if (advanced) break;
    }
    if (!advanced)
      for (size_t t : nb.idTargets) {
        if (ba.count(block[t])) continue;
        for (size_t u : na.idTargets) {
          witness.push_back("id");
          a = u;
          b = t;
          advanced = true;
          break;
        }
        if (!advanced && na.idTargets.empty()) {
          witness.push_back("id");
          return {false, witness};
        }
        if (advanced) break;
      }
    if (advanced) continue;
    // a residue row one side has and the other lacks
    for (const auto& [label, rows] : na.rows) {
      auto blocksOf = [&](const std::vector<size_t>& row) {
        std::vector<size_t> br;
        br.reserve(row.size());
        for (size_t t : row) br.push_back(block[t]);
        return br;
      };
      std::set<std::vector<size_t>> other;
      auto it = nb.rows.find(label);
      if (it != nb.rows.end())
        for (const auto& row : it->second) other.insert(blocksOf(row));
      for (const auto& row : rows) {
        std::vector<size_t> br = blocksOf(row);
        if (other.count(br)) continue;
        if (it == nb.rows.end() || it->second.empty()) {
          witness.push_back(render(label));
          return {false, witness};
        }
        const std::vector<size_t>& orow = *it->second.begin();
        std::vector<size_t> obr = blocksOf(orow);
        for (size_t kx = 0; kx < br.size(); ++kx)
          if (br[kx] != obr[kx]) {
            witness.push_back(render(label) + " @ context " +
                              std::to_string(kx));
            a = row[kx];
            b = orow[kx];
            advanced = true;
            break;
          }
        if (advanced) break;
      }
      if (advanced) break;
    }
    if (!advanced) break;
  }
  return {false, witness};
}

}  // namespace brane
