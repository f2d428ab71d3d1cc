#include <algorithm>

#include "brane/stochastic.hpp"
#include "brane/syntax.hpp"

namespace brane {

namespace {

bool multiset_equal(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
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
  for (size_t k = 0; k < parts.size(); ++k)
    if (k != i && k != j) out.push_back(parts[k]);
  return out;
}

// ----------------------------------------- residue decomposition
//
// Canonical residue classes have rigid shapes; these pull out the ground
// pieces. All extracted parts are closed, so unbinding is a plain shift.

// \Z:(sys->sys). Z(content) o rest
struct PhagoRes {
  Term content = Term::sys_void();
  std::vector<Term> rest;
};

// \X:sys. sigma[ rho[X] o inside ] o rest
struct CoPhagoRes {
  Term sigma = Term::mem_zero();
  Term rho = Term::mem_zero();
  std::vector<Term> inside, rest;
};

// \X:sys. \y:mem. (mem | y)[ X o inside ] o rest
struct ExoRes {
  std::vector<Term> mem, inside, rest;
};

std::optional<PhagoRes> decompose_phago(const Term& f) {
  if (!f.is(TermKind::Lambda)) return {};
  PhagoRes out;
  bool found = false;
  for (const Term& c : comp_multiset(f.body())) {
    if (!uses_index(c, 0)) {
      out.rest.push_back(shift(c, -1, 0));
      continue;
    }
    if (found || !c.is(TermKind::App)) return {};
    if (!c.fn().is(TermKind::BoundVar) || c.fn().index() != 0) return {};
    if (uses_index(c.arg(), 0)) return {};
    out.content = shift(c.arg(), -1, 0);
    found = true;
  }
  if (!found) return {};
  return out;
}

std::optional<CoPhagoRes> decompose_cophago(const Term& f) {
  if (!f.is(TermKind::Lambda)) return {};
  CoPhagoRes out;
  bool foundCell = false;
  for (const Term& c : comp_multiset(f.body())) {
    if (!uses_index(c, 0)) {
      out.rest.push_back(shift(c, -1, 0));
      continue;
    }
    if (foundCell || !c.is(TermKind::Cell)) return {};
    if (uses_index(c.membrane(), 0)) return {};
    out.sigma = shift(c.membrane(), -1, 0);
    bool foundHole = false;
    for (const Term& d : comp_multiset(c.body())) {
      if (!uses_index(d, 0)) {
        out.inside.push_back(shift(d, -1, 0));
        continue;
      }
      if (foundHole || !d.is(TermKind::Cell)) return {};
      if (!d.body().is(TermKind::BoundVar) || d.body().index() != 0) return {};
      if (uses_index(d.membrane(), 0)) return {};
      out.rho = shift(d.membrane(), -1, 0);
      foundHole = true;
    }
    if (!foundHole) return {};
    foundCell = true;
  }
  if (!foundCell) return {};
  return out;
}

bool uses_either(const Term& t) { return uses_index(t, 0) || uses_index(t, 1); }

std::optional<ExoRes> decompose_exo(const Term& f) {
  if (!f.is(TermKind::Lambda) || !f.body().is(TermKind::Lambda)) return {};
  const Term& body = f.body().body();  // X = index 1, y = index 0
  ExoRes out;
  bool foundCell = false;
  for (const Term& c : comp_multiset(body)) {
    if (!uses_either(c)) {
      out.rest.push_back(shift(c, -2, 0));
      continue;
    }
    if (foundCell || !c.is(TermKind::Cell)) return {};
    bool foundY = false;
    for (const Term& m : par_multiset(c.membrane())) {
      if (m.is(TermKind::BoundVar) && m.index() == 0) {
        if (foundY) return {};
        foundY = true;
        continue;
      }
      if (uses_either(m)) return {};
      out.mem.push_back(shift(m, -2, 0));
    }
    if (!foundY) return {};
    bool foundX = false;
    for (const Term& d : comp_multiset(c.body())) {
      if (d.is(TermKind::BoundVar) && d.index() == 1) {
        if (foundX) return {};
        foundX = true;
        continue;
      }
      if (uses_either(d)) return {};
      out.inside.push_back(shift(d, -2, 0));
    }
    if (!foundX) return {};
    foundCell = true;
  }
  if (!foundCell) return {};
  return out;
}

// ----------------------------------------- ground shape matching
//
// Does ground class G lie in the instantiation shape of a residue? The
// holes range over all membranes/systems; collapsed-unit corners (0-framed
// cells vanishing into void) are matched explicitly.

bool match_phago(const Term& g, const PhagoRes& r) {
  auto sub = multiset_subtract(comp_multiset(g), r.rest);
  if (!sub) return false;
  if (r.content.is(TermKind::SysVoid))
    return sub->empty() ||
           (sub->size() == 1 && (*sub)[0].is(TermKind::Cell));
  if (sub->size() != 1 || !(*sub)[0].is(TermKind::Cell)) return false;
  for (const Term& d : comp_multiset((*sub)[0].body()))
    if (d.is(TermKind::Cell) && equal(d.body(), r.content)) return true;
  return false;
}

bool cophago_body_match(const std::vector<Term>& bodyParts, const Term& rho,
                        const std::vector<Term>& inside) {
  for (size_t i = 0; i < bodyParts.size(); ++i) {
    const Term& d = bodyParts[i];
    if (d.is(TermKind::Cell) && equal(d.membrane(), rho) &&
        (d.body().is(TermKind::SysVoid) || d.body().is(TermKind::Cell)) &&
        multiset_equal(without(bodyParts, i), inside))
      return true;
  }
  return rho.is(TermKind::MemZero) && multiset_equal(bodyParts, inside);
}

bool match_cophago(const Term& g, const CoPhagoRes& r) {
  auto sub = multiset_subtract(comp_multiset(g), r.rest);
  if (!sub) return false;
  if (sub->empty())
    return r.sigma.is(TermKind::MemZero) &&
           cophago_body_match({}, r.rho, r.inside);
  if (sub->size() != 1 || !(*sub)[0].is(TermKind::Cell)) return false;
  const Term& c = (*sub)[0];
  if (!equal(c.membrane(), r.sigma)) return false;
  return cophago_body_match(comp_multiset(c.body()), r.rho, r.inside);
}

bool match_exo(const Term& g, const ExoRes& r) {
  auto sub = multiset_subtract(comp_multiset(g), r.rest);
  if (!sub) return false;
  if (sub->empty()) return r.mem.empty() && r.inside.empty();
  if (sub->size() != 1 || !(*sub)[0].is(TermKind::Cell)) return false;
  const Term& c = (*sub)[0];
  if (!multiset_subtract(par_multiset(c.membrane()), r.mem)) return false;
  if (!multiset_subtract(comp_multiset(c.body()), r.inside)) return false;
  return true;
}

bool residue_hits(SysLabelKind kind, const Term& res, const ClassSet& T) {
  switch (kind) {
    case SysLabelKind::Phago: {
      auto d = decompose_phago(res);
      if (!d) return false;
      for (const Canon& g : T)
        if (match_phago(g.term(), *d)) return true;
      return false;
    }
    case SysLabelKind::CoPhago: {
      auto d = decompose_cophago(res);
      if (!d) return false;
      for (const Canon& g : T)
        if (match_cophago(g.term(), *d)) return true;
      return false;
    }
    case SysLabelKind::Exo: {
      auto d = decompose_exo(res);
      if (!d) return false;
      for (const Canon& g : T)
        if (match_exo(g.term(), *d)) return true;
      return false;
    }
    case SysLabelKind::Id:
      return false;
  }
  return false;
}

// Remove `rest` from the composition directly enclosing the unique
// occurrence of bound variable `idx` (the system hole of an exo residue).
// Composing a sibling onto the hole's argument flattens it into exactly
// that composition, so the inverse must strip it there and nowhere else.
// `rest` holds closed terms, so no index shifting is needed on descent.
std::optional<Term> strip_hole_comp(const Term& t, int idx,
                                    const std::vector<Term>& rest) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      if (t.index() == idx && rest.empty()) return t;
      return std::nullopt;
    case TermKind::SysComp: {
      const std::vector<Term>& parts = t.parts();
      size_t at = parts.size();
      for (size_t i = 0; i < parts.size(); ++i)
        if (uses_index(parts[i], idx)) { at = i; break; }
      if (at == parts.size()) return std::nullopt;
      if (parts[at].is(TermKind::BoundVar)) {
        std::vector<Term> others;
        for (size_t i = 0; i < parts.size(); ++i)
          if (i != at) others.push_back(parts[i]);
        auto sub = multiset_subtract(others, rest);
        if (!sub) return std::nullopt;
        std::vector<Term> keep{parts[at]};
        keep.insert(keep.end(), sub->begin(), sub->end());
        return comp_of(std::move(keep));
      }
      auto fixed = strip_hole_comp(parts[at], idx, rest);
      if (!fixed) return std::nullopt;
      std::vector<Term> keep;
      keep.reserve(parts.size());
      for (size_t i = 0; i < parts.size(); ++i)
        keep.push_back(i == at ? *fixed : parts[i]);
      return comp_of(std::move(keep));
    }
    case TermKind::Cell: {
      if (uses_index(t.membrane(), idx)) return std::nullopt;
      auto fixed = strip_hole_comp(t.body(), idx, rest);
      if (!fixed) return std::nullopt;
      return Term::cell(t.membrane(), *fixed);
    }
    case TermKind::App: {
      if (uses_index(t.fn(), idx)) {
        auto fixed = strip_hole_comp(t.fn(), idx, rest);
        if (!fixed) return std::nullopt;
        return Term::app(*fixed, t.arg());
      }
      auto fixed = strip_hole_comp(t.arg(), idx, rest);
      if (!fixed) return std::nullopt;
      return Term::app(t.fn(), *fixed);
    }
    case TermKind::Lambda: {
      auto fixed = strip_hole_comp(t.body(), idx + 1, rest);
      if (!fixed) return std::nullopt;
      return Term::lambda(t.hint(), t.annot(), *fixed);
    }
    default:
      return std::nullopt;
  }
}

// { [\x. N] : [\x. N o rest] in T } for one-binder residues; for the
// two-binder exo residues the sibling lands inside the composition around
// the system hole, so it is stripped at that spot instead.
ClassSet residual_fn(const ClassSet& T, SysLabelKind kind,
                     const std::vector<Term>& rest) {
  ClassSet out;
  for (const Canon& g : T) {
    const Term& t = g.term();
    if (!t.is(TermKind::Lambda)) continue;
    if (kind == SysLabelKind::Exo) {
      if (!t.body().is(TermKind::Lambda)) continue;
      auto stripped = strip_hole_comp(t.body().body(), 1, rest);
      if (!stripped) continue;
      out.insert(normalize(
          Term::lambda("", t.annot(),
                       Term::lambda("", t.body().annot(), *stripped))));
    } else {
      auto sub = multiset_subtract(comp_multiset(t.body()), rest);
      if (!sub) continue;
      out.insert(normalize(Term::lambda("", t.annot(), comp_of(std::move(*sub)))));
    }
  }
  return out;
}

}  // namespace

// ----------------------------------------- behaviour_query

Rate behaviour_query(const SysBehaviour& mu, const SysLabel& a,
                     const ClassSet& T) {
  auto it = mu.find(a);
  if (it == mu.end()) return 0;
  Rate sum = 0;
  if (a.kind == SysLabelKind::Id) {
    for (const auto& [c, r] : it->second)
      if (T.count(c)) sum += r;
    return sum;
  }
  for (const auto& [res, r] : it->second)
    if (residue_hits(a.kind, res.term(), T)) sum += r;
  return sum;
}

// ----------------------------------------- theta_sys

namespace {

Rate theta_rec(const SysLabel& a, const Term& p, const ClassSet& T,
               const RateTable& rates) {
  if (T.empty()) return 0;
  Rate sum = 0;
  switch (p.kind()) {
    case TermKind::Cell: {
      const Term& sigma = p.membrane();
      const Term& body = p.body();
      MemBehaviour nu = sos_mem(sigma, rates);
      switch (a.kind) {
        case SysLabelKind::Phago: {
          auto it = nu.find({ActionKind::Phago, a.name, {}});
          if (it == nu.end()) break;
          for (const auto& [cont, r] : it->second) {
            PhagoRes shape{normalize(Term::cell(cont.term(), body)).term(), {}};
            for (const Canon& g : T)
              if (match_phago(g.term(), shape)) {
                sum += r;
                break;
              }
          }
          break;
        }
        case SysLabelKind::CoPhago: {
          for (const auto& [label, meas] : nu) {
            if (label.kind != ActionKind::CoPhago || label.name != a.name)
              continue;
            for (const auto& [cont, r] : meas) {
              CoPhagoRes shape{cont.term(), label.arg->term(),
                               comp_multiset(body), {}};
              for (const Canon& g : T)
                if (match_cophago(g.term(), shape)) {
                  sum += r;
                  break;
                }
            }
          }
          break;
        }
        case SysLabelKind::Exo: {
          auto it = nu.find({ActionKind::Exo, a.name, {}});
          if (it == nu.end()) break;
          for (const auto& [cont, r] : it->second) {
            ExoRes shape{par_multiset(cont.term()), {}, comp_multiset(body)};
            for (const Canon& g : T)
              if (match_exo(g.term(), shape)) {
                sum += r;
                break;
              }
          }
          break;
        }
        case SysLabelKind::Id: {
          sum += theta_rec(a, body, residual_cell(T, sigma), rates);
          for (const auto& [label, meas] : nu) {
            if (label.kind == ActionKind::Pino) {
              for (const auto& [cont, r] : meas) {
                Term t = Term::cell(
                    cont.term(),
                    Term::sys_comp({Term::cell(label.arg->term(),
                                               Term::sys_void()),
                                    body}));
                if (T.count(normalize(t))) sum += r;
              }
            } else if (label.kind == ActionKind::CoExo) {
              SysBehaviour mu = sos_sys(body, rates);
              auto ex = mu.find({SysLabelKind::Exo, label.name});
              if (ex == mu.end()) continue;
              Rate div = rates.pair_rate(ActionKind::Exo, label.name);
              for (const auto& [cont, r] : meas)
                for (const auto& [res, rs] : ex->second) {
                  Term t = Term::app(Term::app(res.term(), Term::sys_void()),
                                     cont.term());
                  if (T.count(normalize(t))) sum += rs * r / div;
                }
            }
          }
          break;
        }
      }
      break;
    }
    case TermKind::SysComp: {
      const auto& parts = p.parts();
      for (size_t i = 0; i < parts.size(); ++i) {
        std::vector<Term> rest = without(parts, i);
        sum += theta_rec(a, parts[i], residual_comp(T, comp_of(rest)), rates);
      }
      if (a.kind == SysLabelKind::Id) {
        std::vector<SysBehaviour> mus(parts.size());
        for (size_t i = 0; i < parts.size(); ++i)
          mus[i] = sos_sys(parts[i], rates);
        for (size_t i = 0; i < parts.size(); ++i)
          for (size_t j = 0; j < parts.size(); ++j) {
            if (i == j) continue;
            for (const auto& [fl, fmeas] : mus[i]) {
              if (fl.kind != SysLabelKind::Phago) continue;
              auto co = mus[j].find({SysLabelKind::CoPhago, fl.name});
              if (co == mus[j].end()) continue;
              Rate div = rates.pair_rate(ActionKind::Phago, fl.name);
              for (const auto& [f, rf] : fmeas)
                for (const auto& [ar, ra] : co->second) {
                  std::vector<Term> ps{Term::app(f.term(), ar.term())};
                  std::vector<Term> rest = without2(parts, i, j);
                  ps.insert(ps.end(), rest.begin(), rest.end());
                  if (T.count(normalize(comp_of(std::move(ps)))))
                    sum += rf * ra / div;
                }
            }
          }
      }
      break;
    }
    default:
      break;  // void, variables, lambdas, stuck applications
  }
  return sum;
}

}  // namespace

Rate theta_sys(const SysLabel& a, const Term& p, const ClassSet& T,
               const RateTable& rates) {
  return theta_rec(a, normalize(p).term(), T, rates);
}

// ----------------------------------------- meta_theta

namespace {

Rate meta_rec(const AnyLabel& a, const Term& t, const ClassSet& T,
              const RateTable& rates);

// collect per-rho sets of sigma classes from cell-level pino shapes
// sigma'[ rho[void] o Q ] among the members of T
std::map<ClassKey, std::pair<Canon, ClassSet>> pino_shapes(const ClassSet& T,
                                                           const Term& body) {
  std::map<ClassKey, std::pair<Canon, ClassSet>> out;
  std::vector<Term> bodyParts = comp_multiset(body);
  auto put = [&](const Term& rho, const Term& sigma) {
    Canon r = normalize(rho);
    auto [it, fresh] =
        out.emplace(r.key(), std::make_pair(r, ClassSet{}));
    (void)fresh;
    it->second.second.insert(normalize(sigma));
  };
  for (const Canon& g : T) {
    const Term& gt = g.term();
    if (gt.is(TermKind::SysVoid)) {
      if (body.is(TermKind::SysVoid)) put(Term::mem_zero(), Term::mem_zero());
      continue;
    }
    if (!gt.is(TermKind::Cell)) continue;
    std::vector<Term> gb = comp_multiset(gt.body());
    for (size_t i = 0; i < gb.size(); ++i)
      if (gb[i].is(TermKind::Cell) && gb[i].body().is(TermKind::SysVoid) &&
          multiset_equal(without(gb, i), bodyParts))
        put(gb[i].membrane(), gt.membrane());
    if (multiset_equal(gb, bodyParts)) put(Term::mem_zero(), gt.membrane());
  }
  return out;
}

Rate meta_rec(const AnyLabel& a, const Term& t, const ClassSet& T,
              const RateTable& rates) {
  if (T.empty()) return 0;
  const SysLabel* sl = std::get_if<SysLabel>(&a);
  const MemLabel* ml = std::get_if<MemLabel>(&a);
  Rate sum = 0;
  switch (t.kind()) {
    case TermKind::Prefix: {
      if (!ml) break;
      Action act = t.action();
      MemLabel here{act.kind, act.name, {}};
      if (act.arg) here.arg = normalize(*act.arg);
      if (!(here == *ml)) break;
      if (T.count(normalize(t.cont())))
        sum += rates.action_rate(act.kind, act.name);
      break;
    }
    case TermKind::MemPar: {
      if (!ml) break;
      const auto& parts = t.parts();
      for (size_t i = 0; i < parts.size(); ++i)
        sum += meta_rec(a, parts[i],
                        residual_par(T, par_of(without(parts, i))), rates);
      break;
    }
    case TermKind::Cell: {
      if (!sl) break;
      const Term& sigma = t.membrane();
      const Term& body = t.body();
      switch (sl->kind) {
        case SysLabelKind::Phago: {
          ClassSet S;
          for (const Canon& g : T) {
            auto d = decompose_phago(g.term());
            if (!d || !d->rest.empty()) continue;
            if (d->content.is(TermKind::SysVoid)) {
              if (body.is(TermKind::SysVoid))
                S.insert(normalize(Term::mem_zero()));
            } else if (d->content.is(TermKind::Cell) &&
                       equal(d->content.body(), body)) {
              S.insert(normalize(d->content.membrane()));
            }
          }
          sum += meta_rec(MemLabel{ActionKind::Phago, sl->name, {}}, sigma, S,
                          rates);
          break;
        }
        case SysLabelKind::CoPhago: {
          std::vector<Term> bodyParts = comp_multiset(body);
          std::map<ClassKey, std::pair<Canon, ClassSet>> perRho;
          for (const Canon& g : T) {
            auto d = decompose_cophago(g.term());
            if (!d || !d->rest.empty()) continue;
            if (!multiset_equal(d->inside, bodyParts)) continue;
            Canon r = normalize(d->rho);
            auto [it, fresh] =
                perRho.emplace(r.key(), std::make_pair(r, ClassSet{}));
            (void)fresh;
            it->second.second.insert(normalize(d->sigma));
          }
          for (const auto& [key, rs] : perRho)
            sum += meta_rec(MemLabel{ActionKind::CoPhago, sl->name, rs.first},
                            sigma, rs.second, rates);
          break;
        }
        case SysLabelKind::Exo: {
          std::vector<Term> bodyParts = comp_multiset(body);
          ClassSet S;
          for (const Canon& g : T) {
            auto d = decompose_exo(g.term());
            if (!d || !d->inside.empty()) continue;
            if (!multiset_equal(d->rest, bodyParts)) continue;
            S.insert(normalize(par_of(std::move(d->mem))));
          }
          sum += meta_rec(MemLabel{ActionKind::Exo, sl->name, {}}, sigma, S,
                          rates);
          break;
        }
        case SysLabelKind::Id: {
          sum += meta_rec(a, body, residual_cell(T, sigma), rates);
          // pino: sigma'[ rho[void] o body ] shapes in T
          {
            auto shapes = pino_shapes(T, body);
            if (!shapes.empty())
              for (const std::string& n : action_names(sigma))
                for (const auto& [key, rs] : shapes)
                  sum += meta_rec(MemLabel{ActionKind::Pino, n, rs.first},
                                  sigma, rs.second, rates);
          }
          // coexo on the membrane against exo residues of the body
          {
            std::map<std::string, std::map<Canon, Rate>> exoMass;
            for (const SysStep& s : sys_steps(normalize(body)))
              if (s.label.kind == SysLabelKind::Exo) {
                auto& cell = exoMass[s.label.name][s.target];
                cell += rates.pair_rate(ActionKind::Exo, s.label.name);
              }
            if (!exoMass.empty())
              for (const MemStep& ms : mem_steps(normalize(sigma))) {
                if (ms.label.kind != ActionKind::CoExo) continue;
                auto it = exoMass.find(ms.label.name);
                if (it == exoMass.end()) continue;
                Rate div = rates.pair_rate(ActionKind::Exo, ms.label.name);
                Rate rc = rates.label_rate(ms.label);
                for (const auto& [res, m1] : it->second) {
                  Term tgt = Term::app(
                      Term::app(res.term(), Term::sys_void()),
                      ms.target.term());
                  if (T.count(normalize(tgt))) sum += m1 * rc / div;
                }
              }
          }
          break;
        }
      }
      break;
    }
    case TermKind::SysComp: {
      if (!sl) break;
      const auto& parts = t.parts();
      for (size_t i = 0; i < parts.size(); ++i) {
        std::vector<Term> rest = without(parts, i);
        ClassSet Ti = sl->kind == SysLabelKind::Id
                          ? residual_comp(T, comp_of(rest))
                          : residual_fn(T, sl->kind, rest);
        sum += meta_rec(a, parts[i], Ti, rates);
      }
      if (sl->kind == SysLabelKind::Id) {
        // phago/cophago pairs across components, via the transition system
        std::vector<std::map<std::string, std::map<Canon, Rate>>> ph(
            parts.size()),
            co(parts.size());
        for (size_t i = 0; i < parts.size(); ++i)
          for (const SysStep& s : sys_steps(normalize(parts[i]))) {
            if (s.label.kind == SysLabelKind::Phago) {
              auto& cell = ph[i][s.label.name][s.target];
              cell += rates.pair_rate(ActionKind::Phago, s.label.name);
            } else if (s.label.kind == SysLabelKind::CoPhago) {
              auto& cell = co[i][s.label.name][s.target];
              cell += rates.pair_rate(ActionKind::Phago, s.label.name);
            }
          }
        for (size_t i = 0; i < parts.size(); ++i)
          for (size_t j = 0; j < parts.size(); ++j) {
            if (i == j) continue;
            for (const auto& [n, fmap] : ph[i]) {
              auto it = co[j].find(n);
              if (it == co[j].end()) continue;
              Rate div = rates.pair_rate(ActionKind::Phago, n);
              for (const auto& [f, m1] : fmap)
                for (const auto& [ar, m2] : it->second) {
                  std::vector<Term> ps{Term::app(f.term(), ar.term())};
                  std::vector<Term> rest = without2(parts, i, j);
                  ps.insert(ps.end(), rest.begin(), rest.end());
                  if (T.count(normalize(comp_of(std::move(ps)))))
                    sum += m1 * m2 / div;
                }
            }
          }
      }
      break;
    }
    default:
      break;  // 0, void, variables, lambdas, stuck applications
  }
  return sum;
}

}  // namespace

Rate meta_theta(const AnyLabel& a, const Term& t, const ClassSet& T,
                const RateTable& rates) {
  return meta_rec(a, normalize(t).term(), T, rates);
}

// ----------------------------------------- pointwise reporting

std::vector<PointwiseEntry> pointwise(const Term& p, const RateTable& rates) {
  std::vector<PointwiseEntry> out;
  SysBehaviour mu = sos_sys(normalize(p).term(), rates);
  for (const auto& [label, meas] : mu) {
    for (const auto& [target, r] : meas) {
      std::string shape;
      switch (label.kind) {
        case SysLabelKind::Id:
          break;
        case SysLabelKind::Phago:
          if (auto d = decompose_phago(target.term())) {
            std::vector<Term> ps{Term::cell(
                Term::free_var("tau"),
                Term::sys_comp({Term::cell(Term::free_var("rho"), d->content),
                                Term::free_var("R")}))};
            ps.insert(ps.end(), d->rest.begin(), d->rest.end());
            shape = render(comp_of(std::move(ps)));
          }
          break;
        case SysLabelKind::CoPhago:
          if (auto d = decompose_cophago(target.term())) {
            std::vector<Term> inner{Term::cell(d->rho, Term::free_var("R"))};
            inner.insert(inner.end(), d->inside.begin(), d->inside.end());
            std::vector<Term> ps{Term::cell(d->sigma, comp_of(std::move(inner)))};
            ps.insert(ps.end(), d->rest.begin(), d->rest.end());
            shape = render(comp_of(std::move(ps)));
          }
          break;
        case SysLabelKind::Exo:
          if (auto d = decompose_exo(target.term())) {
            std::vector<Term> mem = d->mem;
            mem.push_back(Term::free_var("rho"));
            std::vector<Term> inner{Term::free_var("R")};
            inner.insert(inner.end(), d->inside.begin(), d->inside.end());
            std::vector<Term> ps{
                Term::cell(par_of(std::move(mem)), comp_of(std::move(inner)))};
            ps.insert(ps.end(), d->rest.begin(), d->rest.end());
            shape = render(comp_of(std::move(ps)));
          }
          break;
      }
      out.push_back({label, target, std::move(shape), r});
    }
  }
  return out;
}

}  // namespace brane
