#include "brane/stochastic.hpp"

namespace brane {

Rate total(const Measure& m) {
  Rate sum = 0;
  for (const auto& [c, r] : m) sum += r;
  return sum;
}

void add_mass(Measure& m, const Canon& c, const Rate& r) {
  if (r == 0) return;
  auto [it, fresh] = m.emplace(c, r);
  if (!fresh) it->second += r;
}

std::string render(const AnyLabel& l) {
  if (const SysLabel* s = std::get_if<SysLabel>(&l)) return render(*s);
  return render(std::get<MemLabel>(l));
}

namespace {

Type res_phago_type() { return Type::arrow(Type::sys(), Type::sys()); }

void add_behaviour(MemBehaviour& out, const MemLabel& l, const Canon& c,
                   const Rate& r) {
  add_mass(out[l], c, r);
}

void add_behaviour(SysBehaviour& out, const SysLabel& l, const Canon& c,
                   const Rate& r) {
  add_mass(out[l], c, r);
}

}  // namespace

MemBehaviour mem_par(const MemBehaviour& mu, const Term& sigma,
                     const Term& tau, const MemBehaviour& nu) {
  MemBehaviour out;
  for (const auto& [label, meas] : mu)
    for (const auto& [c, r] : meas)
      add_behaviour(out, label, normalize(Term::mem_par({c.term(), tau})), r);
  for (const auto& [label, meas] : nu)
    for (const auto& [c, r] : meas)
      add_behaviour(out, label, normalize(Term::mem_par({sigma, c.term()})), r);
  return out;
}

SysBehaviour sys_comp(const SysBehaviour& mu, const Term& p, const Term& q,
                      const SysBehaviour& nu, const RateTable& rates) {
  SysBehaviour out;
  auto lift_side = [&](const SysBehaviour& side, const Term& other,
                       bool otherOnRight) {
    for (const auto& [label, meas] : side) {
      for (const auto& [c, r] : meas) {
        Term t = Term::sys_void();
        auto pair_with = [&](Term self) {
          return otherOnRight ? Term::sys_comp({std::move(self), other})
                              : Term::sys_comp({other, std::move(self)});
        };
        switch (label.kind) {
          case SysLabelKind::Id:
            t = pair_with(c.term());
            break;
          case SysLabelKind::Phago:
            t = Term::lambda(
                "Z", res_phago_type(),
                pair_with(Term::app(c.term(), Term::bound_var(0, "Z"))));
            break;
          case SysLabelKind::CoPhago:
            t = Term::lambda(
                "X", Type::sys(),
                pair_with(Term::app(c.term(), Term::bound_var(0, "X"))));
            break;
          case SysLabelKind::Exo:
            t = Term::lambda(
                "X", Type::sys(),
                Term::lambda(
                    "y", Type::mem(),
                    Term::app(Term::app(c.term(),
                                        pair_with(Term::bound_var(1, "X"))),
                              Term::bound_var(0, "y"))));
            break;
        }
        add_behaviour(out, label, normalize(t), r);
      }
    }
  };
  lift_side(mu, q, true);
  lift_side(nu, p, false);

  auto sync = [&](const SysBehaviour& phagoSide, const SysBehaviour& coSide) {
    for (const auto& [fl, fmeas] : phagoSide) {
      if (fl.kind != SysLabelKind::Phago) continue;
      auto it = coSide.find({SysLabelKind::CoPhago, fl.name});
      if (it == coSide.end()) continue;
      Rate div = rates.pair_rate(ActionKind::Phago, fl.name);
      for (const auto& [f, rf] : fmeas)
        for (const auto& [a, ra] : it->second)
          add_behaviour(out, {SysLabelKind::Id, ""},
                        normalize(Term::app(f.term(), a.term())),
                        rf * ra / div);
    }
  };
  sync(mu, nu);
  sync(nu, mu);
  return out;
}

SysBehaviour sys_loc(const SysBehaviour& mu, const Term& sigma, const Term& p,
                     const MemBehaviour& nu, const RateTable& rates) {
  SysBehaviour out;
  for (const auto& [label, meas] : nu) {
    for (const auto& [c, r] : meas) {
      const Term& cont = c.term();
      switch (label.kind) {
        case ActionKind::Phago:
          add_behaviour(
              out, {SysLabelKind::Phago, label.name},
              normalize(Term::lambda(
                  "Z", res_phago_type(),
                  Term::app(Term::bound_var(0, "Z"), Term::cell(cont, p)))),
              r);
          break;
        case ActionKind::CoPhago:
          add_behaviour(
              out, {SysLabelKind::CoPhago, label.name},
              normalize(Term::lambda(
                  "X", Type::sys(),
                  Term::cell(cont, Term::sys_comp(
                                       {Term::cell(label.arg->term(),
                                                   Term::bound_var(0, "X")),
                                        p})))),
              r);
          break;
        case ActionKind::Exo:
          add_behaviour(
              out, {SysLabelKind::Exo, label.name},
              normalize(Term::lambda(
                  "X", Type::sys(),
                  Term::lambda(
                      "y", Type::mem(),
                      Term::sys_comp(
                          {Term::cell(Term::mem_par(
                                          {cont, Term::bound_var(0, "y")}),
                                      Term::bound_var(1, "X")),
                           p})))),
              r);
          break;
        case ActionKind::Pino:
          add_behaviour(
              out, {SysLabelKind::Id, ""},
              normalize(Term::cell(
                  cont, Term::sys_comp({Term::cell(label.arg->term(),
                                                   Term::sys_void()),
                                        p}))),
              r);
          break;
        case ActionKind::CoExo: {
          auto it = mu.find({SysLabelKind::Exo, label.name});
          if (it == mu.end()) break;
          Rate div = rates.pair_rate(ActionKind::Exo, label.name);
          for (const auto& [s, rs] : it->second)
            add_behaviour(
                out, {SysLabelKind::Id, ""},
                normalize(Term::app(Term::app(s.term(), Term::sys_void()),
                                    cont)),
                rs * r / div);
          break;
        }
      }
    }
  }
  auto idIt = mu.find({SysLabelKind::Id, ""});
  if (idIt != mu.end())
    for (const auto& [c, r] : idIt->second)
      add_behaviour(out, {SysLabelKind::Id, ""},
                    normalize(Term::cell(sigma, c.term())), r);
  return out;
}

MemBehaviour sos_mem(const Term& m, const RateTable& rates) {
  // Behaviour is an invariant of the congruence class, so fold over the
  // canonical representative; this also discharges beta redexes.
  if (m.kind() == TermKind::Lambda || m.kind() == TermKind::App ||
      m.kind() == TermKind::FreeVar || m.kind() == TermKind::BoundVar) {
    Term t = normalize(m).term();
    if (t.kind() != m.kind()) return sos_mem(t, rates);
    return {};
  }
  switch (m.kind()) {
    case TermKind::Prefix: {
      Action a = m.action();
      MemLabel l{a.kind, a.name, {}};
      if (a.arg) l.arg = normalize(*a.arg);
      MemBehaviour out;
      add_behaviour(out, l, normalize(m.cont()), rates.label_rate(l));
      return out;
    }
    case TermKind::MemPar: {
      const auto& parts = m.parts();
      MemBehaviour acc = sos_mem(parts[0], rates);
      Term ctx = parts[0];
      for (size_t i = 1; i < parts.size(); ++i) {
        acc = mem_par(acc, ctx, parts[i], sos_mem(parts[i], rates));
        ctx = Term::mem_par({ctx, parts[i]});
      }
      return acc;
    }
    default:
      return {};
  }
}

SysBehaviour sos_sys(const Term& p, const RateTable& rates) {
  // See sos_mem: resolve meta nodes to their canonical representative.
  if (p.kind() == TermKind::Lambda || p.kind() == TermKind::App ||
      p.kind() == TermKind::FreeVar || p.kind() == TermKind::BoundVar) {
    Term t = normalize(p).term();
    if (t.kind() != p.kind()) return sos_sys(t, rates);
    return {};
  }
  switch (p.kind()) {
    case TermKind::Cell:
      return sys_loc(sos_sys(p.body(), rates), p.membrane(), p.body(),
                     sos_mem(p.membrane(), rates), rates);
    case TermKind::SysComp: {
      const auto& parts = p.parts();
      SysBehaviour acc = sos_sys(parts[0], rates);
      Term ctx = parts[0];
      for (size_t i = 1; i < parts.size(); ++i) {
        acc = sys_comp(acc, ctx, parts[i], sos_sys(parts[i], rates), rates);
        ctx = Term::sys_comp({ctx, parts[i]});
      }
      return acc;
    }
    default:
      return {};
  }
}

}  // namespace brane
