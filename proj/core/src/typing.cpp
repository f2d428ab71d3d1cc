#include "brane/typing.hpp"

#include "brane/syntax.hpp"

namespace brane {

namespace {

struct Use {
  std::set<std::string> free;
  std::set<int> bound;  // de Bruijn indices relative to the current position
};

[[noreturn]] void mismatch(const Term& at, const Type& want, const Type& got) {
  throw TypeError(TypeErrorKind::Mismatch,
                  "type mismatch in '" + render(at) + "': expected " +
                      render(want) + ", found " + render(got));
}

struct Checker {
  const TypeEnv& env;
  std::vector<Type> binders;  // annotation stack, innermost last

  // Merge child usages, rejecting any variable consumed on both sides.
  void join(const Term& at, Use& into, const Use& more) {
    for (const auto& v : more.free) {
      if (!into.free.insert(v).second)
        throw TypeError(TypeErrorKind::Linearity,
                        "linear variable '$" + v + "' consumed more than once in '" +
                            render(at) + "'");
    }
    for (int i : more.bound) {
      if (!into.bound.insert(i).second)
        throw TypeError(TypeErrorKind::Linearity,
                        "linear lambda-bound variable consumed more than once in '" +
                            render(at) + "'");
    }
  }

  std::pair<Type, Use> run(const Term& t) {
    switch (t.kind()) {
      case TermKind::MemZero:
        return {Type::mem(), {}};
      case TermKind::SysVoid:
        return {Type::sys(), {}};
      case TermKind::FreeVar: {
        auto it = env.find(t.name());
        if (it == env.end())
          throw TypeError(TypeErrorKind::Unbound,
                          "unbound variable '$" + t.name() + "'");
        Use u;
        u.free.insert(t.name());
        return {it->second, u};
      }
      case TermKind::BoundVar: {
        size_t i = static_cast<size_t>(t.index());
        if (i >= binders.size())
          throw TypeError(TypeErrorKind::Unbound,
                          "dangling lambda index in '" + render(t) + "'");
        Use u;
        u.bound.insert(t.index());
        return {binders[binders.size() - 1 - i], u};
      }
      case TermKind::Prefix: {
        Action a = t.action();
        Use u;
        if (a.arg) {
          auto [at_, au] = run(*a.arg);
          if (at_ != Type::mem())
            throw TypeError(TypeErrorKind::ActionArg,
                            "argument of '" +
                                std::string(a.kind == ActionKind::Pino ? "pino"
                                                                       : "cophago") +
                                " " + a.name + "' must be a membrane, found " +
                                render(at_));
          join(t, u, au);
        }
        auto [ct, cu] = run(t.cont());
        if (ct != Type::mem()) mismatch(t, Type::mem(), ct);
        join(t, u, cu);
        return {Type::mem(), u};
      }
      case TermKind::MemPar: {
        Use u;
        for (const auto& k : t.parts()) {
          auto [kt, ku] = run(k);
          if (kt != Type::mem()) mismatch(k, Type::mem(), kt);
          join(t, u, ku);
        }
        return {Type::mem(), u};
      }
      case TermKind::SysComp: {
        Use u;
        for (const auto& k : t.parts()) {
          auto [kt, ku] = run(k);
          if (kt != Type::sys()) mismatch(k, Type::sys(), kt);
          join(t, u, ku);
        }
        return {Type::sys(), u};
      }
      case TermKind::Cell: {
        auto [mt, mu] = run(t.membrane());
        if (mt != Type::mem()) mismatch(t.membrane(), Type::mem(), mt);
        auto [bt, bu] = run(t.body());
        if (bt != Type::sys()) mismatch(t.body(), Type::sys(), bt);
        Use u = mu;
        join(t, u, bu);
        return {Type::sys(), u};
      }
      case TermKind::Lambda: {
        binders.push_back(t.annot());
        auto [bt, bu] = run(t.body());
        binders.pop_back();
        Use u;
        u.free = std::move(bu.free);
        for (int i : bu.bound)
          if (i > 0) u.bound.insert(i - 1);  // drop this binder's own uses
        return {Type::arrow(t.annot(), bt), u};
      }
      case TermKind::App: {
        auto [ft, fu] = run(t.fn());
        if (ft.kind() != TypeKind::Arrow)
          throw TypeError(TypeErrorKind::Mismatch,
                          "applied term '" + render(t.fn()) +
                              "' has non-function type " + render(ft));
        auto [at_, au] = run(t.arg());
        if (at_ != ft.from()) mismatch(t.arg(), ft.from(), at_);
        Use u = fu;
        join(t, u, au);
        return {ft.to(), u};
      }
    }
    throw TypeError(TypeErrorKind::Mismatch, "malformed term");
  }
};

}  // namespace

Inferred infer(const TypeEnv& env, const Term& t) {
  Checker c{env, {}};
  auto [ty, use] = c.run(t);
  return Inferred{ty, std::move(use.free)};
}

bool check(const TypeEnv& env, const Term& t, const Type& expected) {
  return infer(env, t).type == expected;
}

}  // namespace brane
