#include <doctest.h>

#include <brane/lts.hpp>
#include <brane/syntax.hpp>
#include <brane/typing.hpp>

#include "support.hpp"

using namespace brane;

namespace {

TypeErrorKind error_kind(const TypeEnv& env, const char* text) {
  try {
    infer(env, parse_term(text));
  } catch (const TypeError& e) {
    return e.kind;
  }
  REQUIRE_MESSAGE(false, "expected a type error");
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("typing") {

TEST_CASE("ground terms have their sort as type") {
  CHECK(infer({}, parse_term("void")).type == Type::sys());
  CHECK(infer({}, parse_term("0")).type == Type::mem());
  CHECK(infer({}, parse_system("phago n.exo m[void] o cophago n{coexo m}[void]"))
            .type == Type::sys());
  CHECK(infer({}, parse_membrane("pino n{coexo m|exo k}.phago n")).type ==
        Type::mem());

  testsup::Rng g(11);
  std::vector<std::string> names{"a", "b"};
  for (int i = 0; i < 200; ++i) {
    CHECK(infer({}, testsup::rand_sys(g, 12, names)).type == Type::sys());
    CHECK(infer({}, testsup::rand_mem(g, 10, names)).type == Type::mem());
  }
}

TEST_CASE("lambdas, applications and environments") {
  CHECK(infer({}, parse_term("\\x:sys.$x")).type ==
        Type::arrow(Type::sys(), Type::sys()));
  CHECK(infer({}, parse_term("\\x:sys.\\y:mem.$y[$x]")).type ==
        Type::arrow(Type::sys(), Type::arrow(Type::mem(), Type::sys())));
  CHECK(infer({}, parse_term("(\\x:sys.$x)(void)")).type == Type::sys());

  TypeEnv env{{"f", Type::arrow(Type::sys(), Type::sys())},
              {"p", Type::sys()}};
  Inferred fi = infer(env, parse_term("$f($p)"));
  CHECK(fi.type == Type::sys());
  CHECK(fi.used == std::set<std::string>{"f", "p"});

  CHECK(check({}, parse_term("\\x:sys.$x o void"),
              Type::arrow(Type::sys(), Type::sys())));
  CHECK_FALSE(check({}, parse_term("\\x:sys.$x"),
                    Type::arrow(Type::mem(), Type::sys())));
}

TEST_CASE("transition residues are typed by their label") {
  // phago residues take a receiving context, cophago residues a system,
  // exo residues a system and then a membrane
  Canon p = normalize(parse_system("phago n.exo m[void]"));
  for (const SysStep& s : sys_steps(p)) {
    if (s.label.kind == SysLabelKind::Phago)
      CHECK(infer({}, s.target.term()).type ==
            Type::arrow(Type::arrow(Type::sys(), Type::sys()), Type::sys()));
  }
  Canon q = normalize(parse_system("cophago n{0}[void]"));
  for (const SysStep& s : sys_steps(q))
    if (s.label.kind == SysLabelKind::CoPhago)
      CHECK(infer({}, s.target.term()).type ==
            Type::arrow(Type::sys(), Type::sys()));
  Canon r = normalize(parse_system("exo n[void]"));
  for (const SysStep& s : sys_steps(r))
    if (s.label.kind == SysLabelKind::Exo)
      CHECK(infer({}, s.target.term()).type ==
            Type::arrow(Type::sys(), Type::arrow(Type::mem(), Type::sys())));
}

TEST_CASE("errors by kind") {
  CHECK(error_kind({}, "$y") == TypeErrorKind::Unbound);
  CHECK(error_kind({}, "(\\x:sys.$x)(0)") == TypeErrorKind::Mismatch);
  CHECK(error_kind({}, "void(void)") == TypeErrorKind::Mismatch);
  CHECK(error_kind({}, "\\x:sys.$x o $x") == TypeErrorKind::Linearity);
  CHECK(error_kind({}, "\\x:sys.cophago n{$x}") == TypeErrorKind::ActionArg);
  CHECK(error_kind({}, "\\x:mem.$x o void") == TypeErrorKind::Mismatch);

  TypeEnv env{{"x", Type::sys()}};
  try {
    infer(env, parse_term("$x | 0"));
    CHECK(false);
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeErrorKind::Mismatch);
    // the message names the offending subterm
    CHECK(std::string(e.what()).find("$x") != std::string::npos);
  }
}

TEST_CASE("affine use: at most one consumption per variable") {
  // a single use is fine, parallel double use is not
  TypeEnv env{{"m", Type::mem()}};
  CHECK(infer(env, parse_term("$m[void]")).used ==
        std::set<std::string>{"m"});
  try {
    infer(env, parse_term("$m[$m[void]]"));
    CHECK(false);
  } catch (const TypeError& e) {
    CHECK(e.kind == TypeErrorKind::Linearity);
  }
  // zero uses are fine (affine, not strictly linear)
  CHECK(infer(env, parse_term("void")).used.empty());
  CHECK(infer({}, parse_term("\\x:sys.void")).type ==
        Type::arrow(Type::sys(), Type::sys()));
}

}  // TEST_SUITE
