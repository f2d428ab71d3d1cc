#include <doctest.h>

#include <algorithm>

#include <brane/congruence.hpp>
#include <brane/syntax.hpp>

#include "support.hpp"

using namespace brane;

namespace {

bool equiv_s(const char* a, const char* b) {
  return equiv(parse_term(a), parse_term(b));
}

Canon klass(const char* s) { return normalize(parse_term(s)); }

}  // namespace

TEST_SUITE("congruence") {

TEST_CASE("axioms") {
  // commutativity / associativity / units for | and o
  CHECK(equiv_s("phago n|exo m", "exo m|phago n"));
  CHECK(equiv_s("(phago n|exo m)|coexo k", "phago n|(exo m|coexo k)"));
  CHECK(equiv_s("phago n|0", "phago n"));
  CHECK(equiv_s("0[void] o exo n[void]", "exo n[void] o 0[void]"));
  CHECK(equiv_s("(0[void] o exo n[void]) o void", "0[void] o exo n[void]"));
  CHECK(equiv_s("exo n[void] o void", "exo n[void]"));
  // the empty cell is void
  CHECK(equiv_s("0[void]", "void"));
  CHECK(equiv_s("0[0[void]] o void", "void"));
  // an inert membrane does not make a cell void
  CHECK_FALSE(equiv_s("0[phago n[void]]", "void"));
  CHECK_FALSE(equiv_s("phago n[void]", "void"));
  // congruence applies inside action arguments
  CHECK(equiv_s("cophago n{0|phago m}", "cophago n{phago m|0}"));
  CHECK_FALSE(equiv_s("cophago n{phago m}", "cophago n{exo m}"));

  // beta and eta on the meta layer
  CHECK(equiv_s("(\\x:sys.$x)(void)", "void"));
  CHECK(equiv_s("(\\x:sys.$x o exo n[void])(0[void])", "exo n[void]"));
  TypeEnv env{{"f", Type::arrow(Type::sys(), Type::sys())}};
  CHECK(equiv(parse_term("\\x:sys.$f($x)"), parse_term("$f"), env));
}

TEST_CASE("equivalence requires matching types") {
  CHECK_THROWS_AS(equiv(parse_term("void"), parse_term("0")),
                  const TypeError&);
  CHECK_THROWS_AS(equiv(parse_term("$x"), parse_term("void")),
                  const TypeError&);
}

TEST_CASE("normalization is idempotent and hint erasing") {
  testsup::Rng g(42);
  std::vector<std::string> names{"a", "b", "c"};
  for (int i = 0; i < 300; ++i) {
    Term t = testsup::rand_sys(g, 14, names);
    Canon c = normalize(t);
    Canon c2 = normalize(c.term());
    CHECK(c.key() == c2.key());
    CHECK(equal_exact(c.term(), c2.term()));
  }
  // binder hints do not influence the canonical form
  Canon a = klass("\\x:sys.$x o void");
  Canon b = klass("\\other:sys.$other");
  CHECK(a.key() == b.key());
}

TEST_CASE("scrambled terms stay congruent") {
  testsup::Rng g(1234);
  std::vector<std::string> names{"a", "b"};
  for (int i = 0; i < 300; ++i) {
    Term t = testsup::rand_sys(g, 14, names);
    Term s = testsup::scramble(t, g);
    CAPTURE(render(t));
    CAPTURE(render(s));
    CHECK(equiv(t, s));
    CHECK(normalize(t).key() == normalize(s).key());
  }
  for (int i = 0; i < 200; ++i) {
    Term t = testsup::rand_mem(g, 12, names);
    Term s = testsup::scramble(t, g);
    CHECK(equiv(t, s));
  }
}

TEST_CASE("canonical keys separate distinct classes") {
  // distinct small systems get distinct keys
  const char* reps[] = {
      "void",
      "phago n[void]",
      "exo n[void]",
      "phago n[void] o phago n[void]",
      "0[phago n[void]]",
      "cophago n{0}[void]",
      "pino n{0}[void]",
  };
  std::set<std::string> keys;
  for (const char* r : reps) keys.insert(klass(r).key());
  CHECK(keys.size() == 7);
}

TEST_CASE("class application") {
  ClassSet fns{klass("\\x:sys.$x"), klass("\\x:sys.exo n[$x]")};
  ClassSet args{klass("void"), klass("phago m[void]")};
  ClassSet out = class_apply(fns, args);
  ClassSet expect{klass("void"), klass("phago m[void]"),
                  klass("exo n[void]"), klass("exo n[phago m[void]]")};
  CHECK(out == expect);

  // non-arrow "functions" and domain mismatches are skipped
  ClassSet junk{klass("void"), klass("\\y:mem.$y[void]")};
  CHECK(class_apply(junk, args).empty());
}

TEST_CASE("residuals strip a fixed context") {
  ClassSet T{klass("phago n[void] o exo m[void]"), klass("exo m[void]"),
             klass("void")};
  Term ctx = parse_system("exo m[void]");
  ClassSet byComp = residual_comp(T, ctx);
  CHECK(byComp == ClassSet{klass("phago n[void]"), klass("void")});

  ClassSet M{klass("phago n|exo m"), klass("exo m"), klass("0")};
  ClassSet byPar = residual_par(M, parse_membrane("exo m"));
  CHECK(byPar == ClassSet{klass("phago n"), klass("0")});

  ClassSet C{klass("exo m[phago n[void]]"), klass("phago n[void]"),
             klass("void")};
  CHECK(residual_cell(C, parse_membrane("exo m")) ==
        ClassSet{klass("phago n[void]")});
  // 0[void] == void, so stripping a zero membrane keeps void reachable;
  // other cells only match when their membrane is congruent to 0
  CHECK(residual_cell(C, parse_membrane("0")) == ClassSet{klass("void")});
}

TEST_CASE("multiset subtraction on canonical child vectors") {
  Term t = normalize(parse_system(
                         "phago n[void] o phago n[void] o exo m[void]"))
               .term();
  std::vector<Term> parts = comp_multiset(t);
  REQUIRE(parts.size() == 3);

  auto one = multiset_subtract(parts, {normalize(parse_system("phago n[void]")).term()});
  REQUIRE(one.has_value());
  CHECK(one->size() == 2);

  auto missing =
      multiset_subtract(parts, {normalize(parse_system("pino k{0}[void]")).term()});
  CHECK_FALSE(missing.has_value());

  // subtracting more copies than present fails
  std::vector<Term> two = {normalize(parse_system("exo m[void]")).term(),
                           normalize(parse_system("exo m[void]")).term()};
  std::sort(two.begin(), two.end());
  CHECK_FALSE(multiset_subtract(parts, two).has_value());

  CHECK(equal(comp_of({}), Term::sys_void()));
  CHECK(equal(par_of({}), Term::mem_zero()));
  CHECK(comp_of({t}).is(TermKind::SysComp));
}

TEST_CASE("de Bruijn plumbing") {
  // \x. x o $free : shifting leaves bound indices alone
  Term body = parse_term("\\x:sys.$x o $free").body();
  CHECK(uses_index(body, 0));
  CHECK_FALSE(uses_index(body, 1));
  Term shifted = shift(body, 1);
  CHECK(shifted.parts()[0].index() == 1);
  Term back = shift(shifted, -1);
  CHECK(equal(back, body));
  Term filled = subst(body, 0, parse_term("void"));
  CHECK(equiv(filled, parse_term("$free"), {{"free", Type::sys()}}));
}

}  // TEST_SUITE
