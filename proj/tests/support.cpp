#include "support.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace testsup {

using brane::Action;
using brane::ActionKind;
using brane::Canon;
using brane::Term;
using brane::TermKind;
using brane::Type;

namespace {

int pick(Rng& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

bool roll(Rng& g, int num, int den) { return pick(g, 1, den) <= num; }

const std::string& pick_name(Rng& g, const std::vector<std::string>& names) {
  return names[pick(g, 0, static_cast<int>(names.size()) - 1)];
}

}  // namespace

Term rand_mem(Rng& g, int fuel, const std::vector<std::string>& names) {
  if (fuel <= 1) return Term::mem_zero();
  switch (pick(g, 0, 5)) {
    case 0:
      return Term::mem_zero();
    case 1:
    case 2:
    case 3: {
      auto ak = static_cast<ActionKind>(pick(g, 0, 4));
      Action a{ak, pick_name(g, names), {}};
      if (action_has_arg(ak)) {
        a.arg = rand_mem(g, (fuel - 1) / 2, names);
        return Term::prefix(std::move(a), rand_mem(g, (fuel - 1) / 2, names));
      }
      return Term::prefix(std::move(a), rand_mem(g, fuel - 1, names));
    }
    default: {
      if (fuel < 3) return Term::mem_zero();
      int l = pick(g, 1, fuel - 2);
      return Term::mem_par(
          {rand_mem(g, l, names), rand_mem(g, fuel - 1 - l, names)});
    }
  }
}

Term rand_sys(Rng& g, int fuel, const std::vector<std::string>& names) {
  if (fuel <= 2) return Term::sys_void();
  switch (pick(g, 0, 5)) {
    case 0:
      return Term::sys_void();
    case 1:
    case 2:
    case 3:
      return Term::cell(rand_mem(g, (fuel - 1) / 2, names),
                        rand_sys(g, fuel - 1 - (fuel - 1) / 2, names));
    default: {
      int l = pick(g, 1, fuel - 2);
      return Term::sys_comp(
          {rand_sys(g, l, names), rand_sys(g, fuel - 1 - l, names)});
    }
  }
}

namespace {

// Rebuild a shuffled child list either as one flat node or as a random
// binary nesting; both are congruent to the original chain.
Term build_chain(std::vector<Term> xs, bool mem, Rng& g) {
  if (xs.empty()) return mem ? Term::mem_zero() : Term::sys_void();
  if (xs.size() == 1) return std::move(xs[0]);
  if (pick(g, 0, 1) == 0)
    return mem ? Term::mem_par(std::move(xs)) : Term::sys_comp(std::move(xs));
  size_t cut = std::uniform_int_distribution<size_t>(1, xs.size() - 1)(g);
  std::vector<Term> l(xs.begin(), xs.begin() + cut);
  std::vector<Term> r(xs.begin() + cut, xs.end());
  Term lt = build_chain(std::move(l), mem, g);
  Term rt = build_chain(std::move(r), mem, g);
  return mem ? Term::mem_par({std::move(lt), std::move(rt)})
             : Term::sys_comp({std::move(lt), std::move(rt)});
}

// Identity beta-redex around a system-typed subterm.
Term beta_wrap(Term s, Rng& g) {
  if (!roll(g, 1, 8)) return s;
  return Term::app(Term::lambda("w", Type::sys(), Term::bound_var(0, "w")),
                   std::move(s));
}

}  // namespace

Term scramble(const Term& t, Rng& g) {
  switch (t.kind()) {
    case TermKind::MemZero:
      return roll(g, 1, 8) ? Term::mem_par({t, t}) : t;
    case TermKind::SysVoid:
      if (roll(g, 1, 8)) return Term::cell(Term::mem_zero(), t);
      if (roll(g, 1, 8)) return Term::sys_comp({t, t});
      return t;
    case TermKind::FreeVar:
    case TermKind::BoundVar:
      return t;
    case TermKind::Prefix: {
      Action a = t.action();
      if (a.arg) a.arg = scramble(*a.arg, g);
      Term out = Term::prefix(std::move(a), scramble(t.cont(), g));
      if (roll(g, 1, 6))
        out = Term::mem_par({Term::mem_zero(), std::move(out)});
      return out;
    }
    case TermKind::MemPar:
    case TermKind::SysComp: {
      bool mem = t.is(TermKind::MemPar);
      std::vector<Term> xs;
      for (const Term& c : t.parts()) xs.push_back(scramble(c, g));
      if (roll(g, 1, 4))
        xs.push_back(mem ? Term::mem_zero() : Term::sys_void());
      std::shuffle(xs.begin(), xs.end(), g);
      Term out = build_chain(std::move(xs), mem, g);
      return mem ? out : beta_wrap(std::move(out), g);
    }
    case TermKind::Cell: {
      Term out = Term::cell(scramble(t.membrane(), g), scramble(t.body(), g));
      if (roll(g, 1, 6))
        out = Term::sys_comp({Term::sys_void(), std::move(out)});
      return beta_wrap(std::move(out), g);
    }
    case TermKind::Lambda: {
      std::string h = t.hint();
      if (roll(g, 1, 4)) h = h.empty() ? "v" : h + "x";
      return Term::lambda(std::move(h), t.annot(), scramble(t.body(), g));
    }
    case TermKind::App:
      return Term::app(scramble(t.fn(), g), scramble(t.arg(), g));
  }
  return t;
}

size_t node_count(const Term& t) {
  switch (t.kind()) {
    case TermKind::MemZero:
    case TermKind::SysVoid:
    case TermKind::FreeVar:
    case TermKind::BoundVar:
      return 1;
    case TermKind::Prefix: {
      Action a = t.action();
      return 1 + (a.arg ? node_count(*a.arg) : 0) + node_count(t.cont());
    }
    case TermKind::MemPar:
    case TermKind::SysComp: {
      size_t n = 1;
      for (const Term& c : t.parts()) n += node_count(c);
      return n;
    }
    case TermKind::Cell:
      return 1 + node_count(t.membrane()) + node_count(t.body());
    case TermKind::Lambda:
      return 1 + node_count(t.body());
    case TermKind::App:
      return 1 + node_count(t.fn()) + node_count(t.arg());
  }
  return 1;
}

Corpus enum_corpus(int maxNodes, const std::vector<std::string>& names) {
  int M = maxNodes;
  int memMax = std::max(1, M - 2);
  std::vector<std::vector<Term>> mems(memMax + 1), syss(M + 1);
  if (memMax >= 1) mems[1].push_back(Term::mem_zero());
  if (M >= 1) syss[1].push_back(Term::sys_void());
  for (int k = 2; k <= memMax; ++k) {
    for (ActionKind ak :
         {ActionKind::Phago, ActionKind::Exo, ActionKind::CoExo})
      for (const auto& n : names)
        for (const Term& c : mems[k - 1])
          mems[k].push_back(Term::prefix(Action{ak, n, {}}, c));
    for (ActionKind ak : {ActionKind::CoPhago, ActionKind::Pino})
      for (const auto& n : names)
        for (int i = 1; i <= k - 2; ++i)
          for (const Term& a : mems[i])
            for (const Term& c : mems[k - 1 - i])
              mems[k].push_back(Term::prefix(Action{ak, n, a}, c));
    for (int i = 1; i <= k - 2; ++i)
      for (const Term& l : mems[i])
        for (const Term& r : mems[k - 1 - i])
          mems[k].push_back(Term::mem_par({l, r}));
  }
  for (int k = 2; k <= M; ++k)
    for (int i = 1; i <= k - 2; ++i) {
      if (i <= memMax)
        for (const Term& m : mems[i])
          for (const Term& s : syss[k - 1 - i])
            syss[k].push_back(Term::cell(m, s));
      for (const Term& l : syss[i])
        for (const Term& r : syss[k - 1 - i])
          syss[k].push_back(Term::sys_comp({l, r}));
    }
  Corpus out;
  std::set<Canon> cm, cs;
  for (auto& lvl : mems)
    for (auto& t : lvl) cm.insert(brane::normalize(t));
  for (auto& lvl : syss)
    for (auto& t : lvl) cs.insert(brane::normalize(t));
  out.mems.assign(cm.begin(), cm.end());
  out.syss.assign(cs.begin(), cs.end());
  return out;
}

std::string brane_bin() {
  if (const char* p = std::getenv("BRANE_BIN")) return p;
#ifdef BRANE_BIN_PATH
  return BRANE_BIN_PATH;
#else
  return "brane";
#endif
}

std::string write_temp(const std::string& text) {
  static std::string dir = [] {
    char tmpl[] = "/tmp/brane-tests-XXXXXX";
    const char* d = mkdtemp(tmpl);
    return std::string(d ? d : "/tmp");
  }();
  static int counter = 0;
  std::string path = dir + "/f" + std::to_string(counter++) + ".txt";
  std::ofstream out(path);
  out << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(brane_bin());
  for (const auto& a : args) cmd += " " + shell_quote(a);
  std::string errFile = write_temp("");
  cmd += " 2> " + shell_quote(errFile);
  CliResult res;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, got);
  int rc = pclose(p);
  if (WIFEXITED(rc)) res.status = WEXITSTATUS(rc);
  std::ifstream err(errFile);
  std::ostringstream es;
  es << err.rdbuf();
  res.err = es.str();
  return res;
}

}  // namespace testsup
