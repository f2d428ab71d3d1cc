// Acceptance harness: runs the eleven end-to-end checks the toolkit must
// satisfy, each with a wall-clock budget, and prints one PASS/FAIL line
// per check. Exit code 0 iff every check passes within its budget.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brane/markov.hpp"
#include "brane/syntax.hpp"
#include "brane/typing.hpp"
#include "support.hpp"

using namespace brane;
using testsup::Corpus;
using testsup::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string note;
};

Outcome ok(std::string note = "") { return {true, std::move(note)}; }
Outcome fail(std::string note) { return {false, std::move(note)}; }

const Corpus& corpus9() {
  static Corpus c = testsup::enum_corpus(9, {"a", "b"});
  return c;
}

const SysLabel kId{SysLabelKind::Id, ""};

// ---------------------------------------------------------------- checks

// The engulf interaction: internal step plus its full derivation tree,
// exercised through the CLI.
Outcome id_derivation_rule_tree() {
  std::string fig = testsup::write_temp(
      "phago n.exo a | coexo b[void] o cophago n{0}.exo c | coexo d[void]\n");
  testsup::CliResult r = testsup::run_cli({"steps", fig, "--label", "id",
                                           "--trace"});
  if (r.status != 0) return fail("exit " + std::to_string(r.status));
  const std::string expect =
      "id: exo c|coexo d[0[exo a|coexo b[void]]]\n"
      "  id-phago-L\n"
      "    phago\n"
      "      L-par\n"
      "        phago-pref\n"
      "    cophago\n"
      "      L-par\n"
      "        cophago-pref\n";
  if (r.out != expect) return fail("unexpected output: " + r.out);
  return ok();
}

// Reduction and internal transitions describe the same relation on
// congruence classes, over every small system and 200 random larger ones.
Outcome reduction_vs_id_steps_corpus() {
  auto agree = [](const Canon& c) {
    std::set<ClassKey> red, ids;
    for (const Canon& t : reduce(c)) red.insert(t.key());
    for (const SysStep& s : sys_steps(c))
      if (s.label.kind == SysLabelKind::Id) ids.insert(s.target.key());
    return red == ids;
  };
  const Corpus& corp = corpus9();
  for (const Canon& c : corp.syss)
    if (!agree(c)) return fail("mismatch at " + c.key());
  Rng rng(20260823);
  int done = 0;
  while (done < 200) {
    Term t = testsup::rand_sys(rng, 18, {"a", "b"});
    if (testsup::node_count(t) <= 9) continue;
    Canon c = normalize(t);
    if (!agree(c)) return fail("mismatch at random system " + c.key());
    ++done;
  }
  return ok(std::to_string(corp.syss.size()) + " small classes + 200 random");
}

// Exact interaction rates of the engulf family at rate 2 per action.
Outcome pointwise_phago_rates() {
  RateTable rt = RateTable::uniform(Rate(2));
  auto val = [&](const std::string& sys, const SysLabel& l,
                 const std::string& target) {
    return theta_sys(l, parse_term(sys), {normalize(parse_term(target))}, rt);
  };
  SysLabel phn{SysLabelKind::Phago, "n"};
  struct Row {
    std::string sys;
    SysLabel label;
    std::string target;
    Rate expect;
  };
  std::vector<Row> rows = {
      {"phago n.exo m[void]", phn, "0[0[exo m[void]]]", Rate(2)},
      {"phago n.exo m[void] o phago n.exo m[void]", phn,
       "0[0[exo m[void]]] o phago n.exo m[void]", Rate(4)},
      {"phago n.exo m[void] o phago n[void]", phn,
       "0[0[exo m[void]]] o phago n[void]", Rate(2)},
      {"phago n.exo m[void] o phago n[void]", phn, "phago n.exo m[void]",
       Rate(2)},
      {"phago n.exo m[void] o cophago n{0}[void]", kId, "0[0[exo m[void]]]",
       Rate(2)},
  };
  for (const Row& r : rows) {
    Rate got = val(r.sys, r.label, r.target);
    if (got != r.expect)
      return fail(r.sys + " @ " + render(r.label) + ": got " +
                  render_rate(got) + ", want " + render_rate(r.expect));
  }
  return ok("5 exact rates");
}

// Rate-aware bisimilarity verdicts for the three benchmark pairs.
Outcome rate_bisim_verdicts() {
  RateTable rt = RateTable::uniform(Rate(1));
  auto check = [&](const std::string& a, const std::string& b) {
    Term ta = parse_term(a), tb = parse_term(b);
    return rate_bisim(ta, tb, default_family(ta, tb), rt);
  };
  RateBisimResult r = check("0[phago k[void]]", "void");
  if (!r.bisimilar) return fail("inert cell vs void: " + r.detail);
  r = check("pino n{0}|pino n{0}[void]", "pino n{0}.pino n{0}[void]");
  if (r.bisimilar) return fail("parallel vs sequential buds not told apart");
  if (r.detail != "id: total rate 2 vs 1")
    return fail("unexpected refutation: " + r.detail);
  std::vector<std::string> cells = {
      "cophago n{0}|coexo m[void]",
      "cophago n{0}.coexo m[void]",
      "cophago n{0}[void]",
  };
  for (size_t i = 0; i < cells.size(); ++i)
    for (size_t j = i + 1; j < cells.size(); ++j) {
      RateBisimResult rr = check(cells[i], cells[j]);
      if (!rr.bisimilar)
        return fail(cells[i] + " vs " + cells[j] + ": " + rr.detail);
    }
  return ok("5 verdicts");
}

// One pair is bisimilar when only branching is observed but separated
// once exit rates matter.
Outcome strong_vs_rate_contrast() {
  Term a = parse_term("pino n{0}|pino n{0}[void]");
  Term b = parse_term("pino n{0}.pino n{0}[void]");
  InstFamily fam = default_family(a, b);
  BisimResult s = strong_bisim(a, b, fam);
  if (!s.bisimilar) {
    std::string w;
    for (const std::string& x : s.witness) w += " " + x;
    return fail("expected strong bisimilarity, got witness" + w);
  }
  RateBisimResult r = rate_bisim(a, b, fam, RateTable::uniform(Rate(1)));
  if (r.bisimilar) return fail("rates failed to separate the pair");
  return ok("strong yes, stochastic no (" + r.detail + ")");
}

// The structural measure is positive on a singleton class exactly when
// the transition relation reaches that class.
Outcome singleton_positivity_vs_steps() {
  const Corpus& corp = corpus9();
  RateTable rt = RateTable::uniform(Rate(1));
  Rng rng(6);
  // residue pools per label, for negative probes
  std::map<std::string, std::vector<Canon>> pool;
  std::map<std::string, std::set<ClassKey>> poolKeys;
  size_t positives = 0, negatives = 0;
  for (const Canon& c : corp.syss) {
    std::map<SysLabel, std::set<ClassKey>> targets;
    for (const SysStep& s : sys_steps(c)) {
      targets[s.label].insert(s.target.key());
      std::string lk = render(s.label);
      if (poolKeys[lk].insert(s.target.key()).second &&
          pool[lk].size() < 400)
        pool[lk].push_back(s.target);
      Rate got = meta_theta(AnyLabel(s.label), c.term(), {s.target}, rt);
      if (!(got > 0))
        return fail("zero mass on reachable class: " + c.key() + " --" +
                    render(s.label) + "--> " + s.target.key());
      ++positives;
    }
    // negative probes: same-label residues/classes this state cannot reach
    for (const auto& [label, reached] : targets) {
      const std::vector<Canon>& cand = pool[render(label)];
      int tried = 0;
      for (int k = 0; k < 6 && tried < 2 && !cand.empty(); ++k) {
        const Canon& t = cand[static_cast<size_t>(
            std::uniform_int_distribution<int>(
                0, static_cast<int>(cand.size()) - 1)(rng))];
        if (reached.count(t.key())) continue;
        Rate got = meta_theta(AnyLabel(label), c.term(), {t}, rt);
        if (got != 0)
          return fail("positive mass on unreachable class: " + c.key() +
                      " @ " + render(label) + " into " + t.key());
        ++tried;
        ++negatives;
      }
    }
    // a label with no steps at all must measure zero everywhere
    if (!targets.count(kId) && !corp.syss.empty()) {
      const Canon& t = corp.syss[static_cast<size_t>(
          std::uniform_int_distribution<int>(
              0, static_cast<int>(corp.syss.size()) - 1)(rng))];
      Rate got = meta_theta(AnyLabel(kId), c.term(), {t}, rt);
      if (got != 0)
        return fail("positive internal mass without an internal step: " +
                    c.key());
      ++negatives;
    }
  }
  return ok(std::to_string(positives) + " positive / " +
            std::to_string(negatives) + " negative probes");
}

// Behaviours are total and deterministic, congruent systems have equal
// behaviours, and equal behaviours do not imply congruence.
Outcome behaviour_totality_and_congruence() {
  RateTable rt = RateTable::uniform(Rate(1));
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    Term t = testsup::rand_sys(rng, 10, {"n", "m"});
    SysBehaviour mu = sos_sys(t, rt);
    for (const auto& [label, meas] : mu) {
      if (meas.empty())
        return fail("empty measure under " + render(label) + " at " +
                    normalize(t).key());
      for (const auto& [target, mass] : meas)
        if (!(mass > 0)) return fail("non-positive mass at " + target.key());
    }
    if (sos_sys(t, rt) != mu) return fail("behaviour not deterministic");
    Term s = testsup::scramble(t, rng);
    if (!equiv(t, s)) return fail("scrambler broke congruence");
    if (sos_sys(s, rt) != mu)
      return fail("congruent systems with different behaviours: " +
                  normalize(t).key());
  }
  Term ce1 = parse_term("0[phago n[void]]");
  Term ce2 = parse_term("void");
  if (!sos_sys(ce1, rt).empty() || !sos_sys(ce2, rt).empty())
    return fail("counterexample pair is not inert");
  if (equiv(ce1, ce2))
    return fail("counterexample pair is congruent");
  return ok("1000 systems + counterexample pair");
}

// Algebraic laws of the behaviour combinators.
Outcome combinator_laws() {
  RateTable rt = RateTable::uniform(Rate(3, 2));
  Rng rng(8);
  int instances = 0;
  Term mz = Term::mem_zero();
  MemBehaviour memUnit = sos_mem(mz, rt);
  for (int i = 0; i < 200; ++i) {
    Term a = testsup::rand_mem(rng, 7, {"n", "m"});
    Term b = testsup::rand_mem(rng, 7, {"n", "m"});
    Term c = testsup::rand_mem(rng, 7, {"n", "m"});
    MemBehaviour ma = sos_mem(a, rt), mb = sos_mem(b, rt),
                 mc = sos_mem(c, rt);
    Term ab = Term::mem_par({a, b});
    if (mem_par(ma, a, b, mb) != mem_par(mb, b, a, ma))
      return fail("membrane merge is not commutative");
    ++instances;
    Term bc = Term::mem_par({b, c});
    if (mem_par(mem_par(ma, a, b, mb), ab, c, mc) !=
        mem_par(ma, a, bc, mem_par(mb, b, c, mc)))
      return fail("membrane merge is not associative");
    ++instances;
    if (mem_par(mem_par(ma, a, b, mb), ab, c, mc) !=
        sos_mem(Term::mem_par({a, b, c}), rt))
      return fail("membrane merge disagrees with direct behaviour");
    ++instances;
    if (mem_par(ma, a, mz, memUnit) != ma)
      return fail("the inert membrane is not a merge unit");
    ++instances;
  }
  Term sv = Term::sys_void();
  SysBehaviour sysUnit = sos_sys(sv, rt);
  for (int i = 0; i < 200; ++i) {
    Term p = testsup::rand_sys(rng, 8, {"n", "m"});
    Term q = testsup::rand_sys(rng, 8, {"n", "m"});
    Term r = testsup::rand_sys(rng, 8, {"n", "m"});
    SysBehaviour mp = sos_sys(p, rt), mq = sos_sys(q, rt),
                 mr = sos_sys(r, rt);
    Term pq = Term::sys_comp({p, q});
    if (sys_comp(mp, p, q, mq, rt) != sys_comp(mq, q, p, mp, rt))
      return fail("composition is not commutative");
    ++instances;
    Term qr = Term::sys_comp({q, r});
    if (sys_comp(sys_comp(mp, p, q, mq, rt), pq, r, mr, rt) !=
        sys_comp(mp, p, qr, sys_comp(mq, q, r, mr, rt), rt))
      return fail("composition is not associative");
    ++instances;
    if (sys_comp(sys_comp(mp, p, q, mq, rt), pq, r, mr, rt) !=
        sos_sys(Term::sys_comp({p, q, r}), rt))
      return fail("composition disagrees with direct behaviour");
    ++instances;
    if (sys_comp(mp, p, sv, sysUnit, rt) != mp)
      return fail("the empty system is not a composition unit");
    ++instances;
  }
  if (!sys_loc(sysUnit, mz, sv, memUnit, rt).empty() ||
      !sos_sys(Term::cell(mz, sv), rt).empty())
    return fail("locating empty behaviours is not empty");
  ++instances;
  return ok(std::to_string(instances) + " instances");
}

// The structural measure answers exactly the same queries as the derived
// behaviour, over the full small corpus and 500 random class sets.
Outcome system_measure_vs_query() {
  const Corpus& corp = corpus9();
  RateTable rt = RateTable::uniform(Rate(2));
  Rng rng(9);
  size_t queries = 0;
  for (const Canon& c : corp.syss) {
    SysBehaviour mu = sos_sys(c.term(), rt);
    for (const auto& [label, meas] : mu) {
      ClassSet all;
      for (const auto& [target, mass] : meas) all.insert(target);
      Rate want = behaviour_query(mu, label, all);
      if (theta_sys(label, c.term(), all, rt) != want)
        return fail("full-target mismatch at " + c.key() + " @ " +
                    render(label));
      const Canon& first = meas.begin()->first;
      if (theta_sys(label, c.term(), {first}, rt) !=
          behaviour_query(mu, label, {first}))
        return fail("singleton mismatch at " + c.key() + " @ " +
                    render(label));
      queries += 2;
    }
    SysLabel absent{SysLabelKind::Exo, "zz"};
    if (theta_sys(absent, c.term(), {c}, rt) != 0)
      return fail("mass under a disabled label at " + c.key());
    ++queries;
  }
  std::vector<SysLabel> labels = {
      kId,
      {SysLabelKind::Phago, "a"},    {SysLabelKind::Phago, "b"},
      {SysLabelKind::CoPhago, "a"},  {SysLabelKind::CoPhago, "b"},
      {SysLabelKind::Exo, "a"},      {SysLabelKind::Exo, "b"},
  };
  auto anyClass = [&]() -> const Canon& {
    return corp.syss[static_cast<size_t>(std::uniform_int_distribution<int>(
        0, static_cast<int>(corp.syss.size()) - 1)(rng))];
  };
  for (int i = 0; i < 500; ++i) {
    const Canon& c = anyClass();
    const SysLabel& l =
        labels[static_cast<size_t>(std::uniform_int_distribution<int>(
            0, static_cast<int>(labels.size()) - 1)(rng))];
    ClassSet set;
    int width = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int k = 0; k < width; ++k) set.insert(anyClass());
    SysBehaviour mu = sos_sys(c.term(), rt);
    auto it = mu.find(l);
    if (it != mu.end() && !it->second.empty() &&
        std::uniform_int_distribution<int>(0, 1)(rng))
      set.insert(it->second.begin()->first);
    if (theta_sys(l, c.term(), set, rt) != behaviour_query(mu, l, set))
      return fail("random-set mismatch at " + c.key() + " @ " + render(l));
    ++queries;
  }
  return ok(std::to_string(queries) + " queries");
}

// Simulation statistics: the first-jump time of the engulf system matches
// its exit rate, and equal seeds give byte-identical output.
Outcome ssa_first_jump_statistics() {
  Ctmc c = explore(parse_term("phago n.exo m[void] o cophago n{0}[void]"),
                   RateTable::uniform(Rate(2)));
  if (c.states.size() != 2 || c.transitions.size() != 1 ||
      c.transitions[0].rate != Rate(2))
    return fail("unexpected chain structure");
  const int runs = 100000;
  auto simulate = [&]() {
    std::vector<Trajectory> batch;
    batch.reserve(runs);
    for (int i = 0; i < runs; ++i)
      batch.push_back(ssa_run(c, 1 + static_cast<uint64_t>(i), 1e9));
    return batch;
  };
  std::vector<Trajectory> batch = simulate();
  double sum = 0;
  for (const Trajectory& t : batch) {
    if (t.points.size() != 2) return fail("run did not make its one jump");
    sum += t.points[1].time;
  }
  double mean = sum / runs;
  if (!(mean > 0.49 && mean < 0.51)) {
    std::ostringstream ss;
    ss << "first-jump mean " << mean << " outside [0.49, 0.51]";
    return fail(ss.str());
  }
  std::string csv = trajectory_csv(batch);
  std::string csv2 = trajectory_csv(simulate());
  if (csv != csv2) return fail("same seeds, different bytes");
  std::ostringstream ss;
  ss << "mean " << mean << " over 100000 runs";
  return ok(ss.str());
}

// Congruent systems are bisimilar for both equivalences.
Outcome congruence_implies_bisimilarity() {
  RateTable rt = RateTable::uniform(Rate(1));
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Term t = testsup::rand_sys(rng, 9, {"n"});
    Term s = testsup::scramble(t, rng);
    InstFamily fam = default_family(t, s);
    BisimResult sb = strong_bisim(t, s, fam);
    if (!sb.bisimilar)
      return fail("strong check split congruent pair " + normalize(t).key());
    RateBisimResult rb = rate_bisim(t, s, fam, rt);
    if (!rb.bisimilar)
      return fail("rate check split congruent pair " + normalize(t).key() +
                  ": " + rb.detail);
  }
  return ok("500 scrambled pairs");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limitSec;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> list = {
      {"id-derivation-rule-tree", 1.0, id_derivation_rule_tree},
      {"reduction-vs-id-steps-corpus", 60.0, reduction_vs_id_steps_corpus},
      {"pointwise-phago-rates", 1.0, pointwise_phago_rates},
      {"rate-bisim-verdicts", 10.0, rate_bisim_verdicts},
      {"strong-vs-rate-contrast", 10.0, strong_vs_rate_contrast},
      {"singleton-positivity-vs-steps", 120.0, singleton_positivity_vs_steps},
      {"behaviour-totality-and-congruence", 60.0,
       behaviour_totality_and_congruence},
      {"combinator-laws", 60.0, combinator_laws},
      {"system-measure-vs-query", 120.0, system_measure_vs_query},
      {"ssa-first-jump-statistics", 30.0, ssa_first_jump_statistics},
      {"congruence-implies-bisimilarity", 60.0,
       congruence_implies_bisimilarity},
  };
  bool all = true;
  for (const Criterion& c : list) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                               t0)
                     .count();
    bool inTime = sec <= c.limitSec;
    bool pass = o.pass && inTime;
    all = all && pass;
    std::printf("%s  %-34s %6.2fs / %gs%s%s\n", pass ? "PASS" : "FAIL",
                c.name, sec, c.limitSec, o.note.empty() ? "" : "  -- ",
                o.note.c_str());
    if (o.pass && !inTime)
      std::printf("      (correct but exceeded the time budget)\n");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
