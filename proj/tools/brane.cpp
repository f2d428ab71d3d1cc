// brane: command-line front end for the library.
//
// Subcommands: check, normalize, equiv, steps, rates, measure, bisim,
// export, simulate. --format text|jsonl switches between human-readable
// and line-oriented JSON output. Exit codes: 0 success / positive verdict,
// 1 negative verdict (type check failed, not equivalent, distinguished),
// 2 usage, parse, typing-as-input, configuration or budget errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "brane/markov.hpp"
#include "brane/syntax.hpp"
#include "brane/typing.hpp"

using nlohmann::json;
using namespace brane;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t state_budget() {
  if (const char* env = std::getenv("BRANE_STATE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    throw std::runtime_error("BRANE_STATE_BUDGET must be a positive integer");
  }
  return 100000;
}

// "id", "phago n", "cophago n", "exo n", or mem:-prefixed membrane labels
// like "mem:coexo n" / "mem:pino n{rho}".
AnyLabel parse_label(const std::string& text) {
  std::string s = text;
  bool memSide = false;
  if (s.rfind("mem:", 0) == 0) {
    memSide = true;
    s = s.substr(4);
  }
  std::string arg;
  size_t brace = s.find('{');
  if (brace != std::string::npos) {
    if (s.back() != '}')
      throw std::runtime_error("malformed label argument in '" + text + "'");
    arg = s.substr(brace + 1, s.size() - brace - 2);
    s = s.substr(0, brace);
  }
  std::istringstream in(s);
  std::string word, name, extra;
  in >> word >> name;
  if (in >> extra) throw std::runtime_error("malformed label '" + text + "'");
  if (!memSide) {
    if (!arg.empty())
      throw std::runtime_error("system labels take no argument: '" + text + "'");
    if (word == "id" && name.empty()) return SysLabel{SysLabelKind::Id, ""};
    if (name.empty())
      throw std::runtime_error("label '" + text + "' needs an action name");
    if (word == "phago") return SysLabel{SysLabelKind::Phago, name};
    if (word == "cophago") return SysLabel{SysLabelKind::CoPhago, name};
    if (word == "exo") return SysLabel{SysLabelKind::Exo, name};
    throw std::runtime_error("unknown system label '" + text +
                             "' (expected id, phago n, cophago n or exo n)");
  }
  if (name.empty())
    throw std::runtime_error("label '" + text + "' needs an action name");
  ActionKind kind;
  if (word == "phago") kind = ActionKind::Phago;
  else if (word == "cophago") kind = ActionKind::CoPhago;
  else if (word == "exo") kind = ActionKind::Exo;
  else if (word == "coexo") kind = ActionKind::CoExo;
  else if (word == "pino") kind = ActionKind::Pino;
  else
    throw std::runtime_error("unknown membrane label '" + text + "'");
  MemLabel l{kind, name, {}};
  if (action_has_arg(kind))
    l.arg = normalize(parse_membrane(arg.empty() ? "0" : arg, "<label>"));
  else if (!arg.empty())
    throw std::runtime_error("label '" + text + "' takes no argument");
  return l;
}

InstFamily load_family(const std::string& path, const Term& p, const Term& q) {
  InstFamily fam = default_family(p, q);
  if (path.empty()) return fam;
  ClassSet mems, syss;
  mems.insert(normalize(Term::mem_zero()));
  syss.insert(normalize(Term::sys_void()));
  std::istringstream in(slurp(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    auto fail = [&](const std::string& msg) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               msg);
    };
    if (line.rfind("mem:", 0) == 0)
      mems.insert(normalize(parse_membrane(line.substr(4), path)));
    else if (line.rfind("sys:", 0) == 0)
      syss.insert(normalize(parse_system(line.substr(4), path)));
    else
      fail("expected 'mem: <membrane>' or 'sys: <system>'");
  }
  fam.mems.assign(mems.begin(), mems.end());
  fam.syss.assign(syss.begin(), syss.end());
  return fam;
}

json deriv_json(const Derivation& d) {
  json prem = json::array();
  for (const Derivation& p : d.premises) prem.push_back(deriv_json(p));
  return json{{"rule", d.rule}, {"premises", std::move(prem)}};
}

void print_deriv(std::ostream& out, const Derivation& d, int depth) {
  out << std::string(static_cast<size_t>(depth) * 2, ' ') << d.rule << '\n';
  for (const Derivation& p : d.premises) print_deriv(out, p, depth + 1);
}

Term parse_checked_system(const std::string& path) {
  Term t = parse_system(slurp(path), path);
  infer({}, t);  // must be closed and well-typed
  return t;
}

struct Options {
  std::string format = "text";
  bool jsonl() const { return format == "jsonl"; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite Brane Calculus toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "jsonl"}))
      ->capture_default_str();

  std::string file, file2, ratesPath, setPath, labelText, targetPath;
  std::string famPath, outPrefix, mode = "strong", typeFlag;
  uint64_t seed = 1;
  double tmax = 1.0;
  unsigned runs = 1;
  bool trace = false;

  CLI::App* cmdCheck = app.add_subcommand("check", "Parse and type a term");
  cmdCheck->add_option("FILE", file)->required();
  cmdCheck->add_option("--type", typeFlag, "Expected entry sort")
      ->check(CLI::IsMember({"sys", "mem"}));

  CLI::App* cmdNorm =
      app.add_subcommand("normalize", "Print the canonical rendering");
  cmdNorm->add_option("FILE", file)->required();

  CLI::App* cmdEquiv =
      app.add_subcommand("equiv", "Structural congruence of two terms");
  cmdEquiv->add_option("FILE1", file)->required();
  cmdEquiv->add_option("FILE2", file2)->required();

  CLI::App* cmdSteps = app.add_subcommand("steps", "Labelled transitions");
  cmdSteps->add_option("FILE", file)->required();
  cmdSteps->add_option("--label", labelText,
                       "Only steps with this label kind (id|phago|cophago|exo)")
      ->check(CLI::IsMember({"id", "phago", "cophago", "exo"}));
  cmdSteps->add_flag("--trace", trace, "Print derivation trees");

  CLI::App* cmdRates = app.add_subcommand("rates", "Pointwise rated behaviour");
  cmdRates->add_option("FILE", file)->required();
  cmdRates->add_option("--rates", ratesPath, "Rate config")->required();
  cmdRates->add_option("--label", labelText, "Filter/select a system label");
  cmdRates->add_option("--target", targetPath,
                       "Print the aggregate rate into this system's class");

  CLI::App* cmdMeasure =
      app.add_subcommand("measure", "Mass of a label into a class set");
  cmdMeasure->add_option("FILE", file)->required();
  cmdMeasure->add_option("--rates", ratesPath, "Rate config")->required();
  cmdMeasure->add_option("--set", setPath, "Class-set file, one term per line")
      ->required();
  cmdMeasure->add_option("--label", labelText, "Label to measure")->required();

  CLI::App* cmdBisim = app.add_subcommand("bisim", "Bisimulation check");
  cmdBisim->add_option("FILE1", file)->required();
  cmdBisim->add_option("FILE2", file2)->required();
  cmdBisim->add_option("--mode", mode, "strong or stochastic")
      ->check(CLI::IsMember({"strong", "stochastic"}))
      ->capture_default_str();
  cmdBisim->add_option("--rates", ratesPath, "Rate config (stochastic mode)");
  cmdBisim->add_option("--insts", famPath, "Instantiation family file");

  CLI::App* cmdExport = app.add_subcommand("export", "Write explicit CTMC");
  cmdExport->add_option("FILE", file)->required();
  cmdExport->add_option("--rates", ratesPath, "Rate config")->required();
  cmdExport->add_option("--out", outPrefix, "Output prefix")->required();

  CLI::App* cmdSim = app.add_subcommand("simulate", "Stochastic simulation");
  cmdSim->add_option("FILE", file)->required();
  cmdSim->add_option("--rates", ratesPath, "Rate config")->required();
  cmdSim->add_option("--seed", seed, "Base seed")->required();
  cmdSim->add_option("--tmax", tmax, "Time horizon")->required();
  cmdSim->add_option("--runs", runs, "Number of trajectories")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmdCheck) {
      std::string rendered;
      try {
        if (typeFlag == "sys") {
          Term t = parse_system(slurp(file), file);
          infer({}, t);
          rendered = "sys";
        } else if (typeFlag == "mem") {
          Term t = parse_membrane(slurp(file), file);
          infer({}, t);
          rendered = "mem";
        } else {
          Term t = parse_term(slurp(file), file);
          rendered = render(infer({}, t).type);
        }
      } catch (const TypeError& e) {
        if (opt.jsonl())
          std::cout << json{{"ok", false}, {"error", e.what()}} << '\n';
        else
          std::cout << "type error: " << e.what() << '\n';
        return 1;
      }
      if (opt.jsonl())
        std::cout << json{{"ok", true}, {"type", rendered}} << '\n';
      else
        std::cout << rendered << '\n';
      return 0;
    }

    if (*cmdNorm) {
      Term t = parse_term(slurp(file), file);
      infer({}, t);
      Canon c = normalize(t);
      if (opt.jsonl())
        std::cout << json{{"canonical", c.key()}} << '\n';
      else
        std::cout << c.key() << '\n';
      return 0;
    }

    if (*cmdEquiv) {
      Term a = parse_term(slurp(file), file);
      Term b = parse_term(slurp(file2), file2);
      bool eq = equiv(a, b);
      if (opt.jsonl())
        std::cout << json{{"equivalent", eq}} << '\n';
      else
        std::cout << (eq ? "equivalent" : "not equivalent") << '\n';
      return eq ? 0 : 1;
    }

    if (*cmdSteps) {
      Term t = parse_checked_system(file);
      for (const SysStep& s : sys_steps(normalize(t))) {
        std::string label = render(s.label);
        if (!labelText.empty() &&
            label.substr(0, label.find(' ')) != labelText)
          continue;
        if (opt.jsonl()) {
          json j{{"label", label}, {"target", s.target.key()}};
          if (trace) j["deriv"] = deriv_json(s.deriv);
          std::cout << j << '\n';
        } else {
          std::cout << label << ": " << s.target.key() << '\n';
          if (trace) print_deriv(std::cout, s.deriv, 1);
        }
      }
      return 0;
    }

    if (*cmdRates) {
      Term t = parse_checked_system(file);
      RateTable rates = RateTable::parse(slurp(ratesPath));
      if (!targetPath.empty()) {
        SysLabel l{SysLabelKind::Id, ""};
        if (!labelText.empty()) {
          AnyLabel al = parse_label(labelText);
          if (!std::holds_alternative<SysLabel>(al))
            throw std::runtime_error("--target needs a system label");
          l = std::get<SysLabel>(al);
        }
        Term target = parse_checked_system(targetPath);
        Rate r = theta_sys(l, t, {normalize(target)}, rates);
        if (opt.jsonl())
          std::cout << json{{"label", render(l)}, {"rate", render_rate(r)}}
                    << '\n';
        else
          std::cout << render_rate(r) << '\n';
        return 0;
      }
      std::optional<SysLabel> filter;
      if (!labelText.empty()) {
        AnyLabel al = parse_label(labelText);
        if (!std::holds_alternative<SysLabel>(al))
          throw std::runtime_error("rates filters on system labels");
        filter = std::get<SysLabel>(al);
      }
      for (const PointwiseEntry& e : pointwise(t, rates)) {
        if (filter && !(e.label == *filter)) continue;
        if (opt.jsonl()) {
          json j{{"label", render(e.label)},
                 {"rate", render_rate(e.rate)},
                 {"target", e.target.key()}};
          if (!e.shape.empty()) j["shape"] = e.shape;
          std::cout << j << '\n';
        } else {
          std::cout << render(e.label) << ": " << render_rate(e.rate) << "  "
                    << (e.shape.empty() ? e.target.key() : e.shape) << '\n';
        }
      }
      return 0;
    }

    if (*cmdMeasure) {
      Term t = parse_term(slurp(file), file);
      Type mainType = infer({}, t).type;
      RateTable rates = RateTable::parse(slurp(ratesPath));
      AnyLabel label = parse_label(labelText);
      ClassSet set;
      bool groundSet = true;
      {
        std::istringstream in(slurp(setPath));
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
          ++lineno;
          size_t hash = line.find('#');
          if (hash != std::string::npos) line = line.substr(0, hash);
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          Term member =
              parse_term(line, setPath + ":" + std::to_string(lineno));
          if (infer({}, member).type != Type::sys()) groundSet = false;
          set.insert(normalize(member));
        }
      }
      Rate value;
      if (groundSet && mainType == Type::sys() &&
          std::holds_alternative<SysLabel>(label))
        value = theta_sys(std::get<SysLabel>(label), t, set, rates);
      else
        value = meta_theta(label, t, set, rates);
      if (opt.jsonl())
        std::cout << json{{"label", render(label)},
                          {"value", render_rate(value)}}
                  << '\n';
      else
        std::cout << render_rate(value) << '\n';
      return 0;
    }

    if (*cmdBisim) {
      Term a = parse_checked_system(file);
      Term b = parse_checked_system(file2);
      InstFamily fam = load_family(famPath, a, b);
      size_t budget = state_budget();
      if (mode == "strong") {
        BisimResult r = strong_bisim(a, b, fam, budget);
        if (opt.jsonl())
          std::cout << json{{"mode", "strong"},
                            {"bisimilar", r.bisimilar},
                            {"witness", r.witness}}
                    << '\n';
        else if (r.bisimilar)
          std::cout << "bisimilar\n";
        else {
          std::cout << "distinguished";
          for (const std::string& w : r.witness) std::cout << " : " << w;
          std::cout << '\n';
        }
        return r.bisimilar ? 0 : 1;
      }
      if (ratesPath.empty())
        throw std::runtime_error("--mode stochastic requires --rates");
      RateTable rates = RateTable::parse(slurp(ratesPath));
      RateBisimResult r = rate_bisim(a, b, fam, rates, budget);
      if (opt.jsonl())
        std::cout << json{{"mode", "stochastic"},
                          {"bisimilar", r.bisimilar},
                          {"detail", r.detail}}
                  << '\n';
      else if (r.bisimilar)
        std::cout << "bisimilar\n";
      else
        std::cout << "distinguished : " << r.detail << '\n';
      return r.bisimilar ? 0 : 1;
    }

    if (*cmdExport) {
      Term t = parse_checked_system(file);
      RateTable rates = RateTable::parse(slurp(ratesPath));
      Ctmc c = explore(t, rates, state_budget());
      export_ctmc(c, outPrefix);
      if (opt.jsonl())
        std::cout << json{{"states", c.states.size()},
                          {"transitions", c.transitions.size()},
                          {"sta", outPrefix + ".sta"},
                          {"tra", outPrefix + ".tra"}}
                  << '\n';
      else
        std::cout << c.states.size() << " states, " << c.transitions.size()
                  << " transitions -> " << outPrefix << ".sta/.tra\n";
      return 0;
    }

    if (*cmdSim) {
      Term t = parse_checked_system(file);
      RateTable rates = RateTable::parse(slurp(ratesPath));
      Ctmc c = explore(t, rates, state_budget());
      std::vector<Trajectory> out;
      out.reserve(runs);
      for (unsigned i = 0; i < runs; ++i)
        out.push_back(ssa_run(c, seed + i, tmax));
      std::cout << trajectory_csv(out);
      return 0;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const TypeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const RateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
