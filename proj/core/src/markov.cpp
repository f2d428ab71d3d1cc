#include "brane/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

namespace brane {

namespace {

size_t intern(std::vector<Canon>& states, std::map<ClassKey, size_t>& index,
              const Canon& c, std::deque<size_t>& work) {
  auto it = index.find(c.key());
  if (it != index.end()) return it->second;
  size_t id = states.size();
  index.emplace(c.key(), id);
  states.push_back(c);
  work.push_back(id);
  return id;
}

}  // namespace

Ctmc explore(const Term& p, const RateTable& rates, size_t budget) {
  Ctmc c;
  std::deque<size_t> work;
  intern(c.states, c.index, normalize(p), work);
  while (!work.empty()) {
    size_t id = work.front();
    work.pop_front();
    Canon state = c.states[id];
    SysBehaviour mu = sos_sys(state.term(), rates);
    auto it = mu.find({SysLabelKind::Id, ""});
    if (it == mu.end()) continue;
    for (const auto& [target, rate] : it->second)
      c.transitions.push_back(
          {id, intern(c.states, c.index, target, work), rate});
    if (c.states.size() > budget) throw BudgetError(budget);
  }
  std::sort(c.transitions.begin(), c.transitions.end(),
            [](const Ctmc::Transition& a, const Ctmc::Transition& b) {
              return a.from != b.from ? a.from < b.from : a.to < b.to;
            });
  return c;
}

std::string sta_text(const Ctmc& c) {
  std::string out;
  for (size_t i = 0; i < c.states.size(); ++i) {
    out += std::to_string(i);
    out += ' ';
    out += c.states[i].key();
    out += '\n';
  }
  return out;
}

std::string tra_text(const Ctmc& c) {
  std::string out = std::to_string(c.states.size()) + " " +
                    std::to_string(c.transitions.size()) + "\n";
  for (const auto& t : c.transitions) {
    out += std::to_string(t.from);
    out += ' ';
    out += std::to_string(t.to);
    out += ' ';
    out += render_rate(t.rate);
    out += '\n';
  }
  return out;
}

void export_ctmc(const Ctmc& c, const std::string& prefix) {
  {
    std::ofstream sta(prefix + ".sta", std::ios::binary);
    if (!sta) throw std::runtime_error("cannot write " + prefix + ".sta");
    sta << sta_text(c);
  }
  {
    std::ofstream tra(prefix + ".tra", std::ios::binary);
    if (!tra) throw std::runtime_error("cannot write " + prefix + ".tra");
    tra << tra_text(c);
  }
}

// ------------------------------------------------- simulation

namespace {

struct SplitMix64 {
  uint64_t s;
  uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // strictly inside (0,1): 53-bit mantissa offset by half an ulp
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
};

double rate_to_double(const Rate& r) { return r.convert_to<double>(); }

}  // namespace

Trajectory ssa_run(const Ctmc& c, uint64_t seed, double tmax) {
  std::vector<std::vector<std::pair<size_t, double>>> rows(c.states.size());
  std::vector<double> totals(c.states.size(), 0.0);
  for (const auto& t : c.transitions) {
    double r = rate_to_double(t.rate);
    rows[t.from].push_back({t.to, r});
    totals[t.from] += r;
  }
  Trajectory out{seed, {{0.0, 0}}};
  SplitMix64 rng{seed};
  size_t cur = 0;
  double t = 0.0;
  for (;;) {
    double R = totals[cur];
    if (R <= 0.0) break;  // absorbing
    double dt = -std::log(rng.uniform01()) / R;
    if (t + dt > tmax) break;
    t += dt;
    double v = rng.uniform01() * R;
    double acc = 0.0;
    size_t next = rows[cur].back().first;
    for (const auto& [to, r] : rows[cur]) {
      acc += r;
      if (v <= acc) {
        next = to;
        break;
      }
    }
    cur = next;
    out.points.push_back({t, cur});
  }
  return out;
}

std::string trajectory_csv(const std::vector<Trajectory>& runs) {
  std::string out = "# rng: splitmix64\nrun,seed,time,state\n";
  char buf[64];
  for (size_t i = 0; i < runs.size(); ++i) {
    for (const auto& pt : runs[i].points) {
      std::snprintf(buf, sizeof buf, "%zu,%llu,%.17g,%zu", i,
                    static_cast<unsigned long long>(runs[i].seed), pt.time,
                    pt.state);
      out += buf;
      out += '\n';
    }
  }
  return out;
}

// ------------------------------------------------- rate bisimulation

namespace {

struct RateNode {
  std::map<size_t, Rate> idMass;  // successor state -> mass
  // per label: residue -> (mass, successor state per instantiation context)
  std::map<SysLabel, std::vector<std::pair<Rate, std::vector<size_t>>>> res;
};

std::map<SysLabel, Rate> label_totals(const Term& t, const RateTable& rates) {
  std::map<SysLabel, Rate> out;
  for (const auto& [label, meas] : sos_sys(t, rates)) out[label] = total(meas);
  return out;
}

}  // namespace

RateBisimResult rate_bisim(const Term& p, const Term& q, const InstFamily& fam,
                           const RateTable& rates, size_t budget) {
  Canon P = normalize(p), Q = normalize(q);
  if (P == Q) return {true, {}};
  {
    std::map<SysLabel, Rate> tp = label_totals(P.term(), rates);
    std::map<SysLabel, Rate> tq = label_totals(Q.term(), rates);
    auto get = [](const std::map<SysLabel, Rate>& m, const SysLabel& l) {
      auto it = m.find(l);
      return it == m.end() ? Rate(0) : it->second;
    };
    for (const auto& [l, r] : tp)
      if (get(tq, l) != r)
        return {false, render(l) + ": total rate " + render_rate(r) + " vs " +
                           render_rate(get(tq, l))};
    for (const auto& [l, r] : tq)
      if (get(tp, l) != r)
        return {false, render(l) + ": total rate " + render_rate(get(tp, l)) +
                           " vs " + render_rate(r)};
  }

  std::vector<Canon> phagoCtx = phago_contexts(fam);
  std::vector<std::pair<Canon, Canon>> exoPairs;
  for (const Canon& s : fam.syss)
    for (const Canon& m : fam.mems) exoPairs.push_back({s, m});

  std::vector<Canon> states;
  std::map<ClassKey, size_t> index;
  std::vector<RateNode> nodes;
  std::deque<size_t> work;
  auto reg = [&](const Canon& c) {
    size_t id = intern(states, index, c, work);
    if (nodes.size() < states.size()) nodes.resize(states.size());
    return id;
  };
  size_t p0 = reg(P), q0 = reg(Q);
  while (!work.empty()) {
    size_t id = work.front();
    work.pop_front();
    Canon state = states[id];
    SysBehaviour mu = sos_sys(state.term(), rates);
    for (const auto& [label, meas] : mu) {
      for (const auto& [target, rate] : meas) {
        if (label.kind == SysLabelKind::Id) {
          size_t to = reg(target);
          auto [it, fresh] = nodes[id].idMass.emplace(to, rate);
          if (!fresh) it->second += rate;
          continue;
        }
        std::vector<size_t> row;
        switch (label.kind) {
          case SysLabelKind::Phago:
            for (const Canon& ctx : phagoCtx)
              row.push_back(
                  reg(normalize(Term::app(target.term(), ctx.term()))));
            break;
          case SysLabelKind::CoPhago:
            for (const Canon& arg : fam.syss)
              row.push_back(
                  reg(normalize(Term::app(target.term(), arg.term()))));
            break;
          case SysLabelKind::Exo:
            for (const auto& [s, m] : exoPairs)
              row.push_back(reg(normalize(Term::app(
                  Term::app(target.term(), s.term()), m.term()))));
            break;
          case SysLabelKind::Id:
            break;
        }
        nodes[id].res[label].push_back({rate, std::move(row)});
      }
    }
    if (states.size() > budget) throw BudgetError(budget);
  }

  size_t n = states.size();
  std::vector<size_t> block(n, 0);
  size_t nblocks = 1;
  for (;;) {
    std::map<std::string, size_t> sigIds;
    std::vector<size_t> next(n);
    for (size_t i = 0; i < n; ++i) {
      std::ostringstream sig;
      sig << block[i] << ';';
      std::map<size_t, Rate> idAgg;
      for (const auto& [to, r] : nodes[i].idMass) idAgg[block[to]] += r;
      for (const auto& [b, r] : idAgg) sig << b << '=' << render_rate(r) << ',';
      sig << ';';
      for (const auto& [label, entries] : nodes[i].res) {
        sig << render(label) << ':';
        std::map<std::vector<size_t>, Rate> rowAgg;
        for (const auto& [mass, row] : entries) {
          std::vector<size_t> br;
          br.reserve(row.size());
          for (size_t t : row) br.push_back(block[t]);
          rowAgg[std::move(br)] += mass;
        }
        for (const auto& [br, mass] : rowAgg) {
          for (size_t b : br) sig << b << '.';
          sig << '=' << render_rate(mass) << '|';
        }
        sig << ';';
      }
      auto [it, fresh] = sigIds.emplace(sig.str(), sigIds.size());
      (void)fresh;
      next[i] = it->second;
    }
    bool stable = sigIds.size() == nblocks;
    nblocks = sigIds.size();
    block = next;
    if (stable) break;
  }

  if (block[p0] == block[q0]) return {true, {}};

  // explain: find a label whose per-class mass differs at the roots
  auto idAggOf = [&](size_t i) {
    std::map<size_t, Rate> agg;
    for (const auto& [to, r] : nodes[i].idMass) agg[block[to]] += r;
    return agg;
  };
  std::map<size_t, Rate> ia = idAggOf(p0), ib = idAggOf(q0);
  if (ia != ib) {
    for (const auto& [b, r] : ia) {
      auto it = ib.find(b);
      Rate rb = it == ib.end() ? Rate(0) : it->second;
      if (rb != r)
        return {false, "id: mass " + render_rate(r) + " vs " +
                           render_rate(rb) + " into class of " +
                           [&] {
                             for (size_t s = 0; s < n; ++s)
                               if (block[s] == b) return states[s].key();
                             return std::string("?");
                           }()};
    }
    for (const auto& [b, r] : ib)
      if (!ia.count(b))
        return {false, "id: mass 0 vs " + render_rate(r) + " into class of " +
                           [&] {
                             for (size_t s = 0; s < n; ++s)
                               if (block[s] == b) return states[s].key();
                             return std::string("?");
                           }()};
  }
  auto rowAggOf = [&](size_t i, const SysLabel& l) {
    std::map<std::vector<size_t>, Rate> agg;
    auto it = nodes[i].res.find(l);
    if (it != nodes[i].res.end())
      for (const auto& [mass, row] : it->second) {
        std::vector<size_t> br;
        br.reserve(row.size());
        for (size_t t : row) br.push_back(block[t]);
        agg[std::move(br)] += mass;
      }
    return agg;
  };
  std::set<SysLabel> labels;
  for (const auto& [l, e] : nodes[p0].res) labels.insert(l);
  for (const auto& [l, e] : nodes[q0].res) labels.insert(l);
  for (const SysLabel& l : labels) {
    auto ra = rowAggOf(p0, l), rb = rowAggOf(q0, l);
    if (ra != rb)
      return {false,
              render(l) + ": residue masses differ up to instantiation"};
  }
  return {false, "distinguished by a deeper state"};
}

}  // namespace brane
