#pragma once
// Finite CTMC extraction (id-closure of a ground system), explicit-state
// export, reproducible stochastic simulation, and rate-aware bisimulation.

#include <cstdint>

#include "brane/stochastic.hpp"

namespace brane {

struct Ctmc {
  struct Transition {
    size_t from, to;
    Rate rate;
  };
  std::vector<Canon> states;  // index = state id, [0] = initial
  std::map<ClassKey, size_t> index;
  std::vector<Transition> transitions;  // sorted by (from, to), summed
};

// Breadth-first closure under id transitions. Terminates on every ground
// system (each reaction consumes prefixes); throws BudgetError if more
// than `budget` states appear.
Ctmc explore(const Term& p, const RateTable& rates, size_t budget = 100000);

// Explicit-state text formats: ".sta" maps indices to canonical renderings
// ("<index> <rendering>" per line), ".tra" opens with "<states>
// <transitions>" and lists "<from> <to> <rate>" with exact rationals.
std::string sta_text(const Ctmc&);
std::string tra_text(const Ctmc&);
void export_ctmc(const Ctmc&, const std::string& prefix);  // writes .sta/.tra

struct TrajectoryPoint {
  double time;
  size_t state;
};
struct Trajectory {
  uint64_t seed;
  std::vector<TrajectoryPoint> points;  // starts with {0, 0}
};

// One simulation run from state 0 until tmax or absorption, deterministic
// in `seed` (splitmix64 stream; one draw for the sojourn, one for the jump).
Trajectory ssa_run(const Ctmc& c, uint64_t seed, double tmax);

// CSV with a "# rng: splitmix64" preamble and run,seed,time,state rows.
std::string trajectory_csv(const std::vector<Trajectory>& runs);

struct RateBisimResult {
  bool bisimilar;
  std::string detail;  // refutation evidence: label and differing masses
};

// Rate-aware bisimulation relative to the instantiation family: partition
// refinement where states must agree, per label, on the outgoing mass into
// each successor class (id) or residue class up to instantiation (others).
// Throws BudgetError when the closure of {p, q} exceeds `budget` states and
// the root total-mass check cannot already refute.
RateBisimResult rate_bisim(const Term& p, const Term& q, const InstFamily& fam,
                           const RateTable& rates, size_t budget = 100000);

}  // namespace brane
