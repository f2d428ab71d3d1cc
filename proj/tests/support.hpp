#pragma once

#include <random>
#include <string>
#include <vector>

#include <brane/congruence.hpp>
#include <brane/term.hpp>

// Shared helpers for the unit and acceptance suites: seeded random term
// generators, a congruence-preserving scrambler, an exhaustive small-term
// corpus, and a driver for the installed CLI binary.
namespace testsup {

using Rng = std::mt19937_64;

// Random ground terms. `fuel` bounds the number of AST nodes.
brane::Term rand_mem(Rng& g, int fuel, const std::vector<std::string>& names);
brane::Term rand_sys(Rng& g, int fuel, const std::vector<std::string>& names);

// Rewrites a term into a syntactically different but congruent one:
// shuffles and reassociates parallel/composition children, inserts units,
// collapses nothing, renames binder hints, and wraps system subterms in
// identity beta-redexes.
brane::Term scramble(const brane::Term& t, Rng& g);

size_t node_count(const brane::Term& t);

// All well-typed ground membranes / systems whose binary AST has at most
// `maxNodes` nodes over the given action names, one canonical
// representative per congruence class.
struct Corpus {
  std::vector<brane::Canon> mems, syss;
};
Corpus enum_corpus(int maxNodes, const std::vector<std::string>& names);

// CLI driver. The binary path comes from $BRANE_BIN, falling back to the
// build-time location.
struct CliResult {
  int status = -1;
  std::string out, err;
};
CliResult run_cli(const std::vector<std::string>& args);

// Writes text to a fresh file under a per-process temp directory.
std::string write_temp(const std::string& text);

// Reads a whole file; fails the surrounding assertion context if missing.
std::string slurp(const std::string& path);

std::string brane_bin();

}  // namespace testsup
