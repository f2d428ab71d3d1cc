#pragma once
// Stochastic semantics: exact-rational rate assignments, finite-support
// measures over canonical classes, behaviour maps (label -> measure), the
// compositional combinators that build them, and class-set queries.
//
// Rates come in reaction pairs: phago/cophago share one base rate per name,
// exo/coexo share another, pino has its own. Synchronisation terms divide
// by the shared pair rate, so a matched pair contributes rate(pair) overall.

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <variant>

#include "brane/lts.hpp"

namespace brane {

using Rate = boost::multiprecision::cpp_rational;

std::string render_rate(const Rate& r);  // "3" or "3/2"

enum class RateErrorKind { Malformed, NonPositive, Duplicate, Missing };
struct RateError : std::runtime_error {
  RateError(RateErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  RateErrorKind kind;
};

// Positive rational, "p" or "p/q". Throws RateError{Malformed|NonPositive}.
Rate parse_rate(const std::string& text);

class RateTable {
public:
  // base = Phago covers cophago, base = Exo covers coexo
  void set(ActionKind base, const std::string& name, Rate r);
  void set_default(Rate r);

  // rate of a single action occurrence; cophago maps to the phago entry,
  // coexo to the exo entry. Throws RateError{Missing} without a default.
  Rate action_rate(ActionKind kind, const std::string& name) const;
  Rate label_rate(const MemLabel& l) const;
  // divisor of a synchronisation on this reaction: the shared pair rate
  Rate pair_rate(ActionKind base, const std::string& name) const;

  // Config format, one entry per line: "phago n = 3/2", "exo m = 1",
  // "pino n = 2", "default = 1". '#' starts a comment. Duplicate keys and
  // non-positive rates are errors.
  static RateTable parse(const std::string& text);
  static RateTable uniform(Rate r);  // default-only table

private:
  std::map<std::pair<int, std::string>, Rate> rates_;
  std::optional<Rate> default_;
};

// ------------------------------------------------- measures & behaviours

using Measure = std::map<Canon, Rate>;           // finite support, positive
using MemBehaviour = std::map<MemLabel, Measure>;
using SysBehaviour = std::map<SysLabel, Measure>;

Rate total(const Measure& m);
void add_mass(Measure& m, const Canon& c, const Rate& r);  // drops zero sums

// Behaviour combinators mirroring the transition rules; `sigma`/`tau` etc.
// are the syntactic operands whose behaviours are being combined.

// behaviour of sigma | tau from the operands' behaviours
MemBehaviour mem_par(const MemBehaviour& mu, const Term& sigma,
                     const Term& tau, const MemBehaviour& nu);

// behaviour of P o Q; phago/cophago pairs across the two sides synchronise
// into id mass divided by the shared pair rate
SysBehaviour sys_comp(const SysBehaviour& mu, const Term& p, const Term& q,
                      const SysBehaviour& nu, const RateTable& rates);

// behaviour of sigma[ P ] from the membrane's and the body's behaviours;
// pino fires directly, coexo on the membrane synchronises with exo residues
// of the body, id propagates under the cell
SysBehaviour sys_loc(const SysBehaviour& mu, const Term& sigma, const Term& p,
                     const MemBehaviour& nu, const RateTable& rates);

// Fold the combinators over the term structure. Total on all well-typed
// terms; non-ground and stuck subterms contribute empty behaviour.
MemBehaviour sos_mem(const Term& m, const RateTable& rates);
SysBehaviour sos_sys(const Term& p, const RateTable& rates);

// ------------------------------------------------- class-set queries

using AnyLabel = std::variant<SysLabel, MemLabel>;
std::string render(const AnyLabel& l);

// Mass of label `a` from ground system P into the class set T, computed by
// structural recursion with residual sets and shape matching on T.
Rate theta_sys(const SysLabel& a, const Term& p, const ClassSet& T,
               const RateTable& rates);

// Same quantity on arbitrary well-typed terms (membranes, open terms,
// residues); class sets may contain lambda classes. Recurses through
// binders by decomposing the members of T.
Rate meta_theta(const AnyLabel& a, const Term& t, const ClassSet& T,
                const RateTable& rates);

// Evaluate a behaviour map against a ground class set: id mass by key
// membership, residue mass by matching the residue's instantiation shape
// against the members of T. Independent of theta_sys' recursion.
Rate behaviour_query(const SysBehaviour& mu, const SysLabel& a,
                     const ClassSet& T);

// Pointwise view of a behaviour for reporting: one entry per (label,
// target). Residue targets also carry a ground shape template with the
// instantiation holes shown as free variables.
struct PointwiseEntry {
  SysLabel label;
  Canon target;
  std::string shape;  // empty for id entries
  Rate rate;
};
std::vector<PointwiseEntry> pointwise(const Term& p, const RateTable& rates);

}  // namespace brane
