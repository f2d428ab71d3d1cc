#include <cctype>
#include <sstream>

#include "brane/stochastic.hpp"

namespace brane {

std::string render_rate(const Rate& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1)
    out << '/' << boost::multiprecision::denominator(r);
  return out.str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rate parse_rate(const std::string& text) {
  std::string t = trim(text);
  std::string num = t, den = "1";
  size_t slash = t.find('/');
  if (slash != std::string::npos) {
    num = trim(t.substr(0, slash));
    den = trim(t.substr(slash + 1));
  }
  if (!all_digits(num) || !all_digits(den))
    throw RateError(RateErrorKind::Malformed, "malformed rate '" + t + "'");
  boost::multiprecision::cpp_int n(num), d(den);
  if (d == 0)
    throw RateError(RateErrorKind::Malformed,
                    "zero denominator in rate '" + t + "'");
  Rate r(n, d);
  if (r <= 0)
    throw RateError(RateErrorKind::NonPositive,
                    "rate must be positive: '" + t + "'");
  return r;
}

namespace {

int base_of(ActionKind k) {
  switch (k) {
    case ActionKind::Phago:
    case ActionKind::CoPhago: return 0;
    case ActionKind::Exo:
    case ActionKind::CoExo: return 1;
    case ActionKind::Pino: return 2;
  }
  return -1;
}

const char* base_word(int base) {
  return base == 0 ? "phago" : base == 1 ? "exo" : "pino";
}

}  // namespace

void RateTable::set(ActionKind base, const std::string& name, Rate r) {
  if (r <= 0)
    throw RateError(RateErrorKind::NonPositive,
                    "rate must be positive for " + name);
  auto key = std::make_pair(base_of(base), name);
  if (!rates_.emplace(key, std::move(r)).second)
    throw RateError(RateErrorKind::Duplicate,
                    std::string("duplicate rate for ") + base_word(key.first) +
                        " " + name);
}

void RateTable::set_default(Rate r) {
  if (r <= 0)
    throw RateError(RateErrorKind::NonPositive,
                    "default rate must be positive");
  if (default_)
    throw RateError(RateErrorKind::Duplicate, "duplicate default rate");
  default_ = std::move(r);
}

Rate RateTable::action_rate(ActionKind kind, const std::string& name) const {
  auto it = rates_.find(std::make_pair(base_of(kind), name));
  if (it != rates_.end()) return it->second;
  if (default_) return *default_;
  throw RateError(RateErrorKind::Missing,
                  std::string("no rate for ") + base_word(base_of(kind)) +
                      " " + name + " and no default");
}

Rate RateTable::label_rate(const MemLabel& l) const {
  return action_rate(l.kind, l.name);
}

Rate RateTable::pair_rate(ActionKind base, const std::string& name) const {
  return action_rate(base, name);
}

RateTable RateTable::parse(const std::string& text) {
  RateTable table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw RateError(RateErrorKind::Malformed,
                      "line " + std::to_string(lineno) +
                          ": expected 'key = rate', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    Rate r;
    try {
      r = parse_rate(line.substr(eq + 1));
    } catch (const RateError& e) {
      throw RateError(e.kind, "line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
    try {
      if (key == "default") {
        table.set_default(std::move(r));
        continue;
      }
      std::istringstream ks(key);
      std::string word, name, extra;
      ks >> word >> name;
      if (name.empty() || (ks >> extra))
        throw RateError(RateErrorKind::Malformed,
                        "expected '<reaction> <name>', got '" + key + "'");
      if (word == "phago")
        table.set(ActionKind::Phago, name, std::move(r));
      else if (word == "exo")
        table.set(ActionKind::Exo, name, std::move(r));
      else if (word == "pino")
        table.set(ActionKind::Pino, name, std::move(r));
      else
        throw RateError(RateErrorKind::Malformed,
                        "unknown reaction '" + word +
                            "' (expected phago, exo or pino)");
    } catch (const RateError& e) {
      throw RateError(e.kind,
                      "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return table;
}

RateTable RateTable::uniform(Rate r) {
  RateTable table;
  table.set_default(std::move(r));
  return table;
}

}  // namespace brane
