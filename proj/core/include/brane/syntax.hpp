#pragma once
// Concrete syntax: lexer, parser and renderer.
//
// Grammar sketch (see README for the full table):
//   sys   := "void" | part ("o" part)*          part := mem "[" sys? "]" | "(" sys ")" | $x
//   mem   := "0" | seq ("|" seq)*               seq  := action ("." seq)? | "(" mem ")" | $x
//   action:= ("phago"|"exo"|"coexo") name | ("cophago"|"pino") name "{" mem "}"
// Meta syntax (parse_term only): "\" x ":" type "." term and term "(" term ")",
// types sys | mem | act | T -> T. Sugar: `a` for `a.0`, `m[]` for `m[void]`.
// `#` starts a line comment. Keywords (void, phago, cophago, exo, coexo,
// pino, o) are reserved and cannot be used as names.

#include <stdexcept>
#include <string>
#include <string_view>

#include "brane/term.hpp"

namespace brane {

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& what, int line, int col)
      : std::runtime_error(what), line(line), col(col) {}
  int line, col;  // 1-based
};

// Parse under the sorted system / membrane grammar. Lambdas and
// applications are rejected; membranes at system positions (and vice versa)
// are positioned errors. `file` only affects error messages.
Term parse_system(std::string_view text, std::string_view file = "<input>");
Term parse_membrane(std::string_view text, std::string_view file = "<input>");

// Parse the full meta syntax (lambda, application, free variables of either
// sort). Sort errors are left to the type checker.
Term parse_term(std::string_view text, std::string_view file = "<input>");

Type parse_type(std::string_view text, std::string_view file = "<input>");

// Deterministic rendering with minimal parentheses; parse_term(render(t))
// reproduces t up to binder-name freshening (exactly, for terms without
// variable capture hazards). Canonical terms render with binder names
// v0, v1, ... assigned by binding depth, so renders of canonical forms are
// usable as stable class keys.
std::string render(const Term& t);
std::string render(const Type& t);

}  // namespace brane
