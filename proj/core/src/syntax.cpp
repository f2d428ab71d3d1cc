#include "brane/syntax.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace brane {

namespace {

enum class Tok {
  End, Zero, Void, Phago, CoPhago, Exo, CoExo, Pino, O,
  Ident, Dollar, Backslash, Colon, Dot, Bar, Arrow,
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
};

struct Token {
  Tok k;
  std::string text;
  int line, col;
};

[[noreturn]] void fail(std::string_view file, int line, int col, const std::string& msg) {
  std::ostringstream os;
  os << file << ":" << line << ":" << col << ": " << msg;
  throw SyntaxError(os.str(), line, col);
}

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"void", Tok::Void},   {"phago", Tok::Phago}, {"cophago", Tok::CoPhago},
    {"exo", Tok::Exo},     {"coexo", Tok::CoExo}, {"pino", Tok::Pino},
    {"o", Tok::O},
};

std::vector<Token> lex(std::string_view text, std::string_view file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t, int l, int c) {
    out.push_back(Token{k, std::move(t), l, c});
  };
  while (i < text.size()) {
    char ch = text[i];
    int l = line, c = col;
    auto step = [&](size_t n = 1) {
      for (size_t j = 0; j < n; ++j) {
        if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
        ++i;
      }
    };
    if (ch == '\n' || ch == '\r' || ch == '\t' || ch == ' ') { step(); continue; }
    if (ch == '#') {  // line comment
      while (i < text.size() && text[i] != '\n') step();
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string num;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        num += text[i];
        step();
      }
      if (num != "0") fail(file, l, c, "unexpected number '" + num + "'");
      push(Tok::Zero, "0", l, c);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string id;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        id += text[i];
        step();
      }
      auto kw = kKeywords.find(id);
      push(kw == kKeywords.end() ? Tok::Ident : kw->second, std::move(id), l, c);
      continue;
    }
    switch (ch) {
      case '$': push(Tok::Dollar, "$", l, c); step(); continue;
      case '\\': push(Tok::Backslash, "\\", l, c); step(); continue;
      case ':': push(Tok::Colon, ":", l, c); step(); continue;
      case '.': push(Tok::Dot, ".", l, c); step(); continue;
      case '|': push(Tok::Bar, "|", l, c); step(); continue;
      case '(': push(Tok::LParen, "(", l, c); step(); continue;
      case ')': push(Tok::RParen, ")", l, c); step(); continue;
      case '[': push(Tok::LBrack, "[", l, c); step(); continue;
      case ']': push(Tok::RBrack, "]", l, c); step(); continue;
      case '{': push(Tok::LBrace, "{", l, c); step(); continue;
      case '}': push(Tok::RBrace, "}", l, c); step(); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, "->", l, c);
          step(2);
          continue;
        }
        fail(file, l, c, "unexpected character '-'");
      default: {
        std::string shown(1, ch);
        fail(file, l, c, "unexpected character '" + shown + "'");
      }
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::End: return "end of input";
    case Tok::Zero: return "'0'";
    case Tok::Void: return "'void'";
    case Tok::Phago: return "'phago'";
    case Tok::CoPhago: return "'cophago'";
    case Tok::Exo: return "'exo'";
    case Tok::CoExo: return "'coexo'";
    case Tok::Pino: return "'pino'";
    case Tok::O: return "'o'";
    case Tok::Ident: return "identifier";
    case Tok::Dollar: return "'$'";
    case Tok::Backslash: return "'\\'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
  }
  return "?";
}

// Parsing sort: Sys/Mem enforce the sorted grammar (no lambdas, membranes
// and systems only where they belong); Any is the meta-term grammar.
enum class Sort { Sys, Mem, Any };

struct Parser {
  std::string_view file;
  std::vector<Token> toks;
  size_t pos = 0;
  std::vector<std::string> binders;

  const Token& cur() const { return toks[pos]; }
  Token advance() { return toks[pos++]; }
  bool at(Tok k) const { return cur().k == k; }

  [[noreturn]] void err(const Token& t, const std::string& msg) {
    fail(file, t.line, t.col, msg);
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) err(cur(), std::string("expected ") + what + ", found " + tok_name(cur().k));
    return advance();
  }

  bool at_action() const {
    Tok k = cur().k;
    return k == Tok::Phago || k == Tok::CoPhago || k == Tok::Exo ||
           k == Tok::CoExo || k == Tok::Pino;
  }

  // memish: the parsed node can only be a membrane (prefixes, bars, 0), so
  // at a system position it must be followed by a cell bracket.
  struct Part {
    Term t;
    bool memish;
  };

  Term expr(Sort s) {
    if (at(Tok::Backslash)) {
      if (s != Sort::Any)
        err(cur(), "lambda abstraction is not allowed here");
      advance();
      Token name = expect(Tok::Ident, "a variable name");
      expect(Tok::Colon, "':'");
      Type ann = type();
      expect(Tok::Dot, "'.'");
      binders.push_back(name.text);
      Term body = expr(Sort::Any);
      binders.pop_back();
      return Term::lambda(name.text, ann, body);
    }
    return chain(s);
  }

  Term chain(Sort s) {
    Term first = comp_part(s);
    if (!at(Tok::O)) return first;
    if (s == Sort::Mem)
      err(cur(), "'o' composition is not allowed inside a membrane");
    std::vector<Term> parts{first};
    while (at(Tok::O)) {
      advance();
      parts.push_back(comp_part(s));
    }
    return Term::sys_comp(std::move(parts));
  }

  Term comp_part(Sort s) {
    Token start = cur();
    Part p = par_chain(s);
    if (at(Tok::LBrack)) {
      if (s == Sort::Mem)
        err(cur(), "a cell is not allowed inside a membrane");
      advance();
      Term inner = at(Tok::RBrack) ? Term::sys_void()
                                   : expr(s == Sort::Any ? Sort::Any : Sort::Sys);
      expect(Tok::RBrack, "']'");
      return Term::cell(p.t, inner);
    }
    if (s == Sort::Sys && p.memish)
      err(start, "membrane term at system position (expected '[' body ']')");
    return p.t;
  }

  Part par_chain(Sort s) {
    Part first = item(s);
    if (!at(Tok::Bar)) return first;
    std::vector<Term> parts{first.t};
    while (at(Tok::Bar)) {
      advance();
      parts.push_back(item(s).t);
    }
    return Part{Term::mem_par(std::move(parts)), true};
  }

  Part item(Sort s) {
    if (at_action()) {
      Action a = action_head(s);
      Term cont = Term::mem_zero();
      if (at(Tok::Dot)) {
        advance();
        cont = item(s).t;
      }
      return Part{Term::prefix(std::move(a), std::move(cont)), true};
    }
    return postfix(s);
  }

  Action action_head(Sort s) {
    Token kw = advance();
    ActionKind kind;
    switch (kw.k) {
      case Tok::Phago: kind = ActionKind::Phago; break;
      case Tok::CoPhago: kind = ActionKind::CoPhago; break;
      case Tok::Exo: kind = ActionKind::Exo; break;
      case Tok::CoExo: kind = ActionKind::CoExo; break;
      default: kind = ActionKind::Pino; break;
    }
    Token name = expect(Tok::Ident, "an action name");
    Action a{kind, name.text, {}};
    if (action_has_arg(kind)) {
      expect(Tok::LBrace, "'{'");
      a.arg = expr(s == Sort::Any ? Sort::Any : Sort::Mem);
      expect(Tok::RBrace, "'}'");
    }
    return a;
  }

  Part postfix(Sort s) {
    Part b = atom(s);
    while (at(Tok::LParen)) {
      if (s != Sort::Any)
        err(cur(), "application is not allowed here");
      advance();
      Term arg = expr(Sort::Any);
      expect(Tok::RParen, "')'");
      b = Part{Term::app(b.t, arg), false};
    }
    return b;
  }

  Part atom(Sort s) {
    switch (cur().k) {
      case Tok::Zero:
        advance();
        return Part{Term::mem_zero(), true};
      case Tok::Void:
        if (s == Sort::Mem) err(cur(), "'void' is not a membrane");
        advance();
        return Part{Term::sys_void(), false};
      case Tok::Dollar: {
        advance();
        Token name = expect(Tok::Ident, "a variable name");
        for (size_t i = binders.size(); i-- > 0;) {
          if (binders[i] == name.text)
            return Part{Term::bound_var(static_cast<int>(binders.size() - 1 - i),
                                        name.text),
                        false};
        }
        return Part{Term::free_var(name.text), false};
      }
      case Tok::LParen: {
        advance();
        Term t = expr(Sort::Any);
        expect(Tok::RParen, "')'");
        return Part{t, false};
      }
      default:
        err(cur(), std::string("expected a term, found ") + tok_name(cur().k));
    }
  }

  Type type() {
    Type t = type_primary();
    if (at(Tok::Arrow)) {
      advance();
      return Type::arrow(t, type());  // right associative
    }
    return t;
  }

  Type type_primary() {
    if (at(Tok::LParen)) {
      advance();
      Type t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Ident)) {
      Token id = advance();
      if (id.text == "sys") return Type::sys();
      if (id.text == "mem") return Type::mem();
      if (id.text == "act") return Type::act();
      err(id, "expected a type (sys, mem, act), found '" + id.text + "'");
    }
    err(cur(), std::string("expected a type, found ") + tok_name(cur().k));
  }

  void done() {
    if (!at(Tok::End))
      err(cur(), std::string("unexpected ") + tok_name(cur().k) + " after the term");
  }
};

Term parse_with(std::string_view text, std::string_view file, Sort s) {
  Parser p{file, lex(text, file), 0, {}};
  Term t = p.expr(s);
  p.done();
  return t;
}

}  // namespace

Term parse_system(std::string_view text, std::string_view file) {
  return parse_with(text, file, Sort::Sys);
}
Term parse_membrane(std::string_view text, std::string_view file) {
  return parse_with(text, file, Sort::Mem);
}
Term parse_term(std::string_view text, std::string_view file) {
  return parse_with(text, file, Sort::Any);
}
Type parse_type(std::string_view text, std::string_view file) {
  Parser p{file, lex(text, file), 0, {}};
  Type t = p.type();
  p.done();
  return t;
}

// ---------------------------------------------------------------- render

namespace {

// Minimum context levels a node may appear in without parentheses:
//   0 top / group / cell body / app argument / lambda body
//   1 comp operand        2 par operand       3 prefix continuation
//   4 application function
int level(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lambda:
    case TermKind::SysComp:
      return 0;
    case TermKind::MemPar:
    case TermKind::Cell:
      return 1;
    case TermKind::Prefix:
      return 3;
    default:
      return 4;  // atoms and applications
  }
}

void collect_free_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::FreeVar:
      out.insert(t.name());
      return;
    case TermKind::Prefix: {
      Action a = t.action();
      if (a.arg) collect_free_names(*a.arg, out);
      collect_free_names(t.cont(), out);
      return;
    }
    case TermKind::MemPar:
    case TermKind::SysComp:
      for (const auto& k : t.parts()) collect_free_names(k, out);
      return;
    case TermKind::Cell:
      collect_free_names(t.membrane(), out);
      collect_free_names(t.body(), out);
      return;
    case TermKind::Lambda:
      collect_free_names(t.body(), out);
      return;
    case TermKind::App:
      collect_free_names(t.fn(), out);
      collect_free_names(t.arg(), out);
      return;
    default:
      return;
  }
}

// Indices of enclosing binders (0 = the lambda whose body `t` is) that are
// referenced from within t.
void collect_outer_refs(const Term& t, int depth, std::set<int>& out) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      if (t.index() >= depth) out.insert(t.index() - depth);
      return;
    case TermKind::Prefix: {
      Action a = t.action();
      if (a.arg) collect_outer_refs(*a.arg, depth, out);
      collect_outer_refs(t.cont(), depth, out);
      return;
    }
    case TermKind::MemPar:
    case TermKind::SysComp:
      for (const auto& k : t.parts()) collect_outer_refs(k, depth, out);
      return;
    case TermKind::Cell:
      collect_outer_refs(t.membrane(), depth, out);
      collect_outer_refs(t.body(), depth, out);
      return;
    case TermKind::Lambda:
      collect_outer_refs(t.body(), depth + 1, out);
      return;
    case TermKind::App:
      collect_outer_refs(t.fn(), depth, out);
      collect_outer_refs(t.arg(), depth, out);
      return;
    default:
      return;
  }
}

struct Renderer {
  std::string out;
  std::vector<std::string> binders;  // printed names, innermost last

  void put(const Term& t, int prec) {
    if (level(t) < prec) {
      out += '(';
      put(t, 0);
      out += ')';
      return;
    }
    switch (t.kind()) {
      case TermKind::MemZero:
        out += '0';
        return;
      case TermKind::SysVoid:
        out += "void";
        return;
      case TermKind::FreeVar:
        out += '$';
        out += t.name();
        return;
      case TermKind::BoundVar: {
        out += '$';
        size_t i = static_cast<size_t>(t.index());
        if (i < binders.size())
          out += binders[binders.size() - 1 - i];
        else  // malformed (unbound index); keep it visible
          out += t.hint().empty() ? "_" + std::to_string(t.index()) : t.hint();
        return;
      }
      case TermKind::Prefix: {
        Action a = t.action();
        switch (a.kind) {
          case ActionKind::Phago: out += "phago "; break;
          case ActionKind::CoPhago: out += "cophago "; break;
          case ActionKind::Exo: out += "exo "; break;
          case ActionKind::CoExo: out += "coexo "; break;
          case ActionKind::Pino: out += "pino "; break;
        }
        out += a.name;
        if (a.arg) {
          out += '{';
          put(*a.arg, 0);
          out += '}';
        }
        if (!t.cont().is(TermKind::MemZero)) {
          out += '.';
          put(t.cont(), 3);
        }
        return;
      }
      case TermKind::MemPar: {
        bool first = true;
        for (const auto& k : t.parts()) {
          if (!first) out += '|';
          first = false;
          put(k, 2);
        }
        return;
      }
      case TermKind::SysComp: {
        bool first = true;
        for (const auto& k : t.parts()) {
          if (!first) out += " o ";
          first = false;
          put(k, 1);
        }
        return;
      }
      case TermKind::Cell: {
        put(t.membrane(), t.membrane().is(TermKind::Cell) ? 2 : 1);
        out += '[';
        put(t.body(), 0);
        out += ']';
        return;
      }
      case TermKind::Lambda: {
        std::set<std::string> conflicts;
        collect_free_names(t.body(), conflicts);
        std::set<int> refs;
        collect_outer_refs(t.body(), 1, refs);
        for (int r : refs) {
          size_t i = static_cast<size_t>(r);
          if (i < binders.size()) conflicts.insert(binders[binders.size() - 1 - i]);
        }
        std::string name =
            t.hint().empty() ? "v" + std::to_string(binders.size()) : t.hint();
        while (conflicts.count(name)) name += '_';
        out += '\\';
        out += name;
        out += ':';
        out += render(t.annot());
        out += '.';
        binders.push_back(name);
        put(t.body(), 0);
        binders.pop_back();
        return;
      }
      case TermKind::App: {
        put(t.fn(), 4);
        out += '(';
        put(t.arg(), 0);
        out += ')';
        return;
      }
    }
  }
};

}  // namespace

std::string render(const Term& t) {
  Renderer r;
  r.put(t, 0);
  return r.out;
}

std::string render(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Sys: return "sys";
    case TypeKind::Mem: return "mem";
    case TypeKind::Act: return "act";
    case TypeKind::Arrow: {
      std::string lhs = render(t.from());
      if (t.from().kind() == TypeKind::Arrow) lhs = "(" + lhs + ")";
      return lhs + "->" + render(t.to());
    }
  }
  return "?";
}

}  // namespace brane
