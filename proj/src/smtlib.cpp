#include "mga/smtlib.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <variant>

#include "mga/errors.hpp"

namespace mga {

// ---------------------------------------------------------------------------
// Reader

namespace {

constexpr std::size_t kMaxDepth = 4096;

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_ws();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_ws();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(line_, col_, msg);
  }

  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                 c == '\f' || c == '\v') {
        advance();
      } else {
        break;
      }
    }
  }

  static bool is_symbol_char(char c) {
    if (c >= 'a' && c <= 'z') return true;
    if (c >= 'A' && c <= 'Z') return true;
    if (c >= '0' && c <= '9') return true;
    switch (c) {
      case '~': case '!': case '@': case '$': case '%': case '^': case '&':
      case '*': case '_': case '-': case '+': case '=': case '<': case '>':
      case '.': case '?': case '/': case '\'':
        return true;
      default:
        return false;
    }
  }

  SExpr read() {
    // Iterative list building keeps adversarial nesting off the C++ stack.
    std::vector<SExpr> stack;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unexpected end of input");
      char c = peek();
      SExpr atom;
      atom.line = line_;
      atom.col = col_;
      if (c == '(') {
        if (stack.size() >= kMaxDepth) fail("nesting too deep");
        advance();
        stack.push_back(std::move(atom));
        continue;
      }
      if (c == ')') {
        if (stack.empty()) fail("unexpected ')'");
        advance();
        SExpr done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty()) return done;
        stack.back().items.push_back(std::move(done));
        continue;
      }
      read_atom(atom);
      if (stack.empty()) return atom;
      stack.back().items.push_back(std::move(atom));
    }
  }

  void read_atom(SExpr& atom) {
    char c = peek();
    if (c == '|') {
      advance();
      std::string s;
      while (pos_ < text_.size() && peek() != '|') {
        if (peek() == '\\') fail("backslash in quoted symbol");
        s += peek();
        advance();
      }
      if (pos_ >= text_.size()) fail("unterminated quoted symbol");
      advance();
      atom.kind = SExpr::Kind::Symbol;
      atom.text = std::move(s);
      return;
    }
    if (c == '"') {
      advance();
      std::string s;
      for (;;) {
        if (pos_ >= text_.size()) fail("unterminated string literal");
        if (peek() == '"') {
          advance();
          if (pos_ < text_.size() && peek() == '"') {
            s += '"';
            advance();
            continue;
          }
          break;
        }
        s += peek();
        advance();
      }
      atom.kind = SExpr::Kind::String;
      atom.text = std::move(s);
      return;
    }
    if (c == ':') {
      advance();
      std::string s;
      while (pos_ < text_.size() && is_symbol_char(peek())) {
        s += peek();
        advance();
      }
      atom.kind = SExpr::Kind::Keyword;
      atom.text = std::move(s);
      return;
    }
    if (c == '#') fail("bit-vector literals are not supported");
    if (!is_symbol_char(c)) fail(std::string("unexpected character '") + c + "'");
    std::string s;
    while (pos_ < text_.size() && is_symbol_char(peek())) {
      s += peek();
      advance();
    }
    bool numeral = true;
    std::size_t start = (s.size() > 1 && s[0] == '-') ? 1 : 0;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') numeral = false;
    atom.kind = numeral ? SExpr::Kind::Numeral : SExpr::Kind::Symbol;
    atom.text = std::move(s);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) {
  return Reader(text).read_all();
}

// ---------------------------------------------------------------------------
// Problem conversion

namespace {

using Expr = std::variant<Term, Formula>;

const std::set<std::string> kLogics = {"QF_LIA", "QF_NIA", "QF_ALIA",
                                       "QF_AUFLIA", "QF_UFLIA"};

class Converter {
 public:
  explicit Converter(const std::vector<Declaration>& decls) {
    for (const auto& d : decls) declared_[d.name] = d.kind;
  }

  [[noreturn]] static void fail(const SExpr& at, const std::string& msg) {
    throw SyntaxError(at.line, at.col, msg);
  }

  DeclKind parse_sort(const SExpr& s) {
    if (s.is_symbol("Int")) return DeclKind::Int;
    if (s.is_symbol("Bool")) return DeclKind::Bool;
    if (s.is_list() && s.items.size() == 3 && s.items[0].is_symbol("Array")) {
      if (s.items[1].is_symbol("Int") && s.items[2].is_symbol("Int"))
        return DeclKind::Array;
      if (s.items[2].is_list() || s.items[1].is_list())
        throw UnsupportedFeature("multi-dimensional arrays");
      throw UnsupportedFeature("non-integer arrays");
    }
    if (s.kind == SExpr::Kind::Symbol || s.is_list())
      throw UnsupportedFeature("sort " + (s.is_list() ? std::string("(...)")
                                                      : s.text));
    fail(s, "expected a sort");
  }

  void declare(const SExpr& at, const std::string& name, DeclKind kind,
               std::vector<Declaration>& out) {
    if (declared_.count(name) || macros_.count(name))
      fail(at, "symbol already declared: " + name);
    declared_[name] = kind;
    out.push_back({name, kind});
  }

  void define(const SExpr& at, const std::string& name, DeclKind kind,
              const SExpr& body) {
    if (declared_.count(name) || macros_.count(name))
      fail(at, "symbol already declared: " + name);
    Expr e = convert(body);
    if (kind == DeclKind::Bool) {
      macros_.emplace(name, formula(e, body));
    } else {
      Term t = term(e, body);
      if ((kind == DeclKind::Array) != (t.sort() == Sort::Array))
        fail(body, "define-fun body does not match its sort");
      macros_.emplace(name, t);
    }
  }

  Formula formula(const Expr& e, const SExpr& at) {
    if (auto* f = std::get_if<Formula>(&e)) return *f;
    fail(at, "expected a Bool expression");
  }

  Term term(const Expr& e, const SExpr& at) {
    if (auto* t = std::get_if<Term>(&e)) return *t;
    fail(at, "expected a non-Bool expression");
  }

  Term int_term(const Expr& e, const SExpr& at) {
    Term t = term(e, at);
    if (t.sort() != Sort::Int) fail(at, "expected an Int expression");
    return t;
  }

  Expr convert(const SExpr& s) {
    try {
      return convert_inner(s);
    } catch (const std::invalid_argument& ex) {
      fail(s, ex.what());
    }
  }

 private:
  Expr lookup(const SExpr& s) {
    const std::string& n = s.text;
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(n);
      if (f != it->end()) return f->second;
    }
    if (auto m = macros_.find(n); m != macros_.end()) return m->second;
    if (n == "true") return mk_true();
    if (n == "false") return mk_false();
    auto d = declared_.find(n);
    if (d == declared_.end()) fail(s, "unknown symbol: " + n);
    switch (d->second) {
      case DeclKind::Int: return mk_int_var(n);
      case DeclKind::Bool: return mk_bool_var(n);
      case DeclKind::Array: return mk_array_var(n);
      case DeclKind::Function: fail(s, "function used without argument: " + n);
    }
    fail(s, "bad symbol");
  }

  std::vector<Expr> convert_args(const SExpr& s) {
    std::vector<Expr> out;
    for (std::size_t i = 1; i < s.items.size(); ++i)
      out.push_back(convert(s.items[i]));
    return out;
  }

  void arity(const SExpr& s, std::size_t lo, std::size_t hi = SIZE_MAX) {
    std::size_t n = s.items.size() - 1;
    if (n < lo || n > hi) fail(s, "wrong number of arguments");
  }

  Expr convert_inner(const SExpr& s) {
    switch (s.kind) {
      case SExpr::Kind::Numeral:
        return mk_int(*parse_int(s.text));
      case SExpr::Kind::Symbol:
        if (s.text.find('.') != std::string::npos &&
            s.text.find_first_not_of("0123456789.") == std::string::npos)
          throw UnsupportedFeature("real literal " + s.text);
        return lookup(s);
      case SExpr::Kind::Keyword:
      case SExpr::Kind::String:
        fail(s, "unexpected literal");
      case SExpr::Kind::List:
        break;
    }
    if (s.items.empty()) fail(s, "empty application");
    const SExpr& head = s.items[0];
    if (head.kind != SExpr::Kind::Symbol) {
      if (head.is_list() && !head.items.empty() && head.items[0].is_symbol("_"))
        throw UnsupportedFeature("indexed operator");
      fail(head, "expected an operator symbol");
    }
    const std::string& op = head.text;

    if (op == "!") {
      arity(s, 1, SIZE_MAX);
      return convert(s.items[1]);
    }
    if (op == "let") return convert_let(s);
    if (op == "forall" || op == "exists")
      throw UnsupportedFeature("quantifiers");

    std::vector<Expr> args = convert_args(s);
    auto T = [&](std::size_t i) { return int_term(args[i], s.items[i + 1]); };
    auto F = [&](std::size_t i) { return formula(args[i], s.items[i + 1]); };
    auto all_formulas = [&] {
      std::vector<Formula> fs;
      for (std::size_t i = 0; i < args.size(); ++i) fs.push_back(F(i));
      return fs;
    };
    auto all_ints = [&] {
      std::vector<Term> ts;
      for (std::size_t i = 0; i < args.size(); ++i) ts.push_back(T(i));
      return ts;
    };

    if (op == "not") {
      arity(s, 1, 1);
      return mk_not(F(0));
    }
    if (op == "and" || op == "or") {
      auto fs = all_formulas();
      return op == "and" ? mk_and(std::move(fs)) : mk_or(std::move(fs));
    }
    if (op == "=>") {
      arity(s, 2);
      auto fs = all_formulas();
      Formula r = fs.back();
      for (std::size_t i = fs.size() - 1; i-- > 0;) r = mk_implies(fs[i], r);
      return r;
    }
    if (op == "xor") {
      arity(s, 2);
      auto fs = all_formulas();
      Formula r = fs[0];
      for (std::size_t i = 1; i < fs.size(); ++i) r = mk_xor(r, fs[i]);
      return r;
    }
    if (op == "ite") {
      arity(s, 3, 3);
      Formula c = F(0);
      if (std::holds_alternative<Formula>(args[1]))
        return mk_ite(c, F(1), F(2));
      return mk_ite(c, term(args[1], s.items[2]), term(args[2], s.items[3]));
    }
    if (op == "=" || op == "distinct") {
      arity(s, 2);
      bool is_bool = std::holds_alternative<Formula>(args[0]);
      if (is_bool) {
        auto fs = all_formulas();
        std::vector<Formula> parts;
        if (op == "=") {
          for (std::size_t i = 0; i + 1 < fs.size(); ++i)
            parts.push_back(mk_iff(fs[i], fs[i + 1]));
        } else {
          for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j)
              parts.push_back(mk_xor(fs[i], fs[j]));
        }
        return mk_and(std::move(parts));
      }
      std::vector<Term> ts;
      for (std::size_t i = 0; i < args.size(); ++i)
        ts.push_back(term(args[i], s.items[i + 1]));
      if (op == "distinct") return mk_distinct(std::move(ts));
      std::vector<Formula> parts;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        parts.push_back(mk_atom(Rel::Eq, ts[i], ts[i + 1]));
      return mk_and(std::move(parts));
    }
    static const std::map<std::string, Rel> kRels = {
        {"<", Rel::Lt}, {"<=", Rel::Le}, {">", Rel::Gt}, {">=", Rel::Ge}};
    if (auto r = kRels.find(op); r != kRels.end()) {
      arity(s, 2);
      auto ts = all_ints();
      std::vector<Formula> parts;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        parts.push_back(mk_atom(r->second, ts[i], ts[i + 1]));
      return mk_and(std::move(parts));
    }
    if (op == "+") {
      arity(s, 1);
      return mk_add(all_ints());
    }
    if (op == "*") {
      arity(s, 1);
      return mk_mul(all_ints());
    }
    if (op == "-") {
      arity(s, 1);
      auto ts = all_ints();
      if (ts.size() == 1) return mk_neg(ts[0]);
      Term r = ts[0];
      for (std::size_t i = 1; i < ts.size(); ++i) r = mk_sub(r, ts[i]);
      return r;
    }
    if (op == "div" || op == "mod") {
      arity(s, 2, 2);
      return op == "div" ? mk_div(T(0), T(1)) : mk_mod(T(0), T(1));
    }
    if (op == "abs") {
      arity(s, 1, 1);
      Term t = T(0);
      return mk_ite(mk_atom(Rel::Ge, t, mk_int(0)), t, mk_neg(t));
    }
    if (op == "select") {
      arity(s, 2, 2);
      return mk_select(term(args[0], s.items[1]), T(1));
    }
    if (op == "store") {
      arity(s, 3, 3);
      return mk_store(term(args[0], s.items[1]), T(1), T(2));
    }
    if (op == "/" || op == "to_real" || op == "to_int" || op == "is_int")
      throw UnsupportedFeature("real arithmetic (" + op + ")");
    if (auto d = declared_.find(op);
        d != declared_.end() && d->second == DeclKind::Function) {
      arity(s, 1, 1);
      return mk_fun_app(op, T(0));
    }
    fail(head, "unknown operator: " + op);
  }

  Expr convert_let(const SExpr& s) {
    if (s.items.size() != 3 || !s.items[1].is_list())
      fail(s, "malformed let");
    std::map<std::string, Expr> frame;
    for (const auto& b : s.items[1].items) {
      if (!b.is_list() || b.items.size() != 2 ||
          b.items[0].kind != SExpr::Kind::Symbol)
        fail(b, "malformed let binding");
      frame.insert_or_assign(b.items[0].text, convert(b.items[1]));
    }
    scopes_.push_back(std::move(frame));
    Expr body = convert(s.items[2]);
    scopes_.pop_back();
    return body;
  }

  std::map<std::string, DeclKind> declared_;
  std::map<std::string, Expr> macros_;
  std::vector<std::map<std::string, Expr>> scopes_;
};

const std::string& symbol_text(const SExpr& s) {
  if (s.kind != SExpr::Kind::Symbol)
    throw SyntaxError(s.line, s.col, "expected a symbol");
  return s.text;
}

}  // namespace

ParsedProblem parse_problem(std::string_view text) {
  ParsedProblem p;
  Converter conv({});
  std::vector<Formula> asserts;
  for (const SExpr& cmd : read_sexprs(text)) {
    if (!cmd.is_list() || cmd.items.empty() ||
        cmd.items[0].kind != SExpr::Kind::Symbol)
      throw SyntaxError(cmd.line, cmd.col, "expected a command");
    const std::string& name = cmd.items[0].text;
    const auto& it = cmd.items;
    if (name == "set-logic") {
      if (it.size() != 2) Converter::fail(cmd, "malformed set-logic");
      p.logic = symbol_text(it[1]);
      if (!kLogics.count(p.logic)) throw UnsupportedFeature("logic " + p.logic);
    } else if (name == "set-info" || name == "set-option" ||
               name == "check-sat" || name == "exit" ||
               name.rfind("get-", 0) == 0) {
      // ignored
    } else if (name == "declare-const") {
      if (it.size() != 3) Converter::fail(cmd, "malformed declare-const");
      conv.declare(cmd, symbol_text(it[1]), conv.parse_sort(it[2]),
                   p.declarations);
    } else if (name == "declare-fun") {
      if (it.size() != 4 || !it[2].is_list())
        Converter::fail(cmd, "malformed declare-fun");
      const auto& params = it[2].items;
      DeclKind ret = conv.parse_sort(it[3]);
      if (params.empty()) {
        conv.declare(cmd, symbol_text(it[1]), ret, p.declarations);
      } else if (params.size() == 1) {
        if (conv.parse_sort(params[0]) != DeclKind::Int || ret != DeclKind::Int)
          throw UnsupportedFeature("functions other than Int -> Int");
        conv.declare(cmd, symbol_text(it[1]), DeclKind::Function,
                     p.declarations);
      } else {
        throw UnsupportedFeature("functions of arity > 1");
      }
    } else if (name == "define-fun") {
      if (it.size() != 5 || !it[2].is_list())
        Converter::fail(cmd, "malformed define-fun");
      if (!it[2].items.empty())
        throw UnsupportedFeature("define-fun with parameters");
      conv.define(cmd, symbol_text(it[1]), conv.parse_sort(it[3]), it[4]);
    } else if (name == "assert") {
      if (it.size() != 2) Converter::fail(cmd, "malformed assert");
      asserts.push_back(conv.formula(conv.convert(it[1]), it[1]));
    } else {
      throw UnsupportedFeature("command " + name);
    }
  }
  p.assertion = mk_and(std::move(asserts));
  return p;
}

Formula parse_formula(std::string_view text,
                      const std::vector<Declaration>& decls) {
  auto exprs = read_sexprs(text);
  if (exprs.size() != 1) throw SyntaxError(1, 1, "expected one formula");
  Converter conv(decls);
  return conv.formula(conv.convert(exprs[0]), exprs[0]);
}

// ---------------------------------------------------------------------------
// Printer

std::string quote_symbol(const std::string& name) {
  bool simple = !name.empty() && !(name[0] >= '0' && name[0] <= '9');
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') ||
              std::string_view("~!@$%^&*_-+=<>.?/").find(c) !=
                  std::string_view::npos;
    if (!ok) simple = false;
  }
  return simple ? name : "|" + name + "|";
}

namespace {

void print_to(std::string& out, const Term& t);
void print_to(std::string& out, const Formula& f);

void print_int(std::string& out, const Int& v) {
  if (v < 0) {
    out += "(- ";
    out += to_string(-v);
    out += ')';
  } else {
    out += to_string(v);
  }
}

void print_app(std::string& out, const char* op, std::span<const Term> args) {
  out += '(';
  out += op;
  for (const auto& a : args) {
    out += ' ';
    print_to(out, a);
  }
  out += ')';
}

void print_to(std::string& out, const Term& t) {
  switch (t.kind()) {
    case TermKind::IntConst: print_int(out, t.value()); return;
    case TermKind::IntVar:
    case TermKind::ArrayVar: out += quote_symbol(t.name()); return;
    case TermKind::Add: print_app(out, "+", t.args()); return;
    case TermKind::Sub: print_app(out, "-", t.args()); return;
    case TermKind::Mul: print_app(out, "*", t.args()); return;
    case TermKind::Div: print_app(out, "div", t.args()); return;
    case TermKind::Mod: print_app(out, "mod", t.args()); return;
    case TermKind::Select: print_app(out, "select", t.args()); return;
    case TermKind::Store: print_app(out, "store", t.args()); return;
    case TermKind::FunApp:
      print_app(out, quote_symbol(t.name()).c_str(), t.args());
      return;
    case TermKind::Ite:
      out += "(ite ";
      print_to(out, t.cond());
      out += ' ';
      print_to(out, t.arg(0));
      out += ' ';
      print_to(out, t.arg(1));
      out += ')';
      return;
  }
}

void print_fapp(std::string& out, const char* op, std::span<const Formula> as) {
  out += '(';
  out += op;
  for (const auto& a : as) {
    out += ' ';
    print_to(out, a);
  }
  out += ')';
}

void print_to(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::BoolVar: out += quote_symbol(f.name()); return;
    case FormulaKind::Atom: print_app(out, rel_symbol(f.rel()), f.terms()); return;
    case FormulaKind::Distinct: print_app(out, "distinct", f.terms()); return;
    case FormulaKind::Not: print_fapp(out, "not", f.args()); return;
    case FormulaKind::And: print_fapp(out, "and", f.args()); return;
    case FormulaKind::Or: print_fapp(out, "or", f.args()); return;
    case FormulaKind::Implies: print_fapp(out, "=>", f.args()); return;
    case FormulaKind::Iff: print_fapp(out, "=", f.args()); return;
    case FormulaKind::Xor: print_fapp(out, "xor", f.args()); return;
    case FormulaKind::Ite: print_fapp(out, "ite", f.args()); return;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_to(out, t);
  return out;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_to(out, f);
  return out;
}

std::string print_declaration(const Declaration& d) {
  std::string n = quote_symbol(d.name);
  switch (d.kind) {
    case DeclKind::Int: return "(declare-fun " + n + " () Int)";
    case DeclKind::Bool: return "(declare-fun " + n + " () Bool)";
    case DeclKind::Array: return "(declare-fun " + n + " () (Array Int Int))";
    case DeclKind::Function: return "(declare-fun " + n + " (Int) Int)";
  }
  return {};
}

std::string print_problem(const ParsedProblem& p) {
  std::string out;
  if (!p.logic.empty()) out += "(set-logic " + p.logic + ")\n";
  for (const auto& d : p.declarations) out += print_declaration(d) + "\n";
  out += "(assert " + print_formula(p.assertion) + ")\n(check-sat)\n";
  return out;
}

}  // namespace mga
