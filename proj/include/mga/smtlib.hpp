#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mga/term.hpp"

namespace mga {

// ---- S-expressions ----

struct SExpr {
  enum class Kind : std::uint8_t { Symbol, Numeral, Keyword, String, List };
  Kind kind = Kind::List;
  std::string text;  // unquoted symbol, numeral digits, keyword, string body
  std::vector<SExpr> items;
  std::size_t line = 0;
  std::size_t col = 0;

  bool is_symbol(std::string_view s) const {
    return kind == Kind::Symbol && text == s;
  }
  bool is_list() const { return kind == Kind::List; }
};

// Throws SyntaxError on unbalanced input, unterminated literals or nesting
// deeper than a fixed limit.
std::vector<SExpr> read_sexprs(std::string_view text);

// ---- problems ----

enum class DeclKind : std::uint8_t { Int, Bool, Array, Function };

struct Declaration {
  std::string name;
  DeclKind kind;

  friend bool operator==(const Declaration&, const Declaration&) = default;
};

struct ParsedProblem {
  std::string logic;  // empty when no set-logic was given
  std::vector<Declaration> declarations;
  Formula assertion;  // conjunction of all asserts
};

// Supported subset: set-logic, set-info, set-option, declare-fun,
// declare-const, zero-arity define-fun, assert, check-sat, get-*, exit.
// Throws SyntaxError or UnsupportedFeature.
ParsedProblem parse_problem(std::string_view text);

// Parses a single formula against the given declarations.
Formula parse_formula(std::string_view text,
                      const std::vector<Declaration>& decls);

// ---- printing ----

std::string quote_symbol(const std::string& name);
std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_declaration(const Declaration& d);
std::string print_problem(const ParsedProblem& p);

}  // namespace mga
