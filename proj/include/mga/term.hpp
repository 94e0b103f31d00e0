#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mga/integer.hpp"

namespace mga {

enum class Sort : std::uint8_t { Int, Bool, Array };

enum class TermKind : std::uint8_t {
  IntConst,
  IntVar,
  Add,
  Sub,
  Mul,
  // Div/Mod are representable so that out-of-scope input can be parsed,
  // evaluated and then rejected by preprocess().
  Div,
  Mod,
  Select,
  FunApp,
  ArrayVar,
  Store,
  Ite,
};

enum class FormulaKind : std::uint8_t {
  True,
  False,
  BoolVar,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Xor,
  Ite,
  Distinct,
};

enum class Rel : std::uint8_t { Lt, Le, Gt, Ge, Eq, Ne };

const char* rel_symbol(Rel r);
Rel negate(Rel r);
// a rel b  <=>  b flip(rel) a
Rel flip(Rel r);

class Formula;
struct TermNode;
struct FormulaNode;

class Term {
 public:
  Term() = default;

  TermKind kind() const;
  Sort sort() const;
  // IntConst only.
  const Int& value() const;
  // IntVar, ArrayVar, FunApp (function symbol).
  const std::string& name() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  // Ite only.
  const Formula& cond() const;

  std::size_t hash() const;
  bool is_null() const { return node_ == nullptr; }
  bool is_leaf() const;  // IntVar, Select, FunApp
  const TermNode* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  friend struct TermFactory;
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

class Formula {
 public:
  Formula() = default;

  FormulaKind kind() const;
  Rel rel() const;                        // Atom
  std::span<const Term> terms() const;    // Atom (2), Distinct (n)
  const Term& lhs() const { return terms()[0]; }
  const Term& rhs() const { return terms()[1]; }
  std::span<const Formula> args() const;  // connectives
  const Formula& arg(std::size_t i) const { return args()[i]; }
  const std::string& name() const;        // BoolVar

  std::size_t hash() const;
  bool is_null() const { return node_ == nullptr; }
  bool is_literal() const;
  const FormulaNode* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  friend struct FormulaFactory;
  explicit Formula(std::shared_ptr<const FormulaNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct TermNode {
  TermKind kind;
  Sort sort;
  Int value;
  std::string name;
  std::vector<Term> args;
  Formula cond;
  std::size_t hash;
};

struct FormulaNode {
  FormulaKind kind;
  Rel rel = Rel::Eq;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> args;
  std::size_t hash;
};

// Term constructors. Sort errors throw std::invalid_argument.
Term mk_int(const Int& v);
Term mk_int_var(const std::string& name);
Term mk_array_var(const std::string& name);
Term mk_add(std::vector<Term> args);
Term mk_sub(const Term& lhs, const Term& rhs);
Term mk_mul(std::vector<Term> args);
Term mk_neg(const Term& t);  // (* -1 t), or a folded constant
Term mk_div(const Term& lhs, const Term& rhs);
Term mk_mod(const Term& lhs, const Term& rhs);
Term mk_select(const Term& array, const Term& index);
Term mk_store(const Term& array, const Term& index, const Term& value);
Term mk_fun_app(const std::string& fname, const Term& arg);
Term mk_ite(const Formula& cond, const Term& then_t, const Term& else_t);
// Rebuilds t with new children (same kind/name/value).
Term with_args(const Term& t, std::vector<Term> args, Formula cond = {});

// Formula constructors. And/Or flatten nested And/Or; a single child
// collapses to itself, no children gives True/False.
Formula mk_true();
Formula mk_false();
Formula mk_bool_var(const std::string& name);
Formula mk_atom(Rel rel, const Term& lhs, const Term& rhs);
Formula mk_not(const Formula& f);
Formula mk_and(std::vector<Formula> args);
Formula mk_or(std::vector<Formula> args);
Formula mk_implies(const Formula& a, const Formula& b);
Formula mk_iff(const Formula& a, const Formula& b);
Formula mk_xor(const Formula& a, const Formula& b);
Formula mk_ite(const Formula& c, const Formula& t, const Formula& e);
Formula mk_distinct(std::vector<Term> terms);
Formula with_args(const Formula& f, std::vector<Formula> args);
Formula with_terms(const Formula& f, std::vector<Term> terms);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Number of Atom / BoolVar occurrences.
std::size_t literal_count(const Formula& f);

// True when any array variable, select, store or function application occurs.
bool has_array_symbols(const Formula& f);

}  // namespace mga
