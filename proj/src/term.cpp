#include "mga/term.hpp"

#include <functional>
#include <stdexcept>

namespace mga {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_int(const Int& v) {
  return std::hash<std::string>{}(v.str());
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_int(const Term& t, const char* msg) {
  require(!t.is_null() && t.sort() == Sort::Int, msg);
}

}  // namespace

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
    case Rel::Eq: return "=";
    case Rel::Ne: return "distinct";
  }
  return "?";
}

Rel negate(Rel r) {
  switch (r) {
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
  }
  return r;
}

Rel flip(Rel r) {
  switch (r) {
    case Rel::Lt: return Rel::Gt;
    case Rel::Le: return Rel::Ge;
    case Rel::Gt: return Rel::Lt;
    case Rel::Ge: return Rel::Le;
    default: return r;
  }
}

struct TermFactory {
  static Term make(TermKind kind, Sort sort, Int value, std::string name,
                   std::vector<Term> args, Formula cond = {}) {
    std::size_t h = static_cast<std::size_t>(kind) * 31 + 7;
    h = mix(h, static_cast<std::size_t>(sort));
    if (kind == TermKind::IntConst) h = mix(h, hash_int(value));
    if (!name.empty()) h = mix(h, std::hash<std::string>{}(name));
    for (const auto& a : args) h = mix(h, a.hash());
    if (!cond.is_null()) h = mix(h, cond.hash());
    auto node = std::make_shared<TermNode>(TermNode{
        kind, sort, std::move(value), std::move(name), std::move(args),
        std::move(cond), h});
    return Term(std::move(node));
  }
};

struct FormulaFactory {
  static Formula make(FormulaKind kind, Rel rel, std::string name,
                      std::vector<Term> terms, std::vector<Formula> args) {
    std::size_t h = static_cast<std::size_t>(kind) * 131 + 3;
    if (kind == FormulaKind::Atom) h = mix(h, static_cast<std::size_t>(rel));
    if (!name.empty()) h = mix(h, std::hash<std::string>{}(name));
    for (const auto& t : terms) h = mix(h, t.hash());
    for (const auto& a : args) h = mix(h, a.hash());
    auto node = std::make_shared<FormulaNode>(FormulaNode{
        kind, rel, std::move(name), std::move(terms), std::move(args), h});
    return Formula(std::move(node));
  }
};

// ---- Term accessors ----

TermKind Term::kind() const { return node_->kind; }
Sort Term::sort() const { return node_->sort; }
const Int& Term::value() const { return node_->value; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }
const Formula& Term::cond() const { return node_->cond; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }

bool Term::is_leaf() const {
  auto k = kind();
  return k == TermKind::IntVar || k == TermKind::Select ||
         k == TermKind::FunApp;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  if (x.kind == TermKind::IntConst) {
    if (x.value < y.value) return std::strong_ordering::less;
    if (x.value > y.value) return std::strong_ordering::greater;
  }
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  return x.cond <=> y.cond;
}

// ---- Formula accessors ----

FormulaKind Formula::kind() const { return node_->kind; }
Rel Formula::rel() const { return node_->rel; }
std::span<const Term> Formula::terms() const { return node_->terms; }
std::span<const Formula> Formula::args() const { return node_->args; }
const std::string& Formula::name() const { return node_->name; }
std::size_t Formula::hash() const { return node_ ? node_->hash : 0; }

bool Formula::is_literal() const {
  switch (kind()) {
    case FormulaKind::Atom:
    case FormulaKind::BoolVar:
      return true;
    case FormulaKind::Not: {
      auto k = arg(0).kind();
      return k == FormulaKind::Atom || k == FormulaKind::BoolVar;
    }
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.rel <=> y.rel; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.terms.size() <=> y.terms.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.terms.size(); ++i)
    if (auto c = x.terms[i] <=> y.terms[i]; c != 0) return c;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---- Term constructors ----

Term mk_int(const Int& v) {
  return TermFactory::make(TermKind::IntConst, Sort::Int, v, {}, {});
}

Term mk_int_var(const std::string& name) {
  require(!name.empty(), "empty variable name");
  return TermFactory::make(TermKind::IntVar, Sort::Int, 0, name, {});
}

Term mk_array_var(const std::string& name) {
  require(!name.empty(), "empty array name");
  return TermFactory::make(TermKind::ArrayVar, Sort::Array, 0, name, {});
}

Term mk_add(std::vector<Term> args) {
  require(!args.empty(), "+ needs arguments");
  for (const auto& a : args) require_int(a, "+ expects Int arguments");
  if (args.size() == 1) return args[0];
  return TermFactory::make(TermKind::Add, Sort::Int, 0, {}, std::move(args));
}

Term mk_sub(const Term& lhs, const Term& rhs) {
  require_int(lhs, "- expects Int arguments");
  require_int(rhs, "- expects Int arguments");
  return TermFactory::make(TermKind::Sub, Sort::Int, 0, {}, {lhs, rhs});
}

Term mk_mul(std::vector<Term> args) {
  require(!args.empty(), "* needs arguments");
  for (const auto& a : args) require_int(a, "* expects Int arguments");
  if (args.size() == 1) return args[0];
  return TermFactory::make(TermKind::Mul, Sort::Int, 0, {}, std::move(args));
}

Term mk_neg(const Term& t) {
  require_int(t, "- expects an Int argument");
  if (t.kind() == TermKind::IntConst) return mk_int(-t.value());
  return mk_mul({mk_int(-1), t});
}

Term mk_div(const Term& lhs, const Term& rhs) {
  require_int(lhs, "div expects Int arguments");
  require_int(rhs, "div expects Int arguments");
  return TermFactory::make(TermKind::Div, Sort::Int, 0, {}, {lhs, rhs});
}

Term mk_mod(const Term& lhs, const Term& rhs) {
  require_int(lhs, "mod expects Int arguments");
  require_int(rhs, "mod expects Int arguments");
  return TermFactory::make(TermKind::Mod, Sort::Int, 0, {}, {lhs, rhs});
}

Term mk_select(const Term& array, const Term& index) {
  require(!array.is_null() && array.sort() == Sort::Array,
          "select expects an array");
  require_int(index, "select index must be Int");
  return TermFactory::make(TermKind::Select, Sort::Int, 0, {}, {array, index});
}

Term mk_store(const Term& array, const Term& index, const Term& value) {
  require(!array.is_null() && array.sort() == Sort::Array,
          "store expects an array");
  require_int(index, "store index must be Int");
  require_int(value, "store value must be Int");
  return TermFactory::make(TermKind::Store, Sort::Array, 0, {},
                           {array, index, value});
}

Term mk_fun_app(const std::string& fname, const Term& arg) {
  require(!fname.empty(), "empty function name");
  require_int(arg, "function argument must be Int");
  return TermFactory::make(TermKind::FunApp, Sort::Int, 0, fname, {arg});
}

Term mk_ite(const Formula& cond, const Term& then_t, const Term& else_t) {
  require(!cond.is_null(), "ite needs a condition");
  require(!then_t.is_null() && !else_t.is_null() &&
              then_t.sort() == else_t.sort(),
          "ite branches must share a sort");
  return TermFactory::make(TermKind::Ite, then_t.sort(), 0, {},
                           {then_t, else_t}, cond);
}

Term with_args(const Term& t, std::vector<Term> args, Formula cond) {
  switch (t.kind()) {
    case TermKind::IntConst:
    case TermKind::IntVar:
    case TermKind::ArrayVar:
      return t;
    case TermKind::Add: return mk_add(std::move(args));
    case TermKind::Sub: return mk_sub(args[0], args[1]);
    case TermKind::Mul: return mk_mul(std::move(args));
    case TermKind::Div: return mk_div(args[0], args[1]);
    case TermKind::Mod: return mk_mod(args[0], args[1]);
    case TermKind::Select: return mk_select(args[0], args[1]);
    case TermKind::FunApp: return mk_fun_app(t.name(), args[0]);
    case TermKind::Store: return mk_store(args[0], args[1], args[2]);
    case TermKind::Ite:
      return mk_ite(cond.is_null() ? t.cond() : cond, args[0], args[1]);
  }
  return t;
}

// ---- Formula constructors ----

Formula mk_true() {
  static const Formula f =
      FormulaFactory::make(FormulaKind::True, Rel::Eq, {}, {}, {});
  return f;
}

Formula mk_false() {
  static const Formula f =
      FormulaFactory::make(FormulaKind::False, Rel::Eq, {}, {}, {});
  return f;
}

Formula mk_bool_var(const std::string& name) {
  require(!name.empty(), "empty boolean name");
  return FormulaFactory::make(FormulaKind::BoolVar, Rel::Eq, name, {}, {});
}

Formula mk_atom(Rel rel, const Term& lhs, const Term& rhs) {
  require(!lhs.is_null() && !rhs.is_null(), "atom needs two operands");
  require(lhs.sort() == rhs.sort(), "atom operands must share a sort");
  require(lhs.sort() != Sort::Bool, "atom operands cannot be Bool");
  if (lhs.sort() == Sort::Array)
    require(rel == Rel::Eq || rel == Rel::Ne,
            "array atoms only support = and distinct");
  return FormulaFactory::make(FormulaKind::Atom, rel, {}, {lhs, rhs}, {});
}

Formula mk_not(const Formula& f) {
  require(!f.is_null(), "not needs an argument");
  return FormulaFactory::make(FormulaKind::Not, Rel::Eq, {}, {}, {f});
}

namespace {

Formula mk_junction(FormulaKind kind, std::vector<Formula> args) {
  std::vector<Formula> flat;
  flat.reserve(args.size());
  for (auto& a : args) {
    require(!a.is_null(), "null junction argument");
    if (a.kind() == kind) {
      for (const auto& c : a.args()) flat.push_back(c);
    } else {
      flat.push_back(std::move(a));
    }
  }
  if (flat.empty())
    return kind == FormulaKind::And ? mk_true() : mk_false();
  if (flat.size() == 1) return flat[0];
  return FormulaFactory::make(kind, Rel::Eq, {}, {}, std::move(flat));
}

}  // namespace

Formula mk_and(std::vector<Formula> args) {
  return mk_junction(FormulaKind::And, std::move(args));
}

Formula mk_or(std::vector<Formula> args) {
  return mk_junction(FormulaKind::Or, std::move(args));
}

Formula mk_implies(const Formula& a, const Formula& b) {
  return FormulaFactory::make(FormulaKind::Implies, Rel::Eq, {}, {}, {a, b});
}

Formula mk_iff(const Formula& a, const Formula& b) {
  return FormulaFactory::make(FormulaKind::Iff, Rel::Eq, {}, {}, {a, b});
}

Formula mk_xor(const Formula& a, const Formula& b) {
  return FormulaFactory::make(FormulaKind::Xor, Rel::Eq, {}, {}, {a, b});
}

Formula mk_ite(const Formula& c, const Formula& t, const Formula& e) {
  return FormulaFactory::make(FormulaKind::Ite, Rel::Eq, {}, {}, {c, t, e});
}

Formula mk_distinct(std::vector<Term> terms) {
  require(terms.size() >= 2, "distinct needs at least two arguments");
  for (const auto& t : terms)
    require(!t.is_null() && t.sort() == terms[0].sort() &&
                t.sort() != Sort::Bool,
            "distinct arguments must share a non-Bool sort");
  if (terms.size() == 2) return mk_atom(Rel::Ne, terms[0], terms[1]);
  return FormulaFactory::make(FormulaKind::Distinct, Rel::Ne, {},
                              std::move(terms), {});
}

Formula with_args(const Formula& f, std::vector<Formula> args) {
  switch (f.kind()) {
    case FormulaKind::Not: return mk_not(args[0]);
    case FormulaKind::And: return mk_and(std::move(args));
    case FormulaKind::Or: return mk_or(std::move(args));
    case FormulaKind::Implies: return mk_implies(args[0], args[1]);
    case FormulaKind::Iff: return mk_iff(args[0], args[1]);
    case FormulaKind::Xor: return mk_xor(args[0], args[1]);
    case FormulaKind::Ite: return mk_ite(args[0], args[1], args[2]);
    default: return f;
  }
}

Formula with_terms(const Formula& f, std::vector<Term> terms) {
  switch (f.kind()) {
    case FormulaKind::Atom: return mk_atom(f.rel(), terms[0], terms[1]);
    case FormulaKind::Distinct: return mk_distinct(std::move(terms));
    default: return f;
  }
}

std::size_t literal_count(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::BoolVar:
    case FormulaKind::Distinct:
      return 1;
    case FormulaKind::True:
    case FormulaKind::False:
      return 0;
    default: {
      std::size_t n = 0;
      for (const auto& a : f.args()) n += literal_count(a);
      return n;
    }
  }
}

namespace {

bool term_has_arrays(const Term& t) {
  switch (t.kind()) {
    case TermKind::ArrayVar:
    case TermKind::Select:
    case TermKind::Store:
    case TermKind::FunApp:
      return true;
    case TermKind::Ite:
      if (has_array_symbols(t.cond())) return true;
      break;
    default:
      break;
  }
  for (const auto& a : t.args())
    if (term_has_arrays(a)) return true;
  return false;
}

}  // namespace

bool has_array_symbols(const Formula& f) {
  for (const auto& t : f.terms())
    if (term_has_arrays(t)) return true;
  for (const auto& a : f.args())
    if (has_array_symbols(a)) return true;
  return false;
}

}  // namespace mga
