#include "mga/model.hpp"

#include "mga/errors.hpp"

namespace mga {

const Int& FuncValue::apply(const Int& x) const {
  auto it = exceptions_.find(x);
  return it == exceptions_.end() ? default_ : it->second;
}

void FuncValue::set(const Int& x, const Int& v) {
  if (v == default_)
    exceptions_.erase(x);
  else
    exceptions_[x] = v;
}

FuncValue FuncValue::store(const Int& x, const Int& v) const {
  FuncValue r = *this;
  r.set(x, v);
  return r;
}

std::optional<Int> find_witness(const FuncValue& a, const FuncValue& b) {
  Int fresh = 0;
  bool any = false;
  auto scan = [&](const FuncValue& f) -> std::optional<Int> {
    for (const auto& [k, v] : f.exceptions()) {
      if (!any || k >= fresh) fresh = k + 1;
      any = true;
      if (a.apply(k) != b.apply(k)) return k;
    }
    return std::nullopt;
  };
  if (auto w = scan(a)) return w;
  if (auto w = scan(b)) return w;
  // Beyond every exception both functions take their defaults.
  if (a.default_value() != b.default_value()) return fresh;
  return std::nullopt;
}

namespace {

const FuncValue& lookup_func(const std::string& name, const Model& m) {
  auto it = m.funcs.find(name);
  if (it == m.funcs.end()) throw UnassignedSymbol(name);
  return it->second;
}

bool compare(Rel rel, const Int& a, const Int& b) {
  switch (rel) {
    case Rel::Lt: return a < b;
    case Rel::Le: return a <= b;
    case Rel::Gt: return a > b;
    case Rel::Ge: return a >= b;
    case Rel::Eq: return a == b;
    case Rel::Ne: return a != b;
  }
  return false;
}

bool equal_values(const Term& a, const Term& b, const Model& m) {
  if (a.sort() == Sort::Array) return eval_array(a, m) == eval_array(b, m);
  return eval_int(a, m) == eval_int(b, m);
}

}  // namespace

Int eval_int(const Term& t, const Model& m) {
  switch (t.kind()) {
    case TermKind::IntConst:
      return t.value();
    case TermKind::IntVar: {
      auto it = m.ints.find(t.name());
      if (it == m.ints.end()) throw UnassignedSymbol(t.name());
      return it->second;
    }
    case TermKind::Add: {
      Int s = 0;
      for (const auto& a : t.args()) s += eval_int(a, m);
      return s;
    }
    case TermKind::Sub:
      return eval_int(t.arg(0), m) - eval_int(t.arg(1), m);
    case TermKind::Mul: {
      Int p = 1;
      for (const auto& a : t.args()) p *= eval_int(a, m);
      return p;
    }
    case TermKind::Div:
    case TermKind::Mod: {
      Int x = eval_int(t.arg(0), m);
      Int y = eval_int(t.arg(1), m);
      // SMT-LIB leaves x/0 unspecified; pick 0 to keep evaluation total.
      if (y == 0) return 0;
      return t.kind() == TermKind::Div ? euclid_div(x, y) : euclid_mod(x, y);
    }
    case TermKind::Select: {
      Int idx = eval_int(t.arg(1), m);
      if (t.arg(0).kind() == TermKind::ArrayVar)
        return lookup_func(t.arg(0).name(), m).apply(idx);
      return eval_array(t.arg(0), m).apply(idx);
    }
    case TermKind::FunApp:
      return lookup_func(t.name(), m).apply(eval_int(t.arg(0), m));
    case TermKind::Ite:
      return eval_formula(t.cond(), m) ? eval_int(t.arg(0), m)
                                       : eval_int(t.arg(1), m);
    case TermKind::ArrayVar:
    case TermKind::Store:
      break;
  }
  throw std::logic_error("eval_int on a non-Int term");
}

FuncValue eval_array(const Term& t, const Model& m) {
  switch (t.kind()) {
    case TermKind::ArrayVar:
      return lookup_func(t.name(), m);
    case TermKind::Store: {
      FuncValue base = eval_array(t.arg(0), m);
      base.set(eval_int(t.arg(1), m), eval_int(t.arg(2), m));
      return base;
    }
    case TermKind::Ite:
      return eval_formula(t.cond(), m) ? eval_array(t.arg(0), m)
                                       : eval_array(t.arg(1), m);
    default:
      break;
  }
  throw std::logic_error("eval_array on a non-Array term");
}

Value eval_term(const Term& t, const Model& m) {
  if (t.sort() == Sort::Array) return eval_array(t, m);
  return eval_int(t, m);
}

bool eval_formula(const Formula& f, const Model& m) {
  switch (f.kind()) {
    case FormulaKind::True:
      return true;
    case FormulaKind::False:
      return false;
    case FormulaKind::BoolVar: {
      auto it = m.bools.find(f.name());
      if (it == m.bools.end()) throw UnassignedSymbol(f.name());
      return it->second;
    }
    case FormulaKind::Atom:
      if (f.lhs().sort() == Sort::Array) {
        bool eq = equal_values(f.lhs(), f.rhs(), m);
        return f.rel() == Rel::Eq ? eq : !eq;
      }
      return compare(f.rel(), eval_int(f.lhs(), m), eval_int(f.rhs(), m));
    case FormulaKind::Not:
      return !eval_formula(f.arg(0), m);
    case FormulaKind::And:
      for (const auto& a : f.args())
        if (!eval_formula(a, m)) return false;
      return true;
    case FormulaKind::Or:
      for (const auto& a : f.args())
        if (eval_formula(a, m)) return true;
      return false;
    case FormulaKind::Implies:
      return !eval_formula(f.arg(0), m) || eval_formula(f.arg(1), m);
    case FormulaKind::Iff:
      return eval_formula(f.arg(0), m) == eval_formula(f.arg(1), m);
    case FormulaKind::Xor:
      return eval_formula(f.arg(0), m) != eval_formula(f.arg(1), m);
    case FormulaKind::Ite:
      return eval_formula(f.arg(0), m) ? eval_formula(f.arg(1), m)
                                       : eval_formula(f.arg(2), m);
    case FormulaKind::Distinct: {
      auto ts = f.terms();
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
          if (equal_values(ts[i], ts[j], m)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace mga
