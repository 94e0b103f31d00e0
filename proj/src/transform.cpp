#include "mga/transform.hpp"

#include <optional>

#include "mga/errors.hpp"

namespace mga {

// ---- generic traversal ----

Term map_term(const Term& t, const std::function<Term(const Term&)>& fn) {
  if (t.args().empty() && t.kind() != TermKind::Ite) return fn(t);
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(map_term(a, fn));
    changed |= args.back().id() != a.id();
  }
  Formula cond;
  if (t.kind() == TermKind::Ite) {
    cond = map_terms(t.cond(), fn);
    changed |= cond.id() != t.cond().id();
  }
  return fn(changed ? with_args(t, std::move(args), cond) : t);
}

Formula map_terms(const Formula& f,
                  const std::function<Term(const Term&)>& fn) {
  if (!f.terms().empty()) {
    std::vector<Term> ts;
    bool changed = false;
    for (const auto& t : f.terms()) {
      ts.push_back(map_term(t, fn));
      changed |= ts.back().id() != t.id();
    }
    return changed ? with_terms(f, std::move(ts)) : f;
  }
  if (f.args().empty()) return f;
  std::vector<Formula> as;
  bool changed = false;
  for (const auto& a : f.args()) {
    as.push_back(map_terms(a, fn));
    changed |= as.back().id() != a.id();
  }
  return changed ? with_args(f, std::move(as)) : f;
}

Term replace(const Term& t, const Term& from, const Term& to) {
  return map_term(t, [&](const Term& x) { return x == from ? to : x; });
}

Formula replace(const Formula& f, const Term& from, const Term& to) {
  return map_terms(f, [&](const Term& x) { return x == from ? to : x; });
}

void visit_terms(const Term& t, const std::function<void(const Term&)>& fn) {
  fn(t);
  if (t.kind() == TermKind::Ite) visit_terms(t.cond(), fn);
  for (const auto& a : t.args()) visit_terms(a, fn);
}

void visit_terms(const Formula& f,
                 const std::function<void(const Term&)>& fn) {
  for (const auto& t : f.terms()) visit_terms(t, fn);
  for (const auto& a : f.args()) visit_terms(a, fn);
}

void collect_literals(const Formula& f, std::vector<Formula>& out) {
  if (f.is_literal()) {
    out.push_back(f);
    return;
  }
  for (const auto& a : f.args()) collect_literals(a, out);
}

void collect_symbols(const Term& t, SymbolSet& out) {
  visit_terms(t, [&](const Term& x) {
    switch (x.kind()) {
      case TermKind::IntVar: out.ints.insert(x.name()); break;
      case TermKind::ArrayVar: out.arrays.insert(x.name()); break;
      case TermKind::FunApp: out.funcs.insert(x.name()); break;
      case TermKind::Ite: collect_symbols(x.cond(), out); break;
      default: break;
    }
  });
}

void collect_symbols(const Formula& f, SymbolSet& out) {
  if (f.kind() == FormulaKind::BoolVar) out.bools.insert(f.name());
  for (const auto& t : f.terms()) collect_symbols(t, out);
  for (const auto& a : f.args()) collect_symbols(a, out);
}

std::size_t nested_select_depth(const Term& t) {
  std::size_t n = 0;
  for (const auto& a : t.args())
    visit_terms(a, [&](const Term& x) {
      if (x.kind() == TermKind::Select || x.kind() == TermKind::FunApp) ++n;
    });
  return n;
}

// ---- NNF ----

namespace {

Formula nnf(const Formula& f, bool negated);

Formula expand_distinct(const Formula& f) {
  std::vector<Formula> parts;
  auto ts = f.terms();
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      parts.push_back(mk_atom(Rel::Ne, ts[i], ts[j]));
  return mk_and(std::move(parts));
}

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case FormulaKind::True:
      return negated ? mk_false() : mk_true();
    case FormulaKind::False:
      return negated ? mk_true() : mk_false();
    case FormulaKind::BoolVar:
    case FormulaKind::Atom:
      return negated ? mk_not(f) : f;
    case FormulaKind::Not:
      return nnf(f.arg(0), !negated);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> as;
      as.reserve(f.args().size());
      for (const auto& a : f.args()) as.push_back(nnf(a, negated));
      bool conj = (f.kind() == FormulaKind::And) != negated;
      return conj ? mk_and(std::move(as)) : mk_or(std::move(as));
    }
    case FormulaKind::Implies:
      return nnf(mk_or({mk_not(f.arg(0)), f.arg(1)}), negated);
    case FormulaKind::Iff:
    case FormulaKind::Xor: {
      const auto& a = f.arg(0);
      const auto& b = f.arg(1);
      bool iff = (f.kind() == FormulaKind::Iff) != negated;
      if (iff)
        return mk_or({mk_and({nnf(a, false), nnf(b, false)}),
                      mk_and({nnf(a, true), nnf(b, true)})});
      return mk_or({mk_and({nnf(a, false), nnf(b, true)}),
                    mk_and({nnf(a, true), nnf(b, false)})});
    }
    case FormulaKind::Ite: {
      const auto& c = f.arg(0);
      return mk_or({mk_and({nnf(c, false), nnf(f.arg(1), negated)}),
                    mk_and({nnf(c, true), nnf(f.arg(2), negated)})});
    }
    case FormulaKind::Distinct:
      return nnf(expand_distinct(f), negated);
  }
  return f;
}

// ---- preprocess ----

std::optional<Term> first_ite(const Term& t) {
  std::optional<Term> found;
  visit_terms(t, [&](const Term& x) {
    if (!found && x.kind() == TermKind::Ite) found = x;
  });
  return found;
}

void reject_unsupported(const Term& t) {
  visit_terms(t, [](const Term& x) {
    if (x.kind() == TermKind::Div) throw UnsupportedFeature("div");
    if (x.kind() == TermKind::Mod) throw UnsupportedFeature("mod");
  });
}

Formula lift_ite(const Formula& atom) {
  for (const auto& t : atom.terms()) {
    if (auto ite = first_ite(t)) {
      Formula cond = preprocess(ite->cond());
      Formula then_f = lift_ite(replace(atom, *ite, ite->arg(0)));
      Formula else_f = lift_ite(replace(atom, *ite, ite->arg(1)));
      return mk_or({mk_and({cond, then_f}), mk_and({mk_not(cond), else_f})});
    }
  }
  return atom;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

Formula preprocess(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::BoolVar:
      return f;
    case FormulaKind::Atom:
      for (const auto& t : f.terms()) reject_unsupported(t);
      return lift_ite(f);
    case FormulaKind::Distinct:
      for (const auto& t : f.terms()) reject_unsupported(t);
      return preprocess(expand_distinct(f));
    case FormulaKind::Not:
      return mk_not(preprocess(f.arg(0)));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> as;
      for (const auto& a : f.args()) as.push_back(preprocess(a));
      return f.kind() == FormulaKind::And ? mk_and(std::move(as))
                                          : mk_or(std::move(as));
    }
    case FormulaKind::Implies:
      return mk_or({mk_not(preprocess(f.arg(0))), preprocess(f.arg(1))});
    case FormulaKind::Iff: {
      Formula a = preprocess(f.arg(0));
      Formula b = preprocess(f.arg(1));
      return mk_or({mk_and({a, b}), mk_and({mk_not(a), mk_not(b)})});
    }
    case FormulaKind::Xor: {
      Formula a = preprocess(f.arg(0));
      Formula b = preprocess(f.arg(1));
      return mk_or({mk_and({a, mk_not(b)}), mk_and({mk_not(a), b})});
    }
    case FormulaKind::Ite: {
      Formula c = preprocess(f.arg(0));
      return mk_or({mk_and({c, preprocess(f.arg(1))}),
                    mk_and({mk_not(c), preprocess(f.arg(2))})});
    }
  }
  return f;
}

}  // namespace mga
