#include "mga/arrays.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

#include "mga/errors.hpp"
#include "mga/smtlib.hpp"
#include "mga/strengthen.hpp"
#include "mga/transform.hpp"

namespace mga {

std::string NameSupply::fresh(const std::string& prefix) {
  for (;;) {
    std::string name = prefix + "!" + std::to_string(next_++);
    if (reserved_.insert(name).second) return name;
  }
}

std::vector<Formula> AliasingLiterals::literals() const {
  std::vector<Formula> out;
  for (const auto& eq : equalities) {
    out.push_back(mk_atom(Rel::Eq, eq.index_a, eq.index_b));
    out.push_back(mk_atom(Rel::Eq, eq.select_a, eq.select_b));
  }
  for (const auto& [a, b] : disequalities) out.push_back(mk_atom(Rel::Ne, a, b));
  return out;
}

namespace {

bool is_select_store(const Term& t) {
  return t.kind() == TermKind::Select && t.arg(0).kind() == TermKind::Store;
}

// Innermost select(store(..),..) in the literal, if any.
std::optional<Term> find_select_store(const Formula& lit) {
  std::optional<Term> found;
  visit_terms(lit, [&](const Term& t) {
    if (!is_select_store(t)) return;
    bool inner = false;
    for (const auto& a : t.args())
      visit_terms(a, [&](const Term& x) { inner |= is_select_store(x); });
    if (!inner) found = t;
  });
  return found;
}

void push_unique(std::vector<Formula>& out, std::unordered_set<Formula, FormulaHash>& seen,
                 const Formula& f) {
  if (f.kind() == FormulaKind::True) return;
  if (seen.insert(f).second) out.push_back(f);
}

struct StoreChain {
  Term base;
  std::vector<std::pair<Term, Term>> stores;  // innermost first
};

StoreChain unwind(const Term& t) {
  StoreChain c;
  Term cur = t;
  while (cur.kind() == TermKind::Store) {
    c.stores.emplace_back(cur.arg(1), cur.arg(2));
    cur = cur.arg(0);
  }
  if (cur.kind() != TermKind::ArrayVar)
    throw UnsupportedFeature("array term " + print_term(t));
  std::reverse(c.stores.begin(), c.stores.end());
  c.base = cur;
  return c;
}

Term build_chain(const Term& base, const std::vector<Term>& idx,
                 const std::vector<Term>& vals) {
  Term t = base;
  for (std::size_t k = 0; k < idx.size(); ++k) t = mk_store(t, idx[k], vals[k]);
  return t;
}

bool is_array_atom(const Formula& f, Rel rel) {
  return f.kind() == FormulaKind::Atom && f.lhs().sort() == Sort::Array &&
         f.rel() == rel;
}

bool is_array_equality(const Formula& lit) { return is_array_atom(lit, Rel::Eq); }

bool is_array_disequality(const Formula& lit) {
  if (is_array_atom(lit, Rel::Ne)) return true;
  return lit.kind() == FormulaKind::Not && is_array_atom(lit.arg(0), Rel::Eq);
}

}  // namespace

// ---------------------------------------------------------------------------

ProductTerm eliminate_select_store(const ProductTerm& p, const Model& m) {
  std::vector<Formula> work(p.literals.rbegin(), p.literals.rend());
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  while (!work.empty()) {
    Formula lit = work.back();
    work.pop_back();
    auto t = find_select_store(lit);
    if (!t) {
      push_unique(out, seen, lit);
      continue;
    }
    const Term& store = t->arg(0);
    const Term& j = t->arg(1);
    const Term& i = store.arg(1);
    if (eval_int(i, m) == eval_int(j, m)) {
      work.push_back(replace(lit, *t, store.arg(2)));
      work.push_back(mk_atom(Rel::Eq, i, j));
    } else {
      work.push_back(replace(lit, *t, mk_select(store.arg(0), j)));
      work.push_back(mk_atom(Rel::Ne, i, j));
    }
  }
  return {std::move(out)};
}

ArrayRewrite rewrite_array_equalities(const ProductTerm& p, const Model& m,
                                      NameSupply& names) {
  ArrayRewrite rw;
  rw.model = m;
  std::vector<Formula> lits = p.literals;
  // not (a = b) / not (a != b) become plain atoms
  for (auto& l : lits)
    if (l.kind() == FormulaKind::Not && l.arg(0).kind() == FormulaKind::Atom &&
        l.arg(0).lhs().sort() == Sort::Array)
      l = mk_atom(negate(l.arg(0).rel()), l.arg(0).lhs(), l.arg(0).rhs());

  auto substitute_all = [&](const Term& from, const Term& to) {
    for (auto& l : lits) l = replace(l, from, to);
  };

  for (;;) {
    auto it = std::find_if(lits.begin(), lits.end(), is_array_equality);
    if (it == lits.end()) break;
    Formula eq = *it;
    lits.erase(it);
    StoreChain lhs = unwind(eq.lhs());
    StoreChain rhs = unwind(eq.rhs());
    std::vector<Formula> added;

    if (lhs.base == rhs.base) {
      // Same base array: the sides can only differ at the stored indices.
      std::vector<Term> idx;
      for (const auto& s : lhs.stores) idx.push_back(s.first);
      for (const auto& s : rhs.stores) idx.push_back(s.first);
      for (const auto& k : idx)
        added.push_back(mk_atom(Rel::Eq, mk_select(eq.lhs(), k),
                                mk_select(eq.rhs(), k)));
      lits.insert(lits.end(), added.begin(), added.end());
      continue;
    }

    FuncValue common = eval_array(eq.lhs(), rw.model);
    std::string c_name = names.fresh("c");
    Term c = mk_array_var(c_name);
    rw.model.funcs[c_name] = common;
    rw.fresh_arrays.insert(c_name);

    auto side = [&](const StoreChain& chain, const std::string& prefix) {
      const FuncValue base_val = rw.model.funcs.at(chain.base.name());
      std::vector<Term> idx, fresh_vals;
      std::vector<Int> idx_vals;
      for (const auto& [i, t] : chain.stores) {
        std::string u = names.fresh(prefix);
        Int iv = eval_int(i, rw.model);
        rw.model.ints[u] = base_val.apply(iv);
        rw.fresh_ints.insert(u);
        idx.push_back(i);
        idx_vals.push_back(iv);
        fresh_vals.push_back(mk_int_var(u));
      }
      // select(c, i_k) = t_k for the last store of each aliasing class;
      // earlier stores to the same slot are tied to it by index equality.
      for (std::size_t k = 0; k < chain.stores.size(); ++k) {
        std::optional<std::size_t> later;
        for (std::size_t l = k + 1; l < chain.stores.size(); ++l)
          if (idx_vals[l] == idx_vals[k]) {
            later = l;
            break;
          }
        if (later)
          added.push_back(mk_atom(Rel::Eq, idx[k], idx[*later]));
        else
          added.push_back(mk_atom(Rel::Eq, mk_select(c, idx[k]),
                                  chain.stores[k].second));
      }
      return build_chain(c, idx, fresh_vals);
    };
    Term lhs_sub = side(lhs, "u");
    Term rhs_sub = side(rhs, "v");

    lits.insert(lits.end(), added.begin(), added.end());
    substitute_all(lhs.base, lhs_sub);
    substitute_all(rhs.base, rhs_sub);
    rw.substitutions.emplace_back(lhs.base.name(), lhs_sub);
    rw.substitutions.emplace_back(rhs.base.name(), rhs_sub);
  }

  for (auto& l : lits) {
    if (!is_array_disequality(l)) continue;
    const Formula& atom = l.kind() == FormulaKind::Not ? l.arg(0) : l;
    auto w = find_witness(eval_array(atom.lhs(), rw.model),
                          eval_array(atom.rhs(), rw.model));
    if (!w)
      throw NoWitness("arrays are equal under the model: " + print_formula(l));
    Term wt = mk_int(*w);
    l = mk_atom(Rel::Ne, mk_select(atom.lhs(), wt), mk_select(atom.rhs(), wt));
  }
  rw.product.literals = std::move(lits);
  return rw;
}

AliasingLiterals build_aliasing(const ProductTerm& p, const Model& m) {
  // Group select / application terms by the symbol they read from.
  std::map<std::pair<int, std::string>, std::vector<Term>> groups;
  std::set<Term> seen;
  for (const auto& lit : p.literals) {
    visit_terms(lit, [&](const Term& t) {
      if (t.kind() == TermKind::Select) {
        if (t.arg(0).kind() != TermKind::ArrayVar)
          throw std::invalid_argument("aliasing needs select-store-free input");
        if (seen.insert(t).second) groups[{0, t.arg(0).name()}].push_back(t);
      } else if (t.kind() == TermKind::FunApp) {
        if (seen.insert(t).second) groups[{1, t.name()}].push_back(t);
      }
    });
  }
  auto index_of = [](const Term& t) {
    return t.kind() == TermKind::Select ? t.arg(1) : t.arg(0);
  };
  AliasingLiterals out;
  for (const auto& [key, terms] : groups) {
    for (std::size_t a = 0; a < terms.size(); ++a) {
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        Term ia = index_of(terms[a]);
        Term ib = index_of(terms[b]);
        if (eval_int(ia, m) == eval_int(ib, m))
          out.equalities.push_back({ia, ib, terms[a], terms[b]});
        else
          out.disequalities.emplace_back(ia, ib);
      }
    }
  }
  return out;
}

Term ground_term(const Term& t, const GroundingTable& gt) {
  if (t.kind() == TermKind::Select || t.kind() == TermKind::FunApp) {
    auto it = gt.to_var.find(t);
    if (it == gt.to_var.end())
      throw std::invalid_argument("term missing from grounding table: " +
                                  print_term(t));
    return mk_int_var(it->second);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(ground_term(a, gt));
  Formula cond;
  if (t.kind() == TermKind::Ite) cond = ground_formula(t.cond(), gt);
  return with_args(t, std::move(args), cond);
}

Formula ground_formula(const Formula& f, const GroundingTable& gt) {
  if (!f.terms().empty()) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) ts.push_back(ground_term(t, gt));
    return with_terms(f, std::move(ts));
  }
  if (f.args().empty()) return f;
  std::vector<Formula> as;
  for (const auto& a : f.args()) as.push_back(ground_formula(a, gt));
  return with_args(f, std::move(as));
}

Grounding ground(const ProductTerm& p, const Model& m, NameSupply& names) {
  Grounding g;
  g.model.ints = m.ints;
  g.model.bools = m.bools;
  for (const auto& lit : p.literals) {
    visit_terms(lit, [&](const Term& t) {
      if (t.kind() == TermKind::IntVar) g.table.plain_vars.insert(t.name());
      if (t.kind() != TermKind::Select && t.kind() != TermKind::FunApp) return;
      if (g.table.to_var.count(t)) return;
      std::string v = names.fresh("g");
      g.table.to_var.emplace(t, v);
      g.table.to_term.emplace(v, t);
      g.model.ints[v] = eval_int(t, m);
    });
  }
  for (const auto& lit : p.literals)
    g.product.literals.push_back(ground_formula(lit, g.table));
  return g;
}

IntervalMap unground(const IntervalMap& iv, const GroundingTable& gt) {
  IntervalMap out;
  for (const auto& [leaf, range] : iv.entries()) {
    if (leaf.kind() != TermKind::IntVar) throw UnknownGroundVar(print_term(leaf));
    auto it = gt.to_term.find(leaf.name());
    if (it != gt.to_term.end()) {
      out.restrict(it->second, range);
    } else if (gt.plain_vars.count(leaf.name())) {
      out.restrict(leaf, range);
    } else {
      throw UnknownGroundVar(leaf.name());
    }
  }
  return out;
}

ArrayApproximation pmga_amia(const ProductTerm& p, const Model& m,
                             NameSupply& names) {
  ArrayRewrite rw = rewrite_array_equalities(p, m, names);
  ProductTerm flat = eliminate_select_store(rw.product, rw.model);
  AliasingLiterals aliasing = build_aliasing(flat, rw.model);
  for (auto& lit : aliasing.literals()) flat.literals.push_back(lit);
  Grounding g = ground(flat, rw.model, names);
  IntervalMap grounded = pmga_mia(g.product, g.model);

  ArrayApproximation out;
  out.intervals = unground(grounded, g.table);
  out.aliasing = std::move(aliasing);
  out.seed = std::move(rw.model);
  out.substitutions = std::move(rw.substitutions);
  out.fresh_ints = std::move(rw.fresh_ints);
  out.fresh_arrays = std::move(rw.fresh_arrays);
  out.product = std::move(flat);
  return out;
}

}  // namespace mga
