#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mga/term.hpp"

namespace mga {

// Negation normal form: Not only directly above Atom or BoolVar; the
// grammar connectives Implies/Iff/Xor/Ite/Distinct are expanded first.
Formula to_nnf(const Formula& f);

// Rewrites parser output into the And/Or/Not/Atom/BoolVar grammar:
// term-level ite is lifted to a case split around its atom, boolean
// =>/<=>/xor/ite and n-ary distinct are expanded. Throws
// UnsupportedFeature on div/mod.
Formula preprocess(const Formula& f);

// Replaces every occurrence of `from` (structural match) by `to`.
Term replace(const Term& t, const Term& from, const Term& to);
Formula replace(const Formula& f, const Term& from, const Term& to);

// Bottom-up rewrite of every term; `fn` receives the already-rewritten node.
Term map_term(const Term& t, const std::function<Term(const Term&)>& fn);
Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn);

// Pre-order visit of every term node, including terms nested in ite
// conditions.
void visit_terms(const Term& t, const std::function<void(const Term&)>& fn);
void visit_terms(const Formula& f, const std::function<void(const Term&)>& fn);

// Atom/BoolVar literals (and their negations) occurring in f.
void collect_literals(const Formula& f, std::vector<Formula>& out);

struct SymbolSet {
  std::set<std::string> ints;
  std::set<std::string> bools;
  std::set<std::string> arrays;
  std::set<std::string> funcs;
};
void collect_symbols(const Formula& f, SymbolSet& out);
void collect_symbols(const Term& t, SymbolSet& out);

// Number of Select/FunApp nodes inside t (t itself excluded).
std::size_t nested_select_depth(const Term& t);

}  // namespace mga
