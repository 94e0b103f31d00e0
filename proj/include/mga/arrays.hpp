#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mga/implicant.hpp"
#include "mga/interval.hpp"
#include "mga/model.hpp"
#include "mga/term.hpp"

namespace mga {

// Produces "<prefix>!<n>" names that avoid a reserved set.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> reserved)
      : reserved_(std::move(reserved)) {}

  void reserve(const std::string& name) { reserved_.insert(name); }
  std::string fresh(const std::string& prefix);

 private:
  std::set<std::string> reserved_;
  std::size_t next_ = 0;
};

// Injective map between select / function-application terms and the fresh
// integer variables standing for them.
struct GroundingTable {
  std::map<Term, std::string> to_var;
  std::map<std::string, Term> to_term;
  // Int variables of the grounded product that are not grounding variables.
  std::set<std::string> plain_vars;
};

// Index configuration of the seed, frozen as extra literals.
struct AliasingLiterals {
  struct Equality {
    Term index_a, index_b;
    Term select_a, select_b;
  };
  std::vector<Equality> equalities;
  std::vector<std::pair<Term, Term>> disequalities;

  std::vector<Formula> literals() const;
  bool empty() const { return equalities.empty() && disequalities.empty(); }
};

// Result of rewriting array (dis)equalities: the new product term, the seed
// extended over the fresh symbols, and the substitutions applied to array
// variables in creation order.
struct ArrayRewrite {
  ProductTerm product;
  Model model;
  std::vector<std::pair<std::string, Term>> substitutions;
  std::set<std::string> fresh_ints;
  std::set<std::string> fresh_arrays;
};

// Replaces select(store(s,i,e),j) by the case m selects: {i=j, l[e]} or
// {i!=j, l[select(s,j)]}, repeating until no select-over-store remains.
ProductTerm eliminate_select_store(const ProductTerm& p, const Model& m);

// Array equalities become a shared fresh array c plus select constraints;
// disequalities become select(a1,w) != select(a2,w) at a witness index w
// taken from the model. Throws NoWitness.
ArrayRewrite rewrite_array_equalities(const ProductTerm& p, const Model& m,
                                      NameSupply& names);

AliasingLiterals build_aliasing(const ProductTerm& p, const Model& m);

struct Grounding {
  ProductTerm product;  // no array or function symbols left
  Model model;          // int/bool part of m plus v_t = m[t]
  GroundingTable table;
};

Grounding ground(const ProductTerm& p, const Model& m, NameSupply& names);
Term ground_term(const Term& t, const GroundingTable& gt);
Formula ground_formula(const Formula& f, const GroundingTable& gt);

// Throws UnknownGroundVar for keys that are neither grounding nor plain
// variables.
IntervalMap unground(const IntervalMap& iv, const GroundingTable& gt);

struct ArrayApproximation {
  IntervalMap intervals;
  AliasingLiterals aliasing;
  Model seed;  // extended over fresh symbols
  std::vector<std::pair<std::string, Term>> substitutions;
  std::set<std::string> fresh_ints;
  std::set<std::string> fresh_arrays;
  ProductTerm product;  // the T_MIA-reducible product that was strengthened
};

ArrayApproximation pmga_amia(const ProductTerm& p, const Model& m,
                             NameSupply& names);

}  // namespace mga
