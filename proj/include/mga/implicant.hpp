#pragma once

#include <random>
#include <vector>

#include "mga/model.hpp"
#include "mga/term.hpp"

namespace mga {

using Rng = std::mt19937_64;

// A conjunction of literals (Atom, BoolVar, or their negations).
struct ProductTerm {
  std::vector<Formula> literals;

  Formula to_formula() const { return mk_and(literals); }
};

// m-implicant of an NNF formula: conjunctions keep every child, each
// disjunction keeps one child chosen uniformly among those m satisfies.
// Throws NotAModel when m does not satisfy f.
ProductTerm compute_implicant(const Formula& nnf, const Model& m, Rng& rng);

}  // namespace mga
