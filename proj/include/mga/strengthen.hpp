#pragma once

#include <vector>

#include "mga/implicant.hpp"
#include "mga/integer.hpp"
#include "mga/interval.hpp"
#include "mga/model.hpp"
#include "mga/term.hpp"

namespace mga {

// coefficient * factors[0] * ... ; each factor is a leaf (variable, select,
// function application) or a compound sum that could not be distributed.
struct Monomial {
  Int coefficient;
  std::vector<Term> factors;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Polynomial {
  std::vector<Monomial> monomials;  // first-occurrence order, no zero terms
  Int constant = 0;
};

// sum(monomials) <= bound
struct CanonicalLiteral {
  std::vector<Monomial> monomials;
  Int bound;

  friend bool operator==(const CanonicalLiteral&,
                         const CanonicalLiteral&) = default;
};

// Collects like monomials; products of sums stay as compound factors.
Polynomial normalize(const Term& t);

Term monomial_term(const Monomial& mono);
Int eval_monomial(const Monomial& mono, const Model& m);

// Rewrites an integer literal m satisfies into "<=" form. Equalities give
// both directions, a disequality the strict direction m satisfies. A literal
// whose variables cancel out yields nothing.
std::vector<CanonicalLiteral> canonicalize(const Formula& lit, const Model& m);

// floor(n/k) plus one for the first (n mod k) children; i is 1-based.
Int portion(const Int& n, const Int& k, const Int& i);

// Leaf bounds such that every point inside them satisfies cl and m lies
// inside every bound. Throws NegativeSlack if m violates cl.
IntervalMap strengthen_literal(const CanonicalLiteral& cl, const Model& m);

// Intersection of the strengthened literals of p. Boolean literals are
// skipped (they are pinned by the sampler).
IntervalMap pmga_mia(const ProductTerm& p, const Model& m);

}  // namespace mga
