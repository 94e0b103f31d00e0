#include "mga/implicant.hpp"

#include <stdexcept>

#include "mga/errors.hpp"
#include "mga/smtlib.hpp"

namespace mga {

namespace {

void slice(const Formula& f, const Model& m, Rng& rng,
           std::vector<Formula>& out) {
  switch (f.kind()) {
    case FormulaKind::True:
      return;
    case FormulaKind::And:
      for (const auto& a : f.args()) slice(a, m, rng, out);
      return;
    case FormulaKind::Or: {
      std::vector<const Formula*> sat;
      for (const auto& a : f.args())
        if (eval_formula(a, m)) sat.push_back(&a);
      if (sat.empty()) throw NotAModel("no satisfied disjunct");
      std::uniform_int_distribution<std::size_t> pick(0, sat.size() - 1);
      slice(*sat[pick(rng)], m, rng, out);
      return;
    }
    default:
      if (!f.is_literal())
        throw std::invalid_argument("implicant input is not in NNF: " +
                                    print_formula(f));
      out.push_back(f);
  }
}

}  // namespace

ProductTerm compute_implicant(const Formula& nnf, const Model& m, Rng& rng) {
  if (!eval_formula(nnf, m))
    throw NotAModel("model does not satisfy the formula");
  ProductTerm p;
  slice(nnf, m, rng, p.literals);
  return p;
}

}  // namespace mga
