#include "mga/strengthen.hpp"

#include <algorithm>

#include "mga/errors.hpp"
#include "mga/smtlib.hpp"

namespace mga {

namespace {

void add_monomial(Polynomial& p, Monomial mono) {
  if (mono.coefficient == 0) return;
  for (auto it = p.monomials.begin(); it != p.monomials.end(); ++it) {
    if (it->factors == mono.factors) {
      it->coefficient += mono.coefficient;
      if (it->coefficient == 0) p.monomials.erase(it);
      return;
    }
  }
  p.monomials.push_back(std::move(mono));
}

void add_scaled(Polynomial& into, const Polynomial& p, const Int& scale) {
  into.constant += scale * p.constant;
  for (const auto& mono : p.monomials)
    add_monomial(into, {mono.coefficient * scale, mono.factors});
}

Term poly_term(const Polynomial& p) {
  std::vector<Term> parts;
  for (const auto& mono : p.monomials) parts.push_back(monomial_term(mono));
  if (p.constant != 0 || parts.empty()) parts.push_back(mk_int(p.constant));
  return mk_add(std::move(parts));
}

Polynomial normalize_product(std::span<const Term> factors) {
  Int coef = 1;
  std::vector<Term> kept;
  for (const auto& f : factors) {
    Polynomial p = normalize(f);
    if (p.monomials.empty()) {
      coef *= p.constant;
    } else if (p.monomials.size() == 1 && p.constant == 0) {
      coef *= p.monomials[0].coefficient;
      for (const auto& g : p.monomials[0].factors) kept.push_back(g);
    } else {
      kept.push_back(poly_term(p));
    }
  }
  Polynomial out;
  if (coef == 0) return out;
  if (kept.empty()) {
    out.constant = coef;
    return out;
  }
  std::sort(kept.begin(), kept.end());
  out.monomials.push_back({coef, std::move(kept)});
  return out;
}

int sign_of(const Int& v) { return v < 0 ? -1 : 1; }  // sign(0) = +1

class Strengthener {
 public:
  explicit Strengthener(const Model& m) : m_(m) {}

  void literal(const CanonicalLiteral& cl) {
    std::vector<Int> values;
    values.reserve(cl.monomials.size());
    Int total = 0;
    for (const auto& mono : cl.monomials) {
      values.push_back(eval_monomial(mono, m_));
      total += values.back();
    }
    Int slack = cl.bound - total;
    if (slack < 0)
      throw NegativeSlack("model violates literal (slack " + to_string(slack) +
                          ")");
    if (cl.monomials.size() == 1) {
      monomial(cl.monomials[0], cl.bound);
      return;
    }
    Int k = cl.monomials.size();
    for (std::size_t i = 0; i < cl.monomials.size(); ++i)
      monomial(cl.monomials[i], values[i] + portion(slack, k, Int(i + 1)));
  }

  IntervalMap take() { return std::move(out_); }

 private:
  // coefficient * prod(factors) <= c
  void monomial(const Monomial& mono, const Int& c) {
    const Int& a = mono.coefficient;
    if (a == 1 || a == -1) {
      product(a == 1 ? 1 : -1, mono.factors, c);
      return;
    }
    int s = sign_of(a);
    product(s, mono.factors, s * signed_floor_div(c, a));
  }

  // sign * prod(factors) <= c
  void product(int sign, const std::vector<Term>& factors, const Int& c) {
    if (factors.size() == 1) {
      factor(sign, factors[0], c);
      return;
    }
    // Fold the sign into the first factor: g_1 = sign * f_1.
    std::vector<Int> values;
    Int prod = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Int e = eval_int(factors[i], m_);
      if (i == 0) e *= sign;
      prod *= e;
      values.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      int sigma = sign_of(values[i]) * (i == 0 ? sign : 1);
      Int mag = abs(values[i]);
      if (prod >= 0) {
        // 0 <= sign(e_i) * g_i <= |e_i|
        factor(sigma, factors[i], mag);
        factor(-sigma, factors[i], Int(0));
      } else {
        // sign(e_i) * g_i >= |e_i|
        factor(-sigma, factors[i], Int(-mag));
      }
    }
  }

  // sign * f <= c
  void factor(int sign, const Term& f, const Int& c) {
    if (f.is_leaf()) {
      if (sign > 0)
        out_.restrict_upper(f, c);
      else
        out_.restrict_lower(f, -c);
      return;
    }
    Polynomial p = normalize(f);
    CanonicalLiteral cl;
    cl.bound = c - sign * p.constant;
    for (auto& mono : p.monomials)
      cl.monomials.push_back({mono.coefficient * sign, std::move(mono.factors)});
    if (!cl.monomials.empty()) literal(cl);
  }

  const Model& m_;
  IntervalMap out_;
};

}  // namespace

Polynomial normalize(const Term& t) {
  Polynomial p;
  switch (t.kind()) {
    case TermKind::IntConst:
      p.constant = t.value();
      return p;
    case TermKind::IntVar:
    case TermKind::Select:
    case TermKind::FunApp:
      p.monomials.push_back({1, {t}});
      return p;
    case TermKind::Add:
      for (const auto& a : t.args()) add_scaled(p, normalize(a), 1);
      return p;
    case TermKind::Sub:
      add_scaled(p, normalize(t.arg(0)), 1);
      add_scaled(p, normalize(t.arg(1)), -1);
      return p;
    case TermKind::Mul:
      return normalize_product(t.args());
    default:
      throw UnsupportedFeature("cannot normalize term " + print_term(t));
  }
}

Term monomial_term(const Monomial& mono) {
  if (mono.coefficient == 1 && mono.factors.size() == 1) return mono.factors[0];
  std::vector<Term> parts;
  if (mono.coefficient != 1) parts.push_back(mk_int(mono.coefficient));
  for (const auto& f : mono.factors) parts.push_back(f);
  return mk_mul(std::move(parts));
}

Int eval_monomial(const Monomial& mono, const Model& m) {
  Int v = mono.coefficient;
  for (const auto& f : mono.factors) v *= eval_int(f, m);
  return v;
}

namespace {

// lhs - rhs <= bound - const
CanonicalLiteral difference_le(const Term& lhs, const Term& rhs,
                               const Int& bound) {
  Polynomial p;
  add_scaled(p, normalize(lhs), 1);
  add_scaled(p, normalize(rhs), -1);
  return {std::move(p.monomials), bound - p.constant};
}

}  // namespace

std::vector<CanonicalLiteral> canonicalize(const Formula& lit, const Model& m) {
  const Formula* atom = &lit;
  bool negated = false;
  if (lit.kind() == FormulaKind::Not) {
    atom = &lit.arg(0);
    negated = true;
  }
  if (atom->kind() != FormulaKind::Atom || atom->lhs().sort() != Sort::Int)
    throw UnsupportedFeature("not an integer literal: " + print_formula(lit));
  Rel rel = negated ? negate(atom->rel()) : atom->rel();
  const Term& l = atom->lhs();
  const Term& r = atom->rhs();
  std::vector<CanonicalLiteral> out;
  switch (rel) {
    case Rel::Le: out.push_back(difference_le(l, r, 0)); break;
    case Rel::Lt: out.push_back(difference_le(l, r, -1)); break;
    case Rel::Ge: out.push_back(difference_le(r, l, 0)); break;
    case Rel::Gt: out.push_back(difference_le(r, l, -1)); break;
    case Rel::Eq:
      out.push_back(difference_le(l, r, 0));
      out.push_back(difference_le(r, l, 0));
      break;
    case Rel::Ne:
      if (eval_int(l, m) < eval_int(r, m))
        out.push_back(difference_le(l, r, -1));
      else
        out.push_back(difference_le(r, l, -1));
      break;
  }
  std::erase_if(out, [](const CanonicalLiteral& cl) {
    return cl.monomials.empty();
  });
  return out;
}

Int portion(const Int& n, const Int& k, const Int& i) {
  if (n < 0) throw NegativeSlack("negative slack " + to_string(n));
  if (k < 1 || i < 1 || i > k) throw std::invalid_argument("portion index");
  Int base = n / k;
  return i <= n % k ? base + 1 : base;
}

IntervalMap strengthen_literal(const CanonicalLiteral& cl, const Model& m) {
  Strengthener s(m);
  s.literal(cl);
  return s.take();
}

IntervalMap pmga_mia(const ProductTerm& p, const Model& m) {
  IntervalMap out;
  for (const auto& lit : p.literals) {
    const Formula& atom = lit.kind() == FormulaKind::Not ? lit.arg(0) : lit;
    if (atom.kind() == FormulaKind::BoolVar) continue;
    for (const auto& cl : canonicalize(lit, m))
      out = intersect(out, strengthen_literal(cl, m));
  }
  return out;
}

}  // namespace mga
