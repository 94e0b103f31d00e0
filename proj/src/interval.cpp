#include "mga/interval.hpp"

#include "mga/errors.hpp"
#include "mga/smtlib.hpp"

namespace mga {

Interval Interval::meet(const Interval& other) const {
  Interval r = *this;
  if (other.lo && (!r.lo || *other.lo > *r.lo)) r.lo = other.lo;
  if (other.hi && (!r.hi || *other.hi < *r.hi)) r.hi = other.hi;
  return r;
}

const Interval* IntervalMap::find(const Term& leaf) const {
  auto it = entries_.find(leaf);
  return it == entries_.end() ? nullptr : &it->second;
}

Interval IntervalMap::get(const Term& leaf) const {
  const Interval* iv = find(leaf);
  return iv ? *iv : Interval::top();
}

void IntervalMap::restrict(const Term& leaf, const Interval& iv) {
  auto [it, inserted] = entries_.try_emplace(leaf, iv);
  if (!inserted) it->second = it->second.meet(iv);
  if (it->second.empty()) throw EmptyIntersection(print_term(leaf));
}

IntervalMap intersect(const IntervalMap& a, const IntervalMap& b) {
  IntervalMap r = a;
  for (const auto& [leaf, iv] : b.entries()) r.restrict(leaf, iv);
  return r;
}

bool contains(const IntervalMap& iv, const Model& asgn) {
  for (const auto& [leaf, range] : iv.entries())
    if (!range.contains(eval_int(leaf, asgn))) return false;
  return true;
}

Formula to_formula(const IntervalMap& iv) {
  std::vector<Formula> parts;
  for (const auto& [leaf, range] : iv.entries()) {
    if (range.lo) parts.push_back(mk_atom(Rel::Ge, leaf, mk_int(*range.lo)));
    if (range.hi) parts.push_back(mk_atom(Rel::Le, leaf, mk_int(*range.hi)));
  }
  return mk_and(std::move(parts));
}

Formula neg_to_formula(const IntervalMap& iv) {
  std::vector<Formula> parts;
  for (const auto& [leaf, range] : iv.entries()) {
    if (range.lo) parts.push_back(mk_atom(Rel::Lt, leaf, mk_int(*range.lo)));
    if (range.hi) parts.push_back(mk_atom(Rel::Gt, leaf, mk_int(*range.hi)));
  }
  return mk_or(std::move(parts));
}

nlohmann::json int_to_json(const Int& v) {
  if (auto small = to_int64(v)) return *small;
  return to_string(v);
}

nlohmann::json to_json(const IntervalMap& iv) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [leaf, range] : iv.entries()) {
    out[print_term(leaf)] = nlohmann::json::array(
        {range.lo ? int_to_json(*range.lo) : nlohmann::json("-inf"),
         range.hi ? int_to_json(*range.hi) : nlohmann::json("+inf")});
  }
  return out;
}

}  // namespace mga
