#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "mga/integer.hpp"
#include "mga/model.hpp"
#include "mga/term.hpp"

namespace mga {

// Closed integer interval; nullopt endpoints are infinite.
struct Interval {
  std::optional<Int> lo;
  std::optional<Int> hi;

  static Interval top() { return {}; }
  static Interval point(const Int& v) { return {v, v}; }

  bool contains(const Int& v) const {
    return (!lo || *lo <= v) && (!hi || v <= *hi);
  }
  bool empty() const { return lo && hi && *lo > *hi; }
  bool pinned() const { return lo && hi && *lo == *hi; }
  Interval meet(const Interval& other) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// T_IC / T_AIC formula: leaf term -> interval. Absent keys are unbounded.
class IntervalMap {
 public:
  using Entries = std::map<Term, Interval>;

  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Interval* find(const Term& leaf) const;
  Interval get(const Term& leaf) const;

  // Narrows the entry for `leaf`; throws EmptyIntersection.
  void restrict(const Term& leaf, const Interval& iv);
  void restrict_upper(const Term& leaf, const Int& hi) {
    restrict(leaf, {std::nullopt, hi});
  }
  void restrict_lower(const Term& leaf, const Int& lo) {
    restrict(leaf, {lo, std::nullopt});
  }

  friend bool operator==(const IntervalMap&, const IntervalMap&) = default;

 private:
  Entries entries_;
};

// Throws EmptyIntersection.
IntervalMap intersect(const IntervalMap& a, const IntervalMap& b);

// Leaves are evaluated under `asgn` (select keys through its functions).
bool contains(const IntervalMap& iv, const Model& asgn);

// Conjunction of (>= leaf lo) / (<= leaf hi) for finite endpoints.
Formula to_formula(const IntervalMap& iv);
// Disjunction of (< leaf lo) / (> leaf hi); equivalent to not to_formula.
Formula neg_to_formula(const IntervalMap& iv);

// {"leaf-text": [lo or "-inf", hi or "+inf"]}; integers outside int64 are
// written as decimal strings.
nlohmann::json to_json(const IntervalMap& iv);
nlohmann::json int_to_json(const Int& v);

}  // namespace mga
