#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "mga/integer.hpp"
#include "mga/term.hpp"

namespace mga {

// A total int->int function with finitely many points differing from a
// default value. Exceptions equal to the default are never stored, so
// structural equality is extensional equality.
class FuncValue {
 public:
  FuncValue() = default;
  explicit FuncValue(Int default_value) : default_(std::move(default_value)) {}

  const Int& default_value() const { return default_; }
  const std::map<Int, Int>& exceptions() const { return exceptions_; }

  const Int& apply(const Int& x) const;
  void set(const Int& x, const Int& v);
  FuncValue store(const Int& x, const Int& v) const;

  friend bool operator==(const FuncValue&, const FuncValue&) = default;

 private:
  Int default_ = 0;
  std::map<Int, Int> exceptions_;
};

// An index where the two functions differ, if any.
std::optional<Int> find_witness(const FuncValue& a, const FuncValue& b);

struct Model {
  std::map<std::string, Int> ints;
  std::map<std::string, bool> bools;
  // Array variables and unary uninterpreted functions share this map.
  std::map<std::string, FuncValue> funcs;

  friend bool operator==(const Model&, const Model&) = default;
};

using Value = std::variant<Int, FuncValue>;

Value eval_term(const Term& t, const Model& m);
Int eval_int(const Term& t, const Model& m);
FuncValue eval_array(const Term& t, const Model& m);
bool eval_formula(const Formula& f, const Model& m);

}  // namespace mga
