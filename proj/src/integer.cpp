#include "mga/integer.hpp"

#include <limits>

#include "mga/errors.hpp"

namespace mga {

std::string to_string(const Int& v) { return v.str(); }

std::optional<Int> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  if (text.front() == '-') {
    neg = true;
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  Int v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    v *= 10;
    v += c - '0';
  }
  return neg ? Int(-v) : v;
}

Int floor_div(const Int& x, const Int& y) {
  if (y == 0) throw DivisorZero();
  Int q = x / y;  // truncates toward zero
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

Int ceil_div(const Int& x, const Int& y) {
  if (y == 0) throw DivisorZero();
  Int q = x / y;
  if ((x % y != 0) && ((x < 0) == (y < 0))) ++q;
  return q;
}

Int signed_floor_div(const Int& x, const Int& y) {
  if (y == 0) throw DivisorZero();
  return y > 0 ? floor_div(x, y) : ceil_div(x, y);
}

Int euclid_div(const Int& x, const Int& y) {
  if (y == 0) throw DivisorZero();
  return y > 0 ? floor_div(x, y) : ceil_div(x, y);
}

Int euclid_mod(const Int& x, const Int& y) {
  return x - y * euclid_div(x, y);
}

std::uint64_t low64(const Int& v) {
  Int mag = abs(v);
  Int mask = Int(std::numeric_limits<std::uint64_t>::max());
  auto low = static_cast<std::uint64_t>(mag & mask);
  return v < 0 ? ~low + 1 : low;
}

std::optional<std::int64_t> to_int64(const Int& v) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    return std::nullopt;
  return static_cast<std::int64_t>(v);
}

}  // namespace mga
