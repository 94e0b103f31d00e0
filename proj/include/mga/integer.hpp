#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mga {

// SMT-LIB integers are unbounded.
using Int = boost::multiprecision::cpp_int;

std::string to_string(const Int& v);

// Parses an optionally '-'-prefixed decimal numeral; nullopt on malformed input.
std::optional<Int> parse_int(std::string_view text);

// Floor division for y > 0, ceiling division for y < 0. Throws DivisorZero.
Int signed_floor_div(const Int& x, const Int& y);

Int floor_div(const Int& x, const Int& y);
Int ceil_div(const Int& x, const Int& y);

// Euclidean div/mod as defined by SMT-LIB (remainder always non-negative).
Int euclid_div(const Int& x, const Int& y);
Int euclid_mod(const Int& x, const Int& y);

// Lower 64 bits of the two's-complement encoding.
std::uint64_t low64(const Int& v);

std::optional<std::int64_t> to_int64(const Int& v);

}  // namespace mga
