#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "mga/model.hpp"
#include "mga/term.hpp"

namespace mga {

struct CoverageNode {
  std::uint8_t width = 0;  // 1 for Bool, 64 for Int, 0 for arrays/functions
  std::uint64_t seen_zero = 0;
  std::uint64_t seen_one = 0;

  std::uint64_t mask() const {
    return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
  }
  std::uint64_t covered() const { return seen_zero & seen_one & mask(); }

  friend bool operator==(const CoverageNode&, const CoverageNode&) = default;
};

// Indexed by node id (pre-order over every syntactic occurrence).
struct CoverageBitmap {
  std::vector<CoverageNode> nodes;

  std::uint64_t total_bits() const;
  std::uint64_t covered_bits() const;

  friend bool operator==(const CoverageBitmap&, const CoverageBitmap&) = default;
};

// Pre-order numbering of a formula's nodes, evaluated bottom-up once per
// sample.
class CoverageLayout {
 public:
  explicit CoverageLayout(const Formula& f);

  std::size_t size() const { return slots_.size(); }
  CoverageBitmap empty_bitmap() const;
  // Throws UnassignedSymbol, BitmapMismatch.
  void record(CoverageBitmap& bm, const Model& s);

 private:
  struct Slot {
    bool is_term;
    Term term;
    Formula formula;
    std::vector<std::uint32_t> children;
  };
  std::uint32_t add(const Formula& f);
  std::uint32_t add(const Term& t);
  void eval_slot(std::size_t i, const Model& s);

  std::vector<Slot> slots_;
  std::vector<Int> ints_;
  std::vector<char> bools_;
  std::vector<FuncValue> funcs_;
};

// Convenience form; an empty bitmap is initialised for f.
void record_sample(CoverageBitmap& bm, const Formula& f, const Model& s);

double raw_coverage(const CoverageBitmap& bm);

// covered(mine) / covered(mine | others...), with 0/0 = 1. Throws
// BitmapMismatch when the layouts differ.
double normalized_coverage(const CoverageBitmap& mine,
                           const std::vector<CoverageBitmap>& others);

// Pools the observations of two bitmaps over the same layout.
void merge_into(CoverageBitmap& into, const CoverageBitmap& other);

// Bits covered by at least one input, stored as seen_zero = seen_one.
CoverageBitmap union_covered(const std::vector<CoverageBitmap>& bms);

// "MGACOV1", u64 node count, then per node u8 width, u64 seen_zero,
// u64 seen_one; all little-endian.
void write_bitmap(std::ostream& out, const CoverageBitmap& bm);
CoverageBitmap read_bitmap(std::istream& in);

}  // namespace mga
