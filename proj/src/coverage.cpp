#include "mga/coverage.hpp"

#include <array>
#include <bit>
#include <cstring>

#include "mga/errors.hpp"

namespace mga {

std::uint64_t CoverageBitmap::total_bits() const {
  std::uint64_t n = 0;
  for (const auto& node : nodes) n += node.width;
  return n;
}

std::uint64_t CoverageBitmap::covered_bits() const {
  std::uint64_t n = 0;
  for (const auto& node : nodes) n += std::popcount(node.covered());
  return n;
}

CoverageLayout::CoverageLayout(const Formula& f) {
  add(f);
  ints_.resize(slots_.size());
  bools_.resize(slots_.size());
  funcs_.resize(slots_.size());
}

std::uint32_t CoverageLayout::add(const Formula& f) {
  auto id = static_cast<std::uint32_t>(slots_.size());
  slots_.push_back({false, {}, f, {}});
  std::vector<std::uint32_t> children;
  for (const auto& t : f.terms()) children.push_back(add(t));
  for (const auto& a : f.args()) children.push_back(add(a));
  slots_[id].children = std::move(children);
  return id;
}

std::uint32_t CoverageLayout::add(const Term& t) {
  auto id = static_cast<std::uint32_t>(slots_.size());
  slots_.push_back({true, t, {}, {}});
  std::vector<std::uint32_t> children;
  if (t.kind() == TermKind::Ite) children.push_back(add(t.cond()));
  for (const auto& a : t.args()) children.push_back(add(a));
  slots_[id].children = std::move(children);
  return id;
}

CoverageBitmap CoverageLayout::empty_bitmap() const {
  CoverageBitmap bm;
  bm.nodes.resize(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& s = slots_[i];
    if (!s.is_term)
      bm.nodes[i].width = 1;
    else if (s.term.sort() == Sort::Int)
      bm.nodes[i].width = 64;
  }
  return bm;
}

namespace {

bool compare(Rel rel, const Int& a, const Int& b) {
  switch (rel) {
    case Rel::Lt: return a < b;
    case Rel::Le: return a <= b;
    case Rel::Gt: return a > b;
    case Rel::Ge: return a >= b;
    case Rel::Eq: return a == b;
    case Rel::Ne: return a != b;
  }
  return false;
}

}  // namespace

void CoverageLayout::eval_slot(std::size_t i, const Model& m) {
  const Slot& s = slots_[i];
  const auto& ch = s.children;
  if (s.is_term) {
    const Term& t = s.term;
    switch (t.kind()) {
      case TermKind::IntConst: ints_[i] = t.value(); return;
      case TermKind::IntVar: {
        auto it = m.ints.find(t.name());
        if (it == m.ints.end()) throw UnassignedSymbol(t.name());
        ints_[i] = it->second;
        return;
      }
      case TermKind::ArrayVar: {
        auto it = m.funcs.find(t.name());
        if (it == m.funcs.end()) throw UnassignedSymbol(t.name());
        funcs_[i] = it->second;
        return;
      }
      case TermKind::Add: {
        Int v = 0;
        for (auto c : ch) v += ints_[c];
        ints_[i] = std::move(v);
        return;
      }
      case TermKind::Sub: ints_[i] = ints_[ch[0]] - ints_[ch[1]]; return;
      case TermKind::Mul: {
        Int v = 1;
        for (auto c : ch) v *= ints_[c];
        ints_[i] = std::move(v);
        return;
      }
      case TermKind::Div:
      case TermKind::Mod: {
        const Int& y = ints_[ch[1]];
        if (y == 0)
          ints_[i] = 0;
        else
          ints_[i] = t.kind() == TermKind::Div ? euclid_div(ints_[ch[0]], y)
                                                : euclid_mod(ints_[ch[0]], y);
        return;
      }
      case TermKind::Select: ints_[i] = funcs_[ch[0]].apply(ints_[ch[1]]); return;
      case TermKind::FunApp: {
        auto it = m.funcs.find(t.name());
        if (it == m.funcs.end()) throw UnassignedSymbol(t.name());
        ints_[i] = it->second.apply(ints_[ch[0]]);
        return;
      }
      case TermKind::Store:
        funcs_[i] = funcs_[ch[0]].store(ints_[ch[1]], ints_[ch[2]]);
        return;
      case TermKind::Ite: {
        auto pick = bools_[ch[0]] ? ch[1] : ch[2];
        if (t.sort() == Sort::Array)
          funcs_[i] = funcs_[pick];
        else
          ints_[i] = ints_[pick];
        return;
      }
    }
    return;
  }
  const Formula& f = s.formula;
  auto equal = [&](std::uint32_t a, std::uint32_t b) {
    return slots_[a].term.sort() == Sort::Array ? funcs_[a] == funcs_[b]
                                                : ints_[a] == ints_[b];
  };
  bool v = false;
  switch (f.kind()) {
    case FormulaKind::True: v = true; break;
    case FormulaKind::False: v = false; break;
    case FormulaKind::BoolVar: {
      auto it = m.bools.find(f.name());
      if (it == m.bools.end()) throw UnassignedSymbol(f.name());
      v = it->second;
      break;
    }
    case FormulaKind::Atom:
      if (slots_[ch[0]].term.sort() == Sort::Array)
        v = equal(ch[0], ch[1]) == (f.rel() == Rel::Eq);
      else
        v = compare(f.rel(), ints_[ch[0]], ints_[ch[1]]);
      break;
    case FormulaKind::Not: v = !bools_[ch[0]]; break;
    case FormulaKind::And:
      v = true;
      for (auto c : ch) v = v && bools_[c];
      break;
    case FormulaKind::Or:
      for (auto c : ch) v = v || bools_[c];
      break;
    case FormulaKind::Implies: v = !bools_[ch[0]] || bools_[ch[1]]; break;
    case FormulaKind::Iff: v = bools_[ch[0]] == bools_[ch[1]]; break;
    case FormulaKind::Xor: v = bools_[ch[0]] != bools_[ch[1]]; break;
    case FormulaKind::Ite: v = bools_[ch[0]] ? bools_[ch[1]] : bools_[ch[2]]; break;
    case FormulaKind::Distinct:
      v = true;
      for (std::size_t a = 0; a < ch.size() && v; ++a)
        for (std::size_t b = a + 1; b < ch.size() && v; ++b)
          if (equal(ch[a], ch[b])) v = false;
      break;
  }
  bools_[i] = v;
}

void CoverageLayout::record(CoverageBitmap& bm, const Model& s) {
  if (bm.nodes.empty() && !slots_.empty()) bm = empty_bitmap();
  if (bm.nodes.size() != slots_.size())
    throw BitmapMismatch("bitmap has " + std::to_string(bm.nodes.size()) +
                         " nodes, formula has " + std::to_string(slots_.size()));
  for (std::size_t i = slots_.size(); i-- > 0;) eval_slot(i, s);
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    CoverageNode& node = bm.nodes[i];
    if (node.width == 0) continue;
    std::uint64_t bits = slots_[i].is_term ? low64(ints_[i]) : std::uint64_t(bools_[i]);
    bits &= node.mask();
    node.seen_one |= bits;
    node.seen_zero |= ~bits & node.mask();
  }
}

void record_sample(CoverageBitmap& bm, const Formula& f, const Model& s) {
  CoverageLayout layout(f);
  layout.record(bm, s);
}

double raw_coverage(const CoverageBitmap& bm) {
  std::uint64_t total = bm.total_bits();
  if (total == 0) return 0.0;
  return static_cast<double>(bm.covered_bits()) / static_cast<double>(total);
}

namespace {

void check_layout(const CoverageBitmap& a, const CoverageBitmap& b) {
  if (a.nodes.size() != b.nodes.size())
    throw BitmapMismatch("node counts differ: " + std::to_string(a.nodes.size()) +
                         " vs " + std::to_string(b.nodes.size()));
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    if (a.nodes[i].width != b.nodes[i].width)
      throw BitmapMismatch("node " + std::to_string(i) + " widths differ");
}

}  // namespace

double normalized_coverage(const CoverageBitmap& mine,
                           const std::vector<CoverageBitmap>& others) {
  std::vector<CoverageBitmap> all{mine};
  all.insert(all.end(), others.begin(), others.end());
  std::uint64_t denom = union_covered(all).covered_bits();
  if (denom == 0) return 1.0;
  return static_cast<double>(mine.covered_bits()) / static_cast<double>(denom);
}

void merge_into(CoverageBitmap& into, const CoverageBitmap& other) {
  if (into.nodes.empty()) {
    into = other;
    return;
  }
  check_layout(into, other);
  for (std::size_t i = 0; i < into.nodes.size(); ++i) {
    into.nodes[i].seen_zero |= other.nodes[i].seen_zero;
    into.nodes[i].seen_one |= other.nodes[i].seen_one;
  }
}

CoverageBitmap union_covered(const std::vector<CoverageBitmap>& bms) {
  CoverageBitmap out;
  if (bms.empty()) return out;
  out.nodes.resize(bms[0].nodes.size());
  for (std::size_t i = 0; i < out.nodes.size(); ++i) out.nodes[i].width = bms[0].nodes[i].width;
  for (const auto& bm : bms) {
    check_layout(out, bm);
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
      out.nodes[i].seen_zero |= bm.nodes[i].covered();
      out.nodes[i].seen_one |= bm.nodes[i].covered();
    }
  }
  return out;
}

namespace {

constexpr char kMagic[7] = {'M', 'G', 'A', 'C', 'O', 'V', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> b;
  in.read(reinterpret_cast<char*>(b.data()), 8);
  if (!in) throw BitmapMismatch("truncated coverage bitmap");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void write_bitmap(std::ostream& out, const CoverageBitmap& bm) {
  out.write(kMagic, sizeof kMagic);
  put_u64(out, bm.nodes.size());
  for (const auto& n : bm.nodes) {
    out.put(static_cast<char>(n.width));
    put_u64(out, n.seen_zero);
    put_u64(out, n.seen_one);
  }
}

CoverageBitmap read_bitmap(std::istream& in) {
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw BitmapMismatch("not a coverage bitmap (bad magic)");
  std::uint64_t count = get_u64(in);
  CoverageBitmap bm;
  for (std::uint64_t i = 0; i < count; ++i) {
    int w = in.get();
    if (!in) throw BitmapMismatch("truncated coverage bitmap");
    if (w != 0 && w != 1 && w != 64) throw BitmapMismatch("invalid node width");
    CoverageNode n;
    n.width = static_cast<std::uint8_t>(w);
    n.seen_zero = get_u64(in);
    n.seen_one = get_u64(in);
    bm.nodes.push_back(n);
  }
  return bm;
}

}  // namespace mga
