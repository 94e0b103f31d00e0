#include "mga/sampler.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/random/uniform_int_distribution.hpp>

#include "mga/errors.hpp"
#include "mga/json_io.hpp"
#include "mga/strengthen.hpp"
#include "mga/transform.hpp"

namespace mga {

using Clock = std::chrono::steady_clock;

void SamplerConfig::validate() const {
  if (!(total_time_limit > 0)) throw std::invalid_argument("time limit must be positive");
  if (!(epoch_time_limit > 0))
    throw std::invalid_argument("epoch time limit must be positive");
  if (rounds == 0) throw std::invalid_argument("rounds must be positive");
  if (samples_per_round == 0)
    throw std::invalid_argument("samples per round must be positive");
  if (!(unique_rate_threshold >= 0 && unique_rate_threshold <= 1))
    throw std::invalid_argument("unique rate threshold must lie in [0, 1]");
  if (random_bound < 0) throw std::invalid_argument("random bound must be non-negative");
  if (unbounded_width < 0)
    throw std::invalid_argument("unbounded width must be non-negative");
  if (exact_dedup_cap == 0) throw std::invalid_argument("dedup cap must be positive");
}

const char* strategy_name(SamplerConfig::Strategy s) {
  return s == SamplerConfig::Strategy::Random ? "random" : "blocking";
}

Problem make_problem(const ParsedProblem& parsed) {
  Problem p;
  p.declarations = parsed.declarations;
  p.assertion = parsed.assertion;
  p.nnf = to_nnf(preprocess(parsed.assertion));
  for (const auto& d : p.declarations) {
    if (d.kind == DeclKind::Int) p.int_vars.push_back(d.name);
    if (d.kind == DeclKind::Array || d.kind == DeclKind::Function) p.arrays = true;
  }
  p.arrays = p.arrays || has_array_symbols(p.nnf);
  return p;
}

Sample make_sample(const Model& full, const std::vector<Declaration>& decls) {
  Sample s;
  for (const auto& d : decls) {
    switch (d.kind) {
      case DeclKind::Int:
        if (auto it = full.ints.find(d.name); it != full.ints.end())
          s.model.ints.emplace(d.name, it->second);
        break;
      case DeclKind::Bool:
        if (auto it = full.bools.find(d.name); it != full.bools.end())
          s.model.bools.emplace(d.name, it->second);
        break;
      case DeclKind::Array:
      case DeclKind::Function:
        if (auto it = full.funcs.find(d.name); it != full.funcs.end())
          s.model.funcs.emplace(d.name, it->second);
        break;
    }
  }
  s.canonical = model_to_json(s.model, decls).dump();
  return s;
}

// ---------------------------------------------------------------------------

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // final avalanche (splitmix64)
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

namespace {

constexpr std::size_t kBloomWords = std::size_t{1} << 22;  // 2^28 bits
constexpr int kBloomProbes = 7;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

DedupSet::DedupSet(std::size_t exact_cap) : cap_(exact_cap) {}

bool DedupSet::insert(const std::string& canonical) {
  std::uint64_t h = stable_hash(canonical);
  if (exact_.count(h)) return false;
  if (bloom_.empty()) {
    exact_.insert(h);
    if (exact_.size() >= cap_) bloom_.assign(kBloomWords, 0);
    ++count_;
    return true;
  }
  std::uint64_t h2 = mix(h) | 1;
  const std::uint64_t bits = kBloomWords * 64;
  bool present = true;
  for (int i = 0; i < kBloomProbes; ++i) {
    std::uint64_t b = (h + static_cast<std::uint64_t>(i) * h2) % bits;
    std::uint64_t& word = bloom_[b / 64];
    std::uint64_t bit = std::uint64_t{1} << (b % 64);
    if (!(word & bit)) {
      present = false;
      word |= bit;
    }
  }
  if (present) return false;
  ++count_;
  return true;
}

nlohmann::json RunStats::to_json() const {
  nlohmann::json j{
      {"epochs", epochs},
      {"solver_calls", solver_calls},
      {"maxsmt_degradations", maxsmt_degradations},
      {"unique_samples", unique_samples},
      {"duplicates", duplicates},
      {"draws", draws},
      {"clashes", clashes},
      {"rounds", rounds},
      {"blocking_resets", blocking_resets},
      {"dedup", probabilistic_dedup ? "probabilistic" : "exact"},
      {"stop_reason", stop_reason},
      {"seconds",
       {{"seed", seed_seconds},
        {"approximate", approximate_seconds},
        {"sample", sample_seconds},
        {"total", total_seconds}}},
  };
  j["raw_coverage"] = raw_coverage ? nlohmann::json(*raw_coverage) : nlohmann::json();
  return j;
}

// ---------------------------------------------------------------------------

Int uniform_int(const Int& lo, const Int& hi, Rng& rng) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  Int span = hi - lo;
  if (span <= Int(std::numeric_limits<std::uint64_t>::max())) {
    boost::random::uniform_int_distribution<std::uint64_t> d(
        0, span.convert_to<std::uint64_t>());
    return lo + Int(d(rng));
  }
  boost::random::uniform_int_distribution<Int> d(0, span);
  return lo + d(rng);
}

Int draw_from(const Interval& iv, const Int& center, const Int& width, Rng& rng) {
  Int lo = iv.lo ? *iv.lo : center - width;
  Int hi = iv.hi ? *iv.hi : center + width;
  // A center outside a half-bounded interval still needs a non-empty range.
  if (!iv.lo && lo > hi) lo = hi - width;
  if (!iv.hi && hi < lo) hi = lo + width;
  return uniform_int(lo, hi, rng);
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void raise(const SolverVerdict& v) {
  if (v.status == SolverVerdict::Status::Unsat) throw Unsat();
  throw SolverError(v.reason.empty() ? "solver failed" : v.reason);
}

SolverRequest base_request(const Problem& p) {
  SolverRequest req;
  req.declarations = p.declarations;
  req.hard.push_back(p.assertion);
  return req;
}

}  // namespace

Model get_seed_random(const Problem& p, Solver& solver, Rng& rng,
                      const SamplerConfig& cfg, RunStats& stats) {
  SolverRequest req = base_request(p);
  for (const auto& v : p.int_vars)
    req.soft.emplace_back(
        mk_atom(Rel::Eq, mk_int_var(v), mk_int(uniform_int(-cfg.random_bound, cfg.random_bound, rng))),
        Int(1));
  SolverVerdict verdict;
  std::size_t before = solver.calls();
  try {
    verdict = solver.max_solve(req);
  } catch (const UnsupportedSoft&) {
    ++stats.maxsmt_degradations;
    verdict = solver.solve(req);
  }
  stats.solver_calls += solver.calls() - before;
  if (!verdict.sat()) raise(verdict);
  return verdict.model;
}

Model get_seed_blocking(const Problem& p, Solver& solver,
                        std::vector<IntervalMap>& blocked, RunStats& stats,
                        bool* reset) {
  if (reset) *reset = false;
  std::size_t before = solver.calls();
  SolverRequest req = base_request(p);
  for (const auto& iv : blocked) req.hard.push_back(neg_to_formula(iv));
  SolverVerdict verdict = solver.solve(req);
  if (verdict.status == SolverVerdict::Status::Unsat && !blocked.empty()) {
    blocked.clear();
    ++stats.blocking_resets;
    if (reset) *reset = true;
    verdict = solver.solve(base_request(p));
  }
  stats.solver_calls += solver.calls() - before;
  if (!verdict.sat()) raise(verdict);
  return verdict.model;
}

std::optional<IntervalMap> blocking_view(const IntervalMap& iv,
                                         const std::vector<Declaration>& decls) {
  std::set<std::string> known;
  for (const auto& d : decls) known.insert(d.name);
  IntervalMap out;
  for (const auto& [leaf, range] : iv.entries()) {
    SymbolSet syms;
    collect_symbols(leaf, syms);
    bool ok = true;
    for (const auto* set : {&syms.ints, &syms.bools, &syms.arrays, &syms.funcs})
      for (const auto& s : *set) ok = ok && known.count(s);
    if (ok) out.restrict(leaf, range);
  }
  if (out.empty() && !iv.empty()) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------

Model sample_intervals(const IntervalMap& iv, const Model& seed,
                       const SamplerConfig& cfg, Rng& rng) {
  Model s = seed;
  for (const auto& [leaf, range] : iv.entries()) {
    if (leaf.kind() != TermKind::IntVar)
      throw std::invalid_argument("interval key is not an int variable: " +
                                  print_term(leaf));
    Int& slot = s.ints[leaf.name()];
    slot = draw_from(range, slot, cfg.unbounded_width, rng);
  }
  return s;
}

namespace {

// Partial array contents plus on-demand completion.
class SlotFiller {
 public:
  SlotFiller(const Model& seed, Model& work, const SamplerConfig& cfg, Rng& rng)
      : seed_(seed), work_(work), cfg_(cfg), rng_(rng) {}

  using Slots = std::map<std::string, std::map<Int, Int>>;

  Int eval(const Term& t) {
    switch (t.kind()) {
      case TermKind::IntConst: return t.value();
      case TermKind::IntVar: {
        auto it = work_.ints.find(t.name());
        if (it != work_.ints.end()) return it->second;
        Int v = uniform_int(-cfg_.unbounded_width, cfg_.unbounded_width, rng_);
        work_.ints[t.name()] = v;
        return v;
      }
      case TermKind::Add: {
        Int s = 0;
        for (const auto& a : t.args()) s += eval(a);
        return s;
      }
      case TermKind::Sub: return eval(t.arg(0)) - eval(t.arg(1));
      case TermKind::Mul: {
        Int s = 1;
        for (const auto& a : t.args()) s *= eval(a);
        return s;
      }
      case TermKind::Select:
      case TermKind::FunApp: {
        auto [sym, idx] = locate(t);
        if (auto* v = get(sym, idx)) return *v;
        Int center = seed_func(sym).apply(idx);
        Int v = uniform_int(center - cfg_.unbounded_width, center + cfg_.unbounded_width, rng_);
        slots_[sym][idx] = v;
        return v;
      }
      default:
        throw std::invalid_argument("unexpected term in array sample: " + print_term(t));
    }
  }

  std::pair<std::string, Int> locate(const Term& t) {
    if (t.kind() == TermKind::Select) {
      if (t.arg(0).kind() != TermKind::ArrayVar)
        throw std::invalid_argument("select over a non-variable array: " + print_term(t));
      return {t.arg(0).name(), eval(t.arg(1))};
    }
    return {t.name(), eval(t.arg(0))};
  }

  const Int* get(const std::string& sym, const Int& idx) const {
    auto it = slots_.find(sym);
    if (it == slots_.end()) return nullptr;
    auto jt = it->second.find(idx);
    return jt == it->second.end() ? nullptr : &jt->second;
  }

  void set(const std::string& sym, const Int& idx, const Int& v) { slots_[sym][idx] = v; }

  const Slots& slots() const { return slots_; }

 private:
  const FuncValue& seed_func(const std::string& sym) {
    auto it = seed_.funcs.find(sym);
    if (it == seed_.funcs.end()) throw UnassignedSymbol(sym);
    return it->second;
  }

  const Model& seed_;
  Model& work_;
  const SamplerConfig& cfg_;
  Rng& rng_;
  Slots slots_;
};

std::vector<Term> select_terms_in_order(const ProductTerm& p) {
  std::vector<Term> terms;
  std::set<Term> seen;
  for (const auto& lit : p.literals)
    visit_terms(lit, [&](const Term& t) {
      if ((t.kind() == TermKind::Select || t.kind() == TermKind::FunApp) &&
          seen.insert(t).second)
        terms.push_back(t);
    });
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return nested_select_depth(a) < nested_select_depth(b);
  });
  return terms;
}

}  // namespace

std::optional<Model> sample_intervals_arrays(const ArrayApproximation& a,
                                             const SamplerConfig& cfg, Rng& rng) {
  Model work;
  work.ints = a.seed.ints;
  work.bools = a.seed.bools;
  for (const auto& [leaf, range] : a.intervals.entries()) {
    if (leaf.kind() != TermKind::IntVar) continue;
    Int& slot = work.ints[leaf.name()];
    slot = draw_from(range, slot, cfg.unbounded_width, rng);
  }

  SlotFiller filler(a.seed, work, cfg, rng);
  for (const auto& t : select_terms_in_order(a.product)) {
    auto [sym, idx] = filler.locate(t);
    const Interval* range = a.intervals.find(t);
    if (const Int* v = filler.get(sym, idx)) {
      if (range && !range->contains(*v)) return std::nullopt;
      continue;
    }
    Int center = eval_int(t, a.seed);
    Int v = range ? draw_from(*range, center, cfg.unbounded_width, rng) : center;
    filler.set(sym, idx, v);
  }

  Model out;
  out.ints = std::move(work.ints);
  out.bools = std::move(work.bools);
  for (const auto& [sym, f] : a.seed.funcs) {
    FuncValue g(f.default_value());
    if (auto it = filler.slots().find(sym); it != filler.slots().end())
      for (const auto& [k, v] : it->second) g.set(k, v);
    out.funcs.emplace(sym, std::move(g));
  }
  for (auto it = a.substitutions.rbegin(); it != a.substitutions.rend(); ++it)
    out.funcs[it->first] = eval_array(it->second, out);
  return out;
}

// ---------------------------------------------------------------------------

Approximation approximate(const Problem& p, const Model& seed, Rng& rng) {
  Approximation a;
  a.seed = seed;
  a.implicant = compute_implicant(p.nnf, seed, rng);
  if (p.arrays) {
    std::set<std::string> reserved;
    for (const auto& d : p.declarations) reserved.insert(d.name);
    NameSupply names(std::move(reserved));
    a.arrays = pmga_amia(a.implicant, seed, names);
    a.intervals = a.arrays->intervals;
  } else {
    a.intervals = pmga_mia(a.implicant, seed);
  }
  return a;
}

EpochResult exploit_epoch(const Approximation& a, const Problem& p,
                          const SamplerConfig& cfg, Rng& rng, DedupSet& seen,
                          const ExploitLimits& limits,
                          const std::function<void(const Sample&)>& emit) {
  EpochResult r;
  r.seed = a.seed;
  r.intervals = a.intervals;
  if (a.arrays) r.aliasing = a.arrays->aliasing;

  std::uint64_t fresh_total = 0;
  for (unsigned round = 0; round < cfg.rounds; ++round) {
    ++r.rounds;
    std::uint64_t fresh = 0;
    for (unsigned k = 0; k < cfg.samples_per_round; ++k) {
      if (Clock::now() >= limits.deadline) {
        r.budget_exhausted = true;
        return r;
      }
      ++r.draws;
      std::optional<Model> m;
      if (a.arrays)
        m = sample_intervals_arrays(*a.arrays, cfg, rng);
      else
        m = sample_intervals(a.intervals, a.seed, cfg, rng);
      if (!m) {
        ++r.clashes;
        continue;
      }
      Sample s = make_sample(*m, p.declarations);
      bool ok = false;
      try {
        ok = eval_formula(p.assertion, s.model);
      } catch (const UnassignedSymbol&) {
        ok = false;
      }
      if (!ok) throw SoundnessViolation(s.canonical);
      if (!seen.insert(s.canonical)) {
        ++r.duplicates;
        continue;
      }
      ++fresh;
      ++fresh_total;
      if (emit) emit(s);
      r.fresh.push_back(std::move(s));
      if (limits.max_new && fresh_total >= limits.max_new) {
        r.budget_exhausted = true;
        r.last_unique_rate = double(fresh) / double(cfg.samples_per_round);
        return r;
      }
    }
    r.last_unique_rate = double(fresh) / double(cfg.samples_per_round);
    if (r.last_unique_rate < cfg.unique_rate_threshold) break;
  }
  return r;
}

// ---------------------------------------------------------------------------

RunStats mega_sample(const Problem& p, const SamplerConfig& cfg, Solver& solver,
                     const SamplerSinks& sinks, const std::optional<Model>& first_seed) {
  cfg.validate();
  RunStats stats;
  Rng rng(cfg.rng_seed);
  DedupSet seen(cfg.exact_dedup_cap);
  std::vector<IntervalMap> blocked;

  auto seconds = [](Clock::duration d) { return std::chrono::duration<double>(d).count(); };
  const auto start = Clock::now();
  const auto total_deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(cfg.total_time_limit));

  for (;;) {
    if (cfg.max_samples && stats.unique_samples >= cfg.max_samples) {
      stats.stop_reason = "max-samples";
      break;
    }
    if (cfg.max_epochs && stats.epochs >= cfg.max_epochs) {
      stats.stop_reason = "max-epochs";
      break;
    }
    if (Clock::now() >= total_deadline) {
      stats.stop_reason = "time-limit";
      break;
    }

    auto t0 = Clock::now();
    Model seed;
    if (stats.epochs == 0 && first_seed) {
      seed = *first_seed;
      complete_model(seed, p.declarations);
      if (!eval_formula(p.assertion, seed))
        throw NotAModel("injected seed does not satisfy the formula");
    } else if (cfg.strategy == SamplerConfig::Strategy::Random) {
      seed = get_seed_random(p, solver, rng, cfg, stats);
    } else {
      seed = get_seed_blocking(p, solver, blocked, stats);
    }
    auto t1 = Clock::now();
    stats.seed_seconds += seconds(t1 - t0);

    Approximation a = approximate(p, seed, rng);
    const Model& anchor = a.arrays ? a.arrays->seed : a.seed;
    if (!contains(a.intervals, anchor))
      throw Error("seed lies outside its own approximation");
    auto t2 = Clock::now();
    stats.approximate_seconds += seconds(t2 - t1);

    ExploitLimits limits;
    limits.deadline = std::min(
        total_deadline, t2 + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(cfg.epoch_time_limit)));
    if (cfg.max_samples) limits.max_new = cfg.max_samples - stats.unique_samples;
    EpochResult r = exploit_epoch(a, p, cfg, rng, seen, limits, sinks.sample);
    stats.sample_seconds += seconds(Clock::now() - t2);

    ++stats.epochs;
    stats.unique_samples += r.fresh.size();
    stats.draws += r.draws;
    stats.clashes += r.clashes;
    stats.duplicates += r.duplicates;
    stats.rounds += r.rounds;
    if (cfg.strategy == SamplerConfig::Strategy::Blocking)
      if (auto view = blocking_view(a.intervals, p.declarations)) blocked.push_back(*view);
    if (sinks.epoch) sinks.epoch(stats.epochs, r);
  }
  stats.probabilistic_dedup = seen.probabilistic();
  stats.total_seconds = seconds(Clock::now() - start);
  return stats;
}

}  // namespace mga
