#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "mga/arrays.hpp"
#include "mga/implicant.hpp"
#include "mga/interval.hpp"
#include "mga/smtlib.hpp"
#include "mga/solver.hpp"

namespace mga {

struct SamplerConfig {
  enum class Strategy { Random, Blocking };

  Strategy strategy = Strategy::Random;
  double total_time_limit = 900.0;  // seconds
  double epoch_time_limit = 600.0;  // seconds
  std::uint64_t max_samples = 0;    // 0: unlimited
  std::uint64_t max_epochs = 0;     // 0: unlimited
  unsigned rounds = 10;
  unsigned samples_per_round = 1000;
  double unique_rate_threshold = 0.05;
  Int random_bound = 100;
  Int unbounded_width = 1000000;
  std::uint64_t rng_seed = 0;
  // Exact hashes kept before the dedup set turns into a Bloom filter.
  std::size_t exact_dedup_cap = std::size_t{1} << 24;

  // Throws std::invalid_argument.
  void validate() const;
};

const char* strategy_name(SamplerConfig::Strategy s);

// A parsed problem prepared for sampling.
struct Problem {
  std::vector<Declaration> declarations;
  Formula assertion;  // as parsed; samples are checked against it
  Formula nnf;        // preprocessed, in negation normal form
  bool arrays = false;
  std::vector<std::string> int_vars;
};

// Throws UnsupportedFeature.
Problem make_problem(const ParsedProblem& parsed);

struct Sample {
  Model model;            // declared symbols only
  std::string canonical;  // one-line JSON
};

Sample make_sample(const Model& full, const std::vector<Declaration>& decls);

// Seen-set over stable 64-bit hashes of canonical samples. Past the cap new
// hashes go to a Bloom filter, so a fresh sample may occasionally be taken
// for a duplicate; a duplicate is never reported as fresh.
class DedupSet {
 public:
  explicit DedupSet(std::size_t exact_cap = std::size_t{1} << 24);

  // True when the sample was not seen before.
  bool insert(const std::string& canonical);
  bool probabilistic() const { return !bloom_.empty(); }
  std::size_t size() const { return count_; }

 private:
  std::size_t cap_;
  std::size_t count_ = 0;
  std::unordered_set<std::uint64_t> exact_;
  std::vector<std::uint64_t> bloom_;
};

std::uint64_t stable_hash(const std::string& s);

struct RunStats {
  std::uint64_t epochs = 0;
  std::uint64_t solver_calls = 0;
  std::uint64_t maxsmt_degradations = 0;
  std::uint64_t unique_samples = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t draws = 0;
  std::uint64_t clashes = 0;
  std::uint64_t rounds = 0;
  std::uint64_t blocking_resets = 0;
  bool probabilistic_dedup = false;
  std::string stop_reason;
  std::optional<double> raw_coverage;
  double seed_seconds = 0;
  double approximate_seconds = 0;
  double sample_seconds = 0;
  double total_seconds = 0;

  nlohmann::json to_json() const;
};

// Uniform integer in [lo, hi].
Int uniform_int(const Int& lo, const Int& hi, Rng& rng);
// Uniform draw from iv with infinite endpoints clamped to center -/+ width.
Int draw_from(const Interval& iv, const Int& center, const Int& width, Rng& rng);

// Soft equalities v = r, r uniform in [-B, B], per int variable. Falls back
// to a plain query when soft constraints are rejected. Throws Unsat,
// SolverError.
Model get_seed_random(const Problem& p, Solver& solver, Rng& rng,
                      const SamplerConfig& cfg, RunStats& stats);

// Solves p together with the negation of every blocked map. On UNSAT the
// list is cleared and p is solved alone (`reset` reports it).
Model get_seed_blocking(const Problem& p, Solver& solver,
                        std::vector<IntervalMap>& blocked, RunStats& stats,
                        bool* reset = nullptr);

// The part of an approximation usable as a blocking constraint: keys that
// mention fresh symbols are dropped. nullopt when nothing remains of a
// non-empty map.
std::optional<IntervalMap> blocking_view(const IntervalMap& iv,
                                         const std::vector<Declaration>& decls);

// Keys must be int variables; absent variables keep their seed value.
Model sample_intervals(const IntervalMap& iv, const Model& seed,
                       const SamplerConfig& cfg, Rng& rng);

// Returns nullopt on a clash. The model covers the original and the fresh
// symbols of the approximation.
std::optional<Model> sample_intervals_arrays(const ArrayApproximation& a,
                                             const SamplerConfig& cfg, Rng& rng);

// Implicant plus strengthening for one seed.
struct Approximation {
  Model seed;
  ProductTerm implicant;
  IntervalMap intervals;
  std::optional<ArrayApproximation> arrays;
};

Approximation approximate(const Problem& p, const Model& seed, Rng& rng);

struct EpochResult {
  Model seed;
  IntervalMap intervals;
  AliasingLiterals aliasing;
  std::vector<Sample> fresh;
  std::uint64_t rounds = 0;
  std::uint64_t draws = 0;
  std::uint64_t clashes = 0;
  std::uint64_t duplicates = 0;
  double last_unique_rate = 0;
  bool budget_exhausted = false;  // stopped on time or sample quota
};

struct ExploitLimits {
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
  std::uint64_t max_new = 0;  // 0: unlimited
};

// Up to cfg.rounds rounds of cfg.samples_per_round draws; stops after a
// round whose unique rate is below the threshold. Every sample is checked
// against p.assertion. Throws SoundnessViolation.
EpochResult exploit_epoch(const Approximation& a, const Problem& p,
                          const SamplerConfig& cfg, Rng& rng, DedupSet& seen,
                          const ExploitLimits& limits = {},
                          const std::function<void(const Sample&)>& emit = {});

struct SamplerSinks {
  std::function<void(const Sample&)> sample;
  std::function<void(std::uint64_t epoch, const EpochResult&)> epoch;
};

// Runs epochs until a limit is reached. `first_seed` replaces the first
// solver query when given. Throws Unsat, SolverError, UnsupportedFeature,
// SoundnessViolation.
RunStats mega_sample(const Problem& p, const SamplerConfig& cfg, Solver& solver,
                     const SamplerSinks& sinks = {},
                     const std::optional<Model>& first_seed = std::nullopt);

}  // namespace mga
