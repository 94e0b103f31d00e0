// Acceptance gate. Prints one PASS/FAIL line per criterion.
//
//   acceptance          run all criteria
//   acceptance N        run criterion N only
//
// Exit status: 0 all selected criteria pass, 1 a failure, 77 skipped (solver
// smoke without a solver binary), 78 criterion 10 (see README).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mga/arrays.hpp"
#include "mga/cli.hpp"
#include "mga/coverage.hpp"
#include "mga/errors.hpp"
#include "mga/implicant.hpp"
#include "mga/sampler.hpp"
#include "mga/smtlib.hpp"
#include "mga/strengthen.hpp"
#include "mga/transcript.hpp"
#include "mga/transform.hpp"
#include "support/oracle.hpp"

#ifndef MGA_TEST_DATA
#define MGA_TEST_DATA "tests/data"
#endif

using namespace mga;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// ---- pinned limits ----
constexpr double kIntroSeconds = 1.0;
constexpr double kRulesSeconds = 1.0;
constexpr double kSoundnessSeconds = 300.0;
constexpr double kArraySeconds = 120.0;
constexpr std::uint64_t kThroughputSamples = 10000;
constexpr double kThroughputSeconds = 10.0;
constexpr std::uint64_t kSmokeSamples = 100;
constexpr double kSmokeSeconds = 60.0;

enum Outcome { kPass, kFail, kSkip, kUnattainable };

struct Report {
  Outcome outcome;
  std::string detail;
};

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem load(const std::string& path) { return make_problem(parse_problem(slurp(path))); }

Problem from_formula(const Formula& f, const std::vector<Declaration>& decls) {
  ParsedProblem pp;
  pp.declarations = decls;
  pp.assertion = f;
  return make_problem(pp);
}

Interval iv(std::optional<long long> lo, std::optional<long long> hi) {
  Interval r;
  if (lo) r.lo = Int(*lo);
  if (hi) r.hi = Int(*hi);
  return r;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::optional<std::string> solver_command() {
  if (const char* env = std::getenv("MGA_SOLVER_CMD"); env && *env) return std::string(env);
  for (const char* p : {"/usr/local/bin/z3", "/usr/bin/z3"})
    if (fs::exists(p)) return std::string(p) + " -in";
  return std::nullopt;
}

// ---- 1 ----
Report intro_example() {
  auto t0 = Clock::now();
  Problem p = load(MGA_TEST_DATA "/intro-example.smt2");
  oracle::EnumSolver solver(-50, 50);
  SamplerConfig cfg;
  cfg.max_epochs = 1;
  cfg.samples_per_round = 100;
  Model seed;
  seed.ints = {{"x", 12}, {"y", 2}};
  IntervalMap first;
  SamplerSinks sinks;
  sinks.epoch = [&](std::uint64_t n, const EpochResult& r) {
    if (n == 1) first = r.intervals;
  };
  mega_sample(p, cfg, solver, sinks, seed);
  double secs = since(t0);
  IntervalMap want;
  want.restrict(mk_int_var("x"), iv(0, 15));
  want.restrict(mk_int_var("y"), iv(2, std::nullopt));
  bool ok = first == want && secs < kIntroSeconds;
  return {ok ? kPass : kFail, to_json(first).dump() + fmt(" in %.3fs", secs)};
}

// ---- 2 ----
Report rule_examples() {
  auto t0 = Clock::now();
  bool split = portion(5, 2, 1) == 3 && portion(5, 2, 2) == 2;
  Model m;
  m.ints = {{"x1", 5}, {"x2", -9}};
  Term x1 = mk_int_var("x1"), x2 = mk_int_var("x2");
  IntervalMap r = pmga_mia({{mk_atom(Rel::Le, mk_mul({x1, x2}), mk_int(-42))}}, m);
  IntervalMap want;
  want.restrict(x1, iv(5, std::nullopt));
  want.restrict(x2, iv(std::nullopt, -9));
  double secs = since(t0);
  bool ok = split && r == want && secs < kRulesSeconds;
  return {ok ? kPass : kFail, fmt("portion(5,2)=(%s,%s) ", to_string(portion(5, 2, 1)).c_str(),
                                  to_string(portion(5, 2, 2)).c_str()) +
                                  to_json(r).dump()};
}

// ---- 3 ----
Report soundness() {
  auto t0 = Clock::now();
  Rng rng(3);
  auto sig = oracle::int_signature(4);
  std::uniform_int_distribution<int> val(-20, 20);
  std::uint64_t points = 0, bad_points = 0;
  for (int t = 0; t < 200; ++t) {
    Model m;
    for (const auto& n : sig.ints) m.ints[n] = val(rng);
    ProductTerm p;
    for (int i = 1 + t % 3; i > 0; --i)
      p.literals.push_back(oracle::satisfied_literal(rng, sig, m, 4, 2, 30));
    IntervalMap box = pmga_mia(p, m);
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    for (const auto& name : sig.ints) {
      Interval r = box.get(mk_int_var(name));
      std::int64_t lo = r.lo && *r.lo > -20 ? static_cast<std::int64_t>(*r.lo) : -20;
      std::int64_t hi = r.hi && *r.hi < 20 ? static_cast<std::int64_t>(*r.hi) : 20;
      ranges.push_back({lo, hi});
    }
    auto holds = oracle::compile(p.to_formula(), sig.ints);
    oracle::for_each_point(ranges, [&](const std::int64_t* pt) {
      ++points;
      if (!holds(pt)) ++bad_points;
      return true;
    });
  }

  // End to end: formulas with at least 1000 models inside the box the
  // enumerating seed solver searches.
  std::uint64_t samples = 0, failures = 0;
  int formulas = 0, short_runs = 0;
  while (formulas < 100) {
    Formula f = oracle::random_formula(rng, sig, 2, 4, 2, 20);
    auto holds = oracle::compile(f, sig.ints);
    std::uint64_t count = 0;
    oracle::for_each_point({{-6, 6}, {-6, 6}, {-6, 6}, {-6, 6}},
                           [&](const std::int64_t* pt) { return !(holds(pt) && ++count >= 1000); });
    if (count < 1000) continue;
    ++formulas;
    Problem p = from_formula(f, sig.declarations());
    oracle::EnumSolver solver(-6, 6);
    SamplerConfig cfg;
    cfg.max_samples = 1000;
    cfg.samples_per_round = 200;
    // soft targets inside the solver's box
    cfg.random_bound = 6;
    cfg.total_time_limit = 20;
    cfg.rng_seed = formulas;
    SamplerSinks sinks;
    std::uint64_t got = 0;
    sinks.sample = [&](const Sample& s) {
      ++got;
      if (!oracle::holds(f, s.model)) ++failures;
    };
    try {
      mega_sample(p, cfg, solver, sinks);
    } catch (const SoundnessViolation&) {
      ++failures;
    } catch (const Error&) {
      // box too small for the enumerating solver; counted as a short run
    }
    samples += got;
    if (got < 1000) ++short_runs;
  }
  double secs = since(t0);
  bool ok = bad_points == 0 && failures == 0 && short_runs == 0 && secs < kSoundnessSeconds;
  return {ok ? kPass : kFail,
          fmt("box points=%llu violating=%llu; formulas=%d samples=%llu failures=%llu short=%d; "
              "%.1fs",
              (unsigned long long)points, (unsigned long long)bad_points, formulas,
              (unsigned long long)samples, (unsigned long long)failures, short_runs, secs)};
}

// ---- 4 ----
Report containment_and_implicants() {
  Rng rng(4);
  std::uint64_t epochs = 0, outside = 0, lit_bad = 0, impl_bad = 0, implicants = 0;

  auto sig4 = oracle::int_signature(4);
  for (int t = 0; t < 100; ++t) {
    Formula f = oracle::random_formula(rng, sig4, 2, 4, 2, 20);
    Problem p = from_formula(f, sig4.declarations());
    oracle::EnumSolver solver(-6, 6);
    SamplerConfig cfg;
    cfg.max_epochs = 5;
    cfg.samples_per_round = 50;
    cfg.rounds = 2;
    cfg.total_time_limit = 5;
    cfg.rng_seed = t;
    SamplerSinks sinks;
    sinks.epoch = [&](std::uint64_t, const EpochResult& r) {
      ++epochs;
      if (!contains(r.intervals, r.seed)) ++outside;
    };
    try {
      mega_sample(p, cfg, solver, sinks);
    } catch (const Unsat&) {
    }
  }

  auto sig3 = oracle::int_signature(3);
  std::uniform_int_distribution<int> val(-5, 5);
  while (implicants < 500) {
    Formula f = to_nnf(preprocess(oracle::random_formula(rng, sig3, 3, 4, 2, 10)));
    Model m;
    for (const auto& n : sig3.ints) m.ints[n] = val(rng);
    if (!oracle::holds(f, m)) continue;
    ++implicants;
    ProductTerm imp = compute_implicant(f, m, rng);
    for (const auto& l : imp.literals)
      if (!oracle::holds(l, m)) ++lit_bad;
    auto lhs = oracle::compile(imp.to_formula(), sig3.ints);
    auto rhs = oracle::compile(f, sig3.ints);
    oracle::for_each_point({{-5, 5}, {-5, 5}, {-5, 5}}, [&](const std::int64_t* pt) {
      if (lhs(pt) && !rhs(pt)) ++impl_bad;
      return true;
    });
  }
  bool ok = epochs > 0 && outside == 0 && lit_bad == 0 && impl_bad == 0;
  return {ok ? kPass : kFail,
          fmt("epochs=%llu seed-outside=%llu; implicants=%llu unsat-literals=%llu "
              "non-implied-points=%llu",
              (unsigned long long)epochs, (unsigned long long)outside,
              (unsigned long long)implicants, (unsigned long long)lit_bad,
              (unsigned long long)impl_bad)};
}

oracle::Signature array_signature() { return {{"i", "j"}, {"a", "b"}, {"f"}}; }

// ---- 5 ----
Report grounding_fidelity() {
  Rng rng(5);
  auto sig = array_signature();
  int cases = 0, mismatches = 0, sat = 0, unsat = 0;
  while (cases < 200) {
    Formula f = oracle::random_array_formula(rng, sig, 2);
    Model m = oracle::random_model(rng, sig.declarations(), -3, 3);
    if (!oracle::holds(f, m)) continue;
    ProductTerm imp = compute_implicant(to_nnf(preprocess(f)), m, rng);
    NameSupply names({"i", "j", "a", "b", "f"});
    ArrayRewrite rw = rewrite_array_equalities(imp, m, names);
    ProductTerm flat = eliminate_select_store(rw.product, rw.model);
    // the seed model and one unrelated model per case, so both sides of the
    // equivalence are exercised
    for (int k = 0; k < 2; ++k) {
      Model other = k == 0 ? rw.model : oracle::random_model(rng, sig.declarations(), -3, 3);
      for (const auto& c : rw.fresh_arrays)
        if (!other.funcs.count(c)) other.funcs[c] = FuncValue(int(rng() % 7) - 3);
      for (const auto& u : rw.fresh_ints)
        if (!other.ints.count(u)) other.ints[u] = int(rng() % 7) - 3;
      Grounding g = ground(flat, other, names);
      bool lhs = oracle::holds(flat.to_formula(), other);
      bool rhs = oracle::holds(g.product.to_formula(), g.model);
      if (lhs != rhs) ++mismatches;
      (lhs ? sat : unsat)++;
    }
    ++cases;
  }
  bool ok = mismatches == 0 && sat > 0 && unsat > 0;
  return {ok ? kPass : kFail,
          fmt("cases=%d checks=%d (m|=phi: %d, m|/=phi: %d) mismatches=%d", cases, sat + unsat, sat,
              unsat, mismatches)};
}

// Pairs of select / application terms on the same symbol, with the index
// equality the model gives them.
std::vector<bool> aliasing_signature(const ProductTerm& p, const Model& m) {
  std::map<std::string, std::vector<Term>> groups;
  std::set<Term> seen;
  for (const auto& l : p.literals)
    visit_terms(l, [&](const Term& t) {
      if (t.kind() == TermKind::Select && t.arg(0).kind() == TermKind::ArrayVar && seen.insert(t).second)
        groups["a:" + t.arg(0).name()].push_back(t.arg(1));
      if (t.kind() == TermKind::FunApp && seen.insert(t).second)
        groups["f:" + t.name()].push_back(t.arg(0));
    });
  std::vector<bool> out;
  for (const auto& [k, idx] : groups)
    for (std::size_t x = 0; x < idx.size(); ++x)
      for (std::size_t y = x + 1; y < idx.size(); ++y)
        out.push_back(oracle::value(idx[x], m) == oracle::value(idx[y], m));
  return out;
}

// ---- 6 ----
Report array_pipeline() {
  auto t0 = Clock::now();
  Rng rng(6);
  auto sig = array_signature();
  SamplerConfig cfg;
  cfg.unbounded_width = 3;
  int problems = 0;
  std::uint64_t samples = 0, failures = 0, alias_bad = 0, seed_outside = 0, clashes = 0;
  while (problems < 200) {
    Formula f = oracle::random_array_formula(rng, sig, 2);
    oracle::RandomSearchSolver solver(-3, 3, rng(), 2000);
    SolverVerdict v = solver.solve({sig.declarations(), {f}, {}});
    if (!v.sat()) continue;
    ++problems;
    Problem p = from_formula(f, sig.declarations());
    Approximation a = approximate(p, v.model, rng);
    const ArrayApproximation& arr = *a.arrays;
    if (!contains(arr.intervals, arr.seed)) ++seed_outside;
    std::vector<bool> want = aliasing_signature(arr.product, arr.seed);
    for (int s = 0; s < 200; ++s) {
      auto smp = sample_intervals_arrays(arr, cfg, rng);
      if (!smp) {
        ++clashes;
        continue;
      }
      ++samples;
      if (!oracle::holds(f, *smp)) ++failures;
      if (aliasing_signature(arr.product, *smp) != want) ++alias_bad;
    }
  }
  double secs = since(t0);
  bool ok = failures == 0 && alias_bad == 0 && seed_outside == 0 && samples > 0 &&
            secs < kArraySeconds;
  return {ok ? kPass : kFail,
          fmt("problems=%d samples=%llu clashes=%llu failures=%llu aliasing-mismatch=%llu "
              "seed-outside=%llu %.1fs",
              problems, (unsigned long long)samples, (unsigned long long)clashes,
              (unsigned long long)failures, (unsigned long long)alias_bad,
              (unsigned long long)seed_outside, secs)};
}

// ---- 7 ----
Report blocking() {
  std::vector<Declaration> decls{{"x", DeclKind::Int}};
  Term x = mk_int_var("x");
  auto run_with = [&](Solver& solver, std::string& detail) {
    Problem range = load(MGA_TEST_DATA "/blocking-range.smt2");
    IntervalMap prior;
    prior.restrict(x, iv(0, 1));
    std::vector<IntervalMap> blocked{prior};
    RunStats stats;
    bool reset = true;
    Model next = get_seed_blocking(range, solver, blocked, stats, &reset);
    Int nx = next.ints.at("x");
    bool first = !reset && (nx == 2 || nx == 3);

    Problem point = load(MGA_TEST_DATA "/blocking-point.smt2");
    IntervalMap all;
    all.restrict(x, Interval::point(0));
    std::vector<IntervalMap> blocked2{all};
    RunStats stats2;
    bool reset2 = false;
    Model again = get_seed_blocking(point, solver, blocked2, stats2, &reset2);
    bool second = reset2 && again.ints.at("x") == 0 && blocked2.empty();
    detail += "next=" + to_string(nx) + " reset-yields=" + to_string(again.ints.at("x")) + "; ";
    return first && second;
  };
  std::string detail;
  oracle::EnumSolver enum_solver(-10, 10);
  bool ok = run_with(enum_solver, detail);
  if (auto cmd = solver_command()) {
    ProcessSolver z3(*cmd, std::chrono::seconds(20));
    detail += "external: ";
    ok = run_with(z3, detail) && ok;
  }
  return {ok ? kPass : kFail, detail};
}

// ---- 8 ----
Report determinism() {
  fs::path dir = fs::temp_directory_path() / ("mga-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string problem = MGA_TEST_DATA "/determinism.smt2";
  const std::vector<std::string> common{"--rng-seed", "7", "--max-samples", "3000",
                                        "--samples-per-round", "100", "--random-bound", "30",
                                        "--time-limit", "600"};
  // Record a transcript with the enumerating solver, configured exactly like
  // the command line runs below.
  {
    Problem p = load(problem);
    SamplerConfig cfg;
    cfg.rng_seed = 7;
    cfg.max_samples = 3000;
    cfg.samples_per_round = 100;
    cfg.random_bound = 30;
    cfg.total_time_limit = 600;
    oracle::EnumSolver inner(-40, 40);
    std::ofstream log(dir / "transcript.jsonl");
    RecordingSolver rec(inner, log);
    mega_sample(p, cfg, rec);
  }
  std::vector<std::string> outputs;
  std::string detail;
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    std::string out = (dir / ("samples" + std::to_string(run) + ".jsonl")).string();
    std::vector<std::string> args{"run", problem, "--solver-cmd", "false", "--replay-transcript",
                                  (dir / "transcript.jsonl").string(), "--samples-out", out};
    args.insert(args.end(), common.begin(), common.end());
    std::ostringstream so, se;
    int rc = cli_main(args, so, se);
    if (rc != 0) {
      ok = false;
      detail += "run " + std::to_string(run) + " rc=" + std::to_string(rc) + " " + se.str();
    }
    outputs.push_back(slurp(out));
  }
  std::set<std::string> lines;
  std::uint64_t count = 0, dups = 0;
  std::istringstream in(outputs[0]);
  for (std::string line; std::getline(in, line); ++count)
    if (!lines.insert(line).second) ++dups;
  bool same = outputs[0] == outputs[1];
  ok = ok && same && dups == 0 && count > 0;
  detail += fmt("lines=%llu duplicates=%llu identical=%s", (unsigned long long)count,
                (unsigned long long)dups, same ? "yes" : "no");
  fs::remove_all(dir);
  return {ok ? kPass : kFail, detail};
}

// ---- 9 ----
Report coverage() {
  CoverageLayout one(mk_atom(Rel::Ge, mk_int_var("x"), mk_int(-100)));
  // ids: 0 atom, 1 x, 2 constant; samples 0 and 1 leave the atom true
  CoverageBitmap hand = one.empty_bitmap();
  Model m0, m1;
  m0.ints["x"] = 0;
  m1.ints["x"] = 1;
  one.record(hand, m0);
  one.record(hand, m1);
  bool hand_ok = hand.covered_bits() == 1 && hand.nodes[1].covered() == 1;

  Rng rng(9);
  auto sig = oracle::int_signature(3);
  int mono_bad = 0, order_bad = 0;
  for (int t = 0; t < 50; ++t) {
    Formula g = oracle::random_formula(rng, sig, 3, 4, 2, 10);
    CoverageLayout layout(g);
    std::vector<Model> samples;
    for (int k = 0; k < 40; ++k) samples.push_back(oracle::random_model(rng, sig.declarations(), -1000, 1000));
    CoverageBitmap a = layout.empty_bitmap();
    double last = 0;
    for (const auto& s : samples) {
      layout.record(a, s);
      double now = raw_coverage(a);
      if (now < last) ++mono_bad;
      last = now;
    }
    std::shuffle(samples.begin(), samples.end(), rng);
    CoverageBitmap b = layout.empty_bitmap();
    for (const auto& s : samples) layout.record(b, s);
    if (!(a == b)) ++order_bad;
  }

  CoverageBitmap left, right;
  left.nodes.push_back({64, 0x00000000FFFFFFFFull, 0x00000000FFFFFFFFull});
  right.nodes.push_back({64, 0xFFFFFFFF00000000ull, 0xFFFFFFFF00000000ull});
  double half = normalized_coverage(left, {right});
  bool ok = hand_ok && mono_bad == 0 && order_bad == 0 && half == 0.5;
  return {ok ? kPass : kFail,
          fmt("hand covered=%llu; monotonicity violations=%d; order differences=%d; "
              "disjoint normalized=%.17g",
              (unsigned long long)hand.covered_bits(), mono_bad, order_bad, half)};
}

std::pair<std::uint64_t, double> throughput_run(const std::string& path, std::uint64_t target,
                                                Solver& solver, std::string& stop) {
  Problem p = load(path);
  SamplerConfig cfg;
  cfg.max_samples = target;
  cfg.total_time_limit = kThroughputSeconds;
  std::uint64_t verified = 0;
  SamplerSinks sinks;
  sinks.sample = [&](const Sample& s) {
    if (oracle::holds(p.assertion, s.model)) ++verified;
  };
  auto t0 = Clock::now();
  RunStats st = mega_sample(p, cfg, solver, sinks);
  stop = st.stop_reason;
  return {verified, since(t0)};
}

// ---- 10 ----
Report throughput() {
  std::unique_ptr<Solver> solver;
  if (auto cmd = solver_command())
    solver = std::make_unique<ProcessSolver>(*cmd, std::chrono::seconds(20));
  else
    solver = std::make_unique<oracle::EnumSolver>(-5, 105);
  std::string stop;
  auto [n, secs] = throughput_run(MGA_TEST_DATA "/throughput.smt2", kThroughputSamples, *solver, stop);
  std::string detail = fmt("x+y<=100: %llu unique verified in %.2fs (stop=%s); the formula has "
                           "exactly 5151 integer models",
                           (unsigned long long)n, secs, stop.c_str());
  if (n >= kThroughputSamples && secs <= kThroughputSeconds) return {kPass, detail};
  // Same pipeline on a formula with enough models, for information only.
  std::unique_ptr<Solver> wide;
  if (auto cmd = solver_command())
    wide = std::make_unique<ProcessSolver>(*cmd, std::chrono::seconds(20));
  else
    wide = std::make_unique<oracle::EnumSolver>(-5, 1005);
  std::string stop2;
  auto [n2, secs2] =
      throughput_run(MGA_TEST_DATA "/throughput-wide.smt2", kThroughputSamples, *wide, stop2);
  detail += fmt("; info: x+y<=1000 gave %llu in %.2fs", (unsigned long long)n2, secs2);
  return {n == 5151 ? kUnattainable : kFail, detail};
}

// ---- 11 ----
Report solver_smoke() {
  auto cmd = solver_command();
  if (!cmd) return {kSkip, "no solver binary found (set MGA_SOLVER_CMD)"};
  std::string detail;
  bool ok = true;
  for (const char* name : {"toy-arrays.smt2", "toy-uf.smt2", "toy-nonlinear.smt2"}) {
    Problem p = load(std::string(MGA_TEST_DATA "/") + name);
    ProcessSolver solver(*cmd, std::chrono::seconds(20));
    SamplerConfig cfg;
    cfg.max_samples = kSmokeSamples;
    cfg.total_time_limit = kSmokeSeconds;
    std::set<std::string> unique;
    std::uint64_t bad = 0;
    SamplerSinks sinks;
    sinks.sample = [&](const Sample& s) {
      unique.insert(s.canonical);
      if (!oracle::holds(p.assertion, s.model)) ++bad;
    };
    auto t0 = Clock::now();
    try {
      mega_sample(p, cfg, solver, sinks);
    } catch (const Error& e) {
      detail += std::string(name) + " error: " + e.what() + "; ";
      ok = false;
    }
    double secs = since(t0);
    bool file_ok = unique.size() >= kSmokeSamples && secs <= kSmokeSeconds && bad == 0;
    ok = ok && file_ok;
    detail += fmt("%s %zu in %.2fs; ", name, unique.size(), secs);
  }
  return {ok ? kPass : kFail, detail};
}

const std::vector<std::pair<const char*, std::function<Report()>>> kCriteria{
    {"intro example intervals", intro_example},
    {"rule worked examples", rule_examples},
    {"soundness suite", soundness},
    {"seed containment and implicants", containment_and_implicants},
    {"grounding fidelity", grounding_fidelity},
    {"array pipeline", array_pipeline},
    {"blocking semantics", blocking},
    {"uniqueness and determinism", determinism},
    {"coverage metric", coverage},
    {"throughput floor", throughput},
    {"solver smoke", solver_smoke},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  if (argc > 1) {
    std::size_t n = std::strtoul(argv[1], nullptr, 10);
    if (n < 1 || n > kCriteria.size()) {
      std::cerr << "usage: acceptance [1-" << kCriteria.size() << "]\n";
      return 2;
    }
    selected.push_back(n);
  } else {
    for (std::size_t n = 1; n <= kCriteria.size(); ++n) selected.push_back(n);
  }
  int rc = 0;
  for (std::size_t n : selected) {
    const auto& [name, fn] = kCriteria[n - 1];
    Report r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = r.outcome == kPass ? "PASS" : r.outcome == kSkip ? "SKIP" : "FAIL";
    std::cout << "criterion " << n << " [" << name << "]: " << tag << "  " << r.detail << '\n';
    if (r.outcome == kFail || r.outcome == kUnattainable) rc = 1;
    if (selected.size() == 1 && r.outcome == kSkip) rc = 77;
    if (selected.size() == 1 && r.outcome == kUnattainable) rc = 78;
  }
  return rc;
}
