#include "mga/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mga/coverage.hpp"
#include "mga/errors.hpp"
#include "mga/json_io.hpp"
#include "mga/sampler.hpp"
#include "mga/smtlib.hpp"
#include "mga/transcript.hpp"

namespace mga {

using nlohmann::json;

namespace {

struct IoError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::unique_ptr<std::ofstream> open_out(const std::string& path,
                                        std::ios::openmode mode = std::ios::out) {
  auto f = std::make_unique<std::ofstream>(path, mode);
  if (!*f) throw IoError("cannot write " + path);
  return f;
}

ParsedProblem load_problem(const std::string& path) {
  return parse_problem(read_file(path));
}

json aliasing_to_json(const AliasingLiterals& al) {
  json eq = json::array(), ne = json::array();
  for (const auto& e : al.equalities)
    eq.push_back({print_term(e.index_a), print_term(e.index_b)});
  for (const auto& [a, b] : al.disequalities) ne.push_back({print_term(a), print_term(b)});
  return {{"equal", eq}, {"distinct", ne}};
}

struct RunOptions {
  std::string input;
  std::string solver_cmd = "z3 -in";
  double solver_timeout = 60;
  std::string strategy = "random";
  SamplerConfig cfg;
  long long random_bound = 100;
  long long unbounded_width = 1000000;
  std::string samples_out, intervals_out, coverage_out, stats_out;
  std::string inject_seed, record_transcript, replay_transcript;
};

int do_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  SamplerConfig cfg = o.cfg;
  cfg.strategy = o.strategy == "blocking" ? SamplerConfig::Strategy::Blocking
                                          : SamplerConfig::Strategy::Random;
  cfg.random_bound = o.random_bound;
  cfg.unbounded_width = o.unbounded_width;
  cfg.validate();

  ParsedProblem parsed = load_problem(o.input);
  Problem problem = make_problem(parsed);

  std::optional<Model> first_seed;
  if (!o.inject_seed.empty()) {
    std::string text = o.inject_seed;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') text = read_file(o.inject_seed);
    first_seed = model_from_json(json::parse(text), problem.declarations);
  }

  std::unique_ptr<Solver> backend;
  std::unique_ptr<std::ifstream> replay_in;
  if (!o.replay_transcript.empty()) {
    replay_in = std::make_unique<std::ifstream>(o.replay_transcript);
    if (!*replay_in) throw IoError("cannot open " + o.replay_transcript);
    backend = std::make_unique<ReplaySolver>(*replay_in);
  } else {
    backend = std::make_unique<ProcessSolver>(
        o.solver_cmd, std::chrono::milliseconds(static_cast<long long>(o.solver_timeout * 1000)));
  }
  std::unique_ptr<std::ofstream> record_out;
  std::unique_ptr<Solver> recorder;
  Solver* solver = backend.get();
  if (!o.record_transcript.empty()) {
    record_out = open_out(o.record_transcript);
    recorder = std::make_unique<RecordingSolver>(*backend, *record_out);
    solver = recorder.get();
  }

  // The samples file is created with the first sample, so a failed run
  // leaves none behind.
  std::unique_ptr<std::ofstream> samples_file;
  auto samples_stream = [&]() -> std::ostream& {
    if (o.samples_out.empty() || o.samples_out == "-") return out;
    if (!samples_file) samples_file = open_out(o.samples_out, std::ios::out | std::ios::binary);
    return *samples_file;
  };
  std::unique_ptr<std::ofstream> intervals_file;
  if (!o.intervals_out.empty()) intervals_file = open_out(o.intervals_out);

  bool track_coverage = !o.coverage_out.empty() || !o.stats_out.empty();
  std::optional<CoverageLayout> layout;
  CoverageBitmap bitmap;
  if (track_coverage) {
    layout.emplace(problem.assertion);
    bitmap = layout->empty_bitmap();
  }

  SamplerSinks sinks;
  sinks.sample = [&](const Sample& s) {
    samples_stream() << s.canonical << '\n';
    if (layout) layout->record(bitmap, s.model);
  };
  sinks.epoch = [&](std::uint64_t epoch, const EpochResult& r) {
    if (!intervals_file) return;
    json line{{"epoch", epoch},
              {"seed", model_to_json(r.seed, problem.declarations)},
              {"intervals", to_json(r.intervals)},
              {"aliasing", aliasing_to_json(r.aliasing)},
              {"fresh", r.fresh.size()},
              {"rounds", r.rounds}};
    *intervals_file << line.dump() << '\n';
    intervals_file->flush();
  };

  RunStats stats = mega_sample(problem, cfg, *solver, sinks, first_seed);
  samples_stream().flush();

  if (layout) stats.raw_coverage = raw_coverage(bitmap);
  if (!o.coverage_out.empty()) {
    auto f = open_out(o.coverage_out, std::ios::out | std::ios::binary);
    write_bitmap(*f, bitmap);
  }
  if (!o.stats_out.empty()) {
    json j = stats.to_json();
    j["strategy"] = strategy_name(cfg.strategy);
    j["input"] = o.input;
    j["coverage_bits"] = {{"covered", bitmap.covered_bits()}, {"total", bitmap.total_bits()}};
    auto f = open_out(o.stats_out);
    *f << j.dump(2) << '\n';
  }
  err << "epochs=" << stats.epochs << " unique=" << stats.unique_samples
      << " solver_calls=" << stats.solver_calls << " stop=" << stats.stop_reason << '\n';
  return kExitOk;
}

int do_verify(const std::string& samples_path, const std::string& problem_path,
              std::ostream& out) {
  ParsedProblem parsed = load_problem(problem_path);
  std::ifstream in(samples_path);
  if (!in) throw IoError("cannot open " + samples_path);
  std::uint64_t count = 0, violations = 0, duplicates = 0;
  json bad_lines = json::array();
  std::set<std::string> seen;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++count;
    bool ok = false;
    std::string canonical;
    try {
      Model m = model_from_json(json::parse(line), parsed.declarations);
      canonical = model_to_json(m, parsed.declarations).dump();
      ok = eval_formula(parsed.assertion, m);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      ++violations;
      if (bad_lines.size() < 100) bad_lines.push_back(lineno);
    }
    if (!canonical.empty() && !seen.insert(canonical).second) ++duplicates;
  }
  json report{{"samples", count},
              {"violations", violations},
              {"duplicates", duplicates},
              {"violating_lines", bad_lines}};
  out << report.dump() << '\n';
  return violations == 0 && duplicates == 0 ? kExitOk : kExitFindings;
}

int do_merge(const std::string& output, const std::vector<std::string>& inputs,
             std::ostream& out) {
  std::vector<CoverageBitmap> bms;
  for (const auto& path : inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    bms.push_back(read_bitmap(in));
  }
  CoverageBitmap merged = union_covered(bms);
  json per = json::array();
  for (std::size_t i = 0; i < bms.size(); ++i) {
    std::vector<CoverageBitmap> others;
    for (std::size_t j = 0; j < bms.size(); ++j)
      if (j != i) others.push_back(bms[j]);
    per.push_back({{"file", inputs[i]},
                   {"covered_bits", bms[i].covered_bits()},
                   {"raw_coverage", raw_coverage(bms[i])},
                   {"normalized_coverage", normalized_coverage(bms[i], others)}});
  }
  if (!output.empty()) {
    auto f = open_out(output, std::ios::out | std::ios::binary);
    write_bitmap(*f, merged);
  }
  out << json{{"inputs", per},
              {"union_covered_bits", merged.covered_bits()},
              {"total_bits", merged.total_bits()}}
             .dump(2)
      << '\n';
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model-guided sampling of SMT formula solutions", "megasample"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "sample solutions of an SMT-LIB file");
  run->add_option("input", ro.input, "SMT-LIB v2 file")->required();
  run->add_option("--solver-cmd", ro.solver_cmd, "solver command line")->capture_default_str();
  run->add_option("--solver-timeout", ro.solver_timeout, "per-query timeout in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--strategy", ro.strategy, "seed strategy")
      ->check(CLI::IsMember({"random", "blocking"}))
      ->capture_default_str();
  run->add_option("--time-limit", ro.cfg.total_time_limit, "total seconds")->capture_default_str();
  run->add_option("--epoch-time-limit", ro.cfg.epoch_time_limit, "seconds per epoch")
      ->capture_default_str();
  run->add_option("--max-samples", ro.cfg.max_samples, "stop after this many samples (0: no limit)")
      ->capture_default_str();
  run->add_option("--max-epochs", ro.cfg.max_epochs, "stop after this many epochs (0: no limit)")
      ->capture_default_str();
  run->add_option("--rounds", ro.cfg.rounds, "sampling rounds per epoch")->capture_default_str();
  run->add_option("--samples-per-round", ro.cfg.samples_per_round, "draws per round")
      ->capture_default_str();
  run->add_option("--unique-rate-threshold", ro.cfg.unique_rate_threshold,
                  "stop an epoch when a round's unique rate falls below this")
      ->capture_default_str();
  run->add_option("--random-bound", ro.random_bound, "range of random soft targets")
      ->capture_default_str();
  run->add_option("--unbounded-width", ro.unbounded_width,
                  "half-width used for infinite interval endpoints")
      ->capture_default_str();
  run->add_option("--rng-seed", ro.cfg.rng_seed, "random seed")->capture_default_str();
  run->add_option("--samples-out", ro.samples_out, "JSON-lines samples file (default stdout)");
  run->add_option("--intervals-out,--emit-intervals", ro.intervals_out,
                  "JSON-lines file with one approximation per epoch");
  run->add_option("--coverage-out", ro.coverage_out, "coverage bitmap file");
  run->add_option("--stats-out", ro.stats_out, "run statistics JSON file");
  run->add_option("--inject-seed", ro.inject_seed, "first seed as inline JSON or a JSON file");
  run->add_option("--record-transcript", ro.record_transcript, "log solver answers to a file");
  auto* replay = run->add_option("--replay-transcript", ro.replay_transcript,
                                 "answer solver queries from a recorded transcript");
  replay->excludes(run->get_option("--record-transcript"));

  std::string samples_path, problem_path;
  auto* verify = app.add_subcommand("verify", "check a samples file against a problem");
  verify->add_option("samples", samples_path, "JSON-lines samples file")->required();
  verify->add_option("problem", problem_path, "SMT-LIB v2 file")->required();

  std::string merge_out;
  std::vector<std::string> merge_in;
  auto* merge = app.add_subcommand("merge-coverage", "union coverage bitmaps");
  merge->add_option("-o,--output", merge_out, "merged bitmap file");
  merge->add_option("inputs", merge_in, "bitmap files")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return do_run(ro, out, err);
    if (*verify) return do_verify(samples_path, problem_path, out);
    if (*merge) return do_merge(merge_out, merge_in, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kExitSyntax;
  } catch (const Unsat& e) {
    err << "unsat: " << e.what() << '\n';
    return kExitUnsat;
  } catch (const UnsupportedFeature& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const SoundnessViolation& e) {
    err << "soundness violation: " << e.what() << '\n';
    return kExitSoundness;
  } catch (const BitmapMismatch& e) {
    err << "coverage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace mga
