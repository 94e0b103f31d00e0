#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mga/model.hpp"
#include "mga/smtlib.hpp"
#include "mga/term.hpp"

namespace mga {

struct SolverRequest {
  std::vector<Declaration> declarations;
  std::vector<Formula> hard;
  std::vector<std::pair<Formula, Int>> soft;  // (constraint, weight > 0)
};

struct SolverVerdict {
  enum class Status { Sat, Unsat, Unknown, Error };
  Status status = Status::Unknown;
  Model model;         // Sat only; total over the declarations
  std::string reason;  // Unknown / Error diagnostic

  bool sat() const { return status == Status::Sat; }
  static SolverVerdict make_sat(Model m) { return {Status::Sat, std::move(m), {}}; }
  static SolverVerdict make_unsat() { return {Status::Unsat, {}, {}}; }
  static SolverVerdict make_unknown(std::string r) {
    return {Status::Unknown, {}, std::move(r)};
  }
  static SolverVerdict make_error(std::string r) {
    return {Status::Error, {}, std::move(r)};
  }
};

// Exclusive-access client: one query in flight at a time.
//
// Every Sat verdict is completed over the declared symbols (0 / false /
// constant-0 functions for symbols the backend left out) and re-checked
// against the hard constraints; a violating model becomes an Error verdict.
class Solver {
 public:
  virtual ~Solver() = default;

  SolverVerdict solve(const SolverRequest& req);
  // Soft constraints are best effort. Throws UnsupportedSoft when the
  // backend rejects them.
  SolverVerdict max_solve(const SolverRequest& req);

  std::size_t calls() const { return calls_; }

 protected:
  virtual SolverVerdict check(const SolverRequest& req, bool with_soft) = 0;

 private:
  SolverVerdict finish(const SolverRequest& req, SolverVerdict v);
  std::size_t calls_ = 0;
};

// Fills symbols missing from m with defaults.
void complete_model(Model& m, const std::vector<Declaration>& decls);

// Parses a get-model response. Array and function values must reduce to a
// default plus finitely many exceptions. Throws ModelParseError.
Model parse_model(std::string_view text, const std::vector<Declaration>& decls);

// Drives an external solver over its standard input/output with SMT-LIB
// text. The process is started lazily, reused across queries with push/pop,
// and restarted after a timeout or protocol error.
class ProcessSolver : public Solver {
 public:
  explicit ProcessSolver(std::string command,
                         std::chrono::milliseconds timeout = std::chrono::seconds(60));
  ~ProcessSolver() override;
  ProcessSolver(const ProcessSolver&) = delete;
  ProcessSolver& operator=(const ProcessSolver&) = delete;

  const std::string& command() const { return command_; }
  std::size_t restarts() const { return restarts_; }

 protected:
  SolverVerdict check(const SolverRequest& req, bool with_soft) override;

 private:
  class Channel;
  void start();
  void stop();

  std::string command_;
  std::chrono::milliseconds timeout_;
  std::unique_ptr<Channel> channel_;
  std::size_t restarts_ = 0;
};

}  // namespace mga
