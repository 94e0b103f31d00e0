#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "mga/solver.hpp"

namespace mga {

// Stable fingerprint of a query (64-bit FNV-1a over its SMT-LIB text).
std::uint64_t query_fingerprint(const SolverRequest& req, bool with_soft);

// Forwards to another solver and writes one JSON line per answered query.
class RecordingSolver : public Solver {
 public:
  RecordingSolver(Solver& inner, std::ostream& out) : inner_(inner), out_(out) {}

 protected:
  SolverVerdict check(const SolverRequest& req, bool with_soft) override;

 private:
  Solver& inner_;
  std::ostream& out_;
};

// Answers queries from a recorded transcript, in order. A query whose
// fingerprint differs from the recorded one yields an Error verdict.
class ReplaySolver : public Solver {
 public:
  explicit ReplaySolver(std::istream& in);

  std::size_t remaining() const { return entries_.size() - next_; }

 protected:
  SolverVerdict check(const SolverRequest& req, bool with_soft) override;

 private:
  std::vector<nlohmann::json> entries_;
  std::size_t next_ = 0;
};

}  // namespace mga
