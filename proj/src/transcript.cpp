#include "mga/transcript.hpp"

#include <cstdio>

#include "mga/errors.hpp"
#include "mga/json_io.hpp"

namespace mga {

using nlohmann::json;

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const char* status_name(SolverVerdict::Status s) {
  switch (s) {
    case SolverVerdict::Status::Sat: return "sat";
    case SolverVerdict::Status::Unsat: return "unsat";
    case SolverVerdict::Status::Unknown: return "unknown";
    case SolverVerdict::Status::Error: return "error";
  }
  return "error";
}

}  // namespace

std::uint64_t query_fingerprint(const SolverRequest& req, bool with_soft) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& d : req.declarations) feed(print_declaration(d));
  for (const auto& f : req.hard) feed(print_formula(f));
  if (with_soft)
    for (const auto& [f, w] : req.soft) feed(print_formula(f) + " " + to_string(w));
  return h;
}

SolverVerdict RecordingSolver::check(const SolverRequest& req, bool with_soft) {
  json entry{{"op", with_soft ? "max_solve" : "solve"},
             {"query", hex(query_fingerprint(req, with_soft))}};
  SolverVerdict v;
  try {
    v = with_soft ? inner_.max_solve(req) : inner_.solve(req);
  } catch (const UnsupportedSoft& e) {
    entry["status"] = "unsupported_soft";
    entry["reason"] = e.what();
    out_ << entry.dump() << '\n';
    out_.flush();
    throw;
  }
  entry["status"] = status_name(v.status);
  if (v.sat()) entry["model"] = model_to_json(v.model);
  if (!v.reason.empty()) entry["reason"] = v.reason;
  out_ << entry.dump() << '\n';
  out_.flush();
  return v;
}

ReplaySolver::ReplaySolver(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    entries_.push_back(json::parse(line));
  }
}

SolverVerdict ReplaySolver::check(const SolverRequest& req, bool with_soft) {
  if (next_ >= entries_.size())
    return SolverVerdict::make_error("transcript exhausted");
  const json& e = entries_[next_++];
  std::string op = with_soft ? "max_solve" : "solve";
  if (e.at("op") != op || e.at("query") != hex(query_fingerprint(req, with_soft)))
    return SolverVerdict::make_error("query does not match transcript entry " +
                                     std::to_string(next_));
  std::string status = e.at("status");
  std::string reason = e.value("reason", "");
  if (status == "unsupported_soft") throw UnsupportedSoft(reason);
  if (status == "sat") return SolverVerdict::make_sat(model_from_json(e.at("model")));
  if (status == "unsat") return SolverVerdict::make_unsat();
  if (status == "unknown") return SolverVerdict::make_unknown(reason);
  return SolverVerdict::make_error(reason);
}

}  // namespace mga
