#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <cstring>
#include <string>

#include "mga/errors.hpp"
#include "mga/solver.hpp"

namespace mga {

class ProcessSolver::Channel {
 public:
  explicit Channel(const std::string& command) {
    int in[2], out[2];
    if (pipe(in) != 0 || pipe(out) != 0)
      throw SolverError(std::string("pipe: ") + std::strerror(errno));
    pid_ = fork();
    if (pid_ < 0) throw SolverError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      dup2(in[0], STDIN_FILENO);
      dup2(out[1], STDOUT_FILENO);
      int devnull = open("/dev/null", O_WRONLY);
      if (devnull >= 0) dup2(devnull, STDERR_FILENO);
      close(in[0]);
      close(in[1]);
      close(out[0]);
      close(out[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(in[0]);
    close(out[1]);
    to_ = in[1];
    from_ = out[0];
  }

  ~Channel() {
    if (to_ >= 0) close(to_);
    if (from_ >= 0) close(from_);
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
    }
  }

  Channel(const Channel&) = delete;
  Channel& operator=(const Channel&) = delete;

  void send(const std::string& text) {
    std::size_t off = 0;
    while (off < text.size()) {
      ssize_t n = write(to_, text.data() + off, text.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw SolverError("solver process closed its input");
      }
      off += static_cast<std::size_t>(n);
    }
  }

  // One response: an atom or a balanced list.
  std::string receive(std::chrono::milliseconds timeout) {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    std::string out;
    int depth = 0;
    bool in_string = false, in_quote = false, started = false;
    for (;;) {
      char c;
      if (!next(c, deadline)) {
        if (started && depth == 0) return out;
        throw SolverError("solver process terminated");
      }
      if (!started) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        started = true;
      }
      if (in_string) {
        out += c;
        if (c == '"') in_string = false;
        continue;
      }
      if (in_quote) {
        out += c;
        if (c == '|') in_quote = false;
        continue;
      }
      if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) return out;
      out += c;
      if (c == '"') in_string = true;
      else if (c == '|') in_quote = true;
      else if (c == '(') ++depth;
      else if (c == ')') {
        if (--depth == 0) return out;
        if (depth < 0) throw SolverError("unbalanced solver output");
      }
    }
  }

 private:
  bool next(char& c, std::chrono::steady_clock::time_point deadline) {
    if (pos_ < buf_.size()) {
      c = buf_[pos_++];
      return true;
    }
    buf_.clear();
    pos_ = 0;
    for (;;) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw Timeout();
      pollfd p{from_, POLLIN, 0};
      int r = poll(&p, 1, static_cast<int>(left.count()));
      if (r < 0) {
        if (errno == EINTR) continue;
        throw SolverError("poll failed");
      }
      if (r == 0) throw Timeout();
      char tmp[4096];
      ssize_t n = read(from_, tmp, sizeof tmp);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw SolverError("read failed");
      }
      if (n == 0) return false;
      buf_.assign(tmp, tmp + n);
      c = buf_[pos_++];
      return true;
    }
  }

 public:
  struct Timeout {};

 private:
  pid_t pid_ = -1;
  int to_ = -1;
  int from_ = -1;
  std::string buf_;
  std::size_t pos_ = 0;
};

ProcessSolver::ProcessSolver(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {
  signal(SIGPIPE, SIG_IGN);
}

ProcessSolver::~ProcessSolver() = default;

void ProcessSolver::start() {
  channel_ = std::make_unique<Channel>(command_);
  for (const char* opt : {"(set-option :print-success true)\n",
                          "(set-option :produce-models true)\n"}) {
    channel_->send(opt);
    std::string r = channel_->receive(timeout_);
    if (r != "success") throw SolverError("solver rejected option: " + r);
  }
}

void ProcessSolver::stop() { channel_.reset(); }

namespace {

std::string escape_error(const std::string& r) {
  return r.size() > 200 ? r.substr(0, 200) + "..." : r;
}

}  // namespace

SolverVerdict ProcessSolver::check(const SolverRequest& req, bool with_soft) {
  bool soft_rejected = false;
  std::string soft_reason;
  try {
    if (!channel_) start();
    auto command = [&](const std::string& text) {
      channel_->send(text + "\n");
      return channel_->receive(timeout_);
    };
    auto expect_success = [&](const std::string& text) {
      std::string r = command(text);
      if (r != "success") throw SolverError("solver replied '" + escape_error(r) + "' to " + text.substr(0, 80));
    };
    expect_success("(push 1)");
    SolverVerdict verdict;
    try {
      for (const auto& d : req.declarations) expect_success(print_declaration(d));
      for (const auto& h : req.hard) expect_success("(assert " + print_formula(h) + ")");
      if (with_soft) {
        for (const auto& [f, w] : req.soft) {
          std::string r = command("(assert-soft " + print_formula(f) + " :weight " + to_string(w) + ")");
          if (r != "success") {
            soft_rejected = true;
            soft_reason = r;
            break;
          }
        }
      }
      if (!soft_rejected) {
        std::string r = command("(check-sat)");
        if (r == "sat") {
          std::string text = command("(get-model)");
          if (text.rfind("(error", 0) == 0)
            verdict = SolverVerdict::make_error("get-model failed: " + escape_error(text));
          else
            verdict = SolverVerdict::make_sat(parse_model(text, req.declarations));
        } else if (r == "unsat") {
          verdict = SolverVerdict::make_unsat();
        } else if (r == "unknown") {
          verdict = SolverVerdict::make_unknown("solver returned unknown");
        } else {
          verdict = SolverVerdict::make_error("unexpected check-sat reply: " + escape_error(r));
        }
      }
    } catch (const ModelParseError& e) {
      expect_success("(pop 1)");
      return SolverVerdict::make_error(e.what());
    }
    expect_success("(pop 1)");
    if (soft_rejected) throw UnsupportedSoft("solver rejected assert-soft: " + escape_error(soft_reason));
    return verdict;
  } catch (const Channel::Timeout&) {
    stop();
    ++restarts_;
    return SolverVerdict::make_unknown("solver timed out");
  } catch (const SolverError& e) {
    stop();
    ++restarts_;
    return SolverVerdict::make_error(e.what());
  }
}

}  // namespace mga
