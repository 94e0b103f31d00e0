#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mga {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnassignedSymbol : public Error {
 public:
  explicit UnassignedSymbol(const std::string& name)
      : Error("unassigned symbol: " + name), symbol(name) {}
  std::string symbol;
};

class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(const std::string& what)
      : Error("unsupported feature: " + what) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

class NotAModel : public Error {
 public:
  using Error::Error;
};

class NegativeSlack : public Error {
 public:
  using Error::Error;
};

class DivisorZero : public Error {
 public:
  DivisorZero() : Error("division by zero") {}
};

class EmptyIntersection : public Error {
 public:
  explicit EmptyIntersection(const std::string& key)
      : Error("empty interval intersection on " + key), key(key) {}
  std::string key;
};

class NoWitness : public Error {
 public:
  using Error::Error;
};

class UnknownGroundVar : public Error {
 public:
  explicit UnknownGroundVar(const std::string& name)
      : Error("unknown grounded variable: " + name) {}
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class ModelParseError : public Error {
 public:
  explicit ModelParseError(const std::string& fragment)
      : Error("cannot parse solver model near: " + fragment) {}
};

class UnsupportedSoft : public Error {
 public:
  using Error::Error;
};

class Unsat : public Error {
 public:
  Unsat() : Error("formula is unsatisfiable") {}
};

class SoundnessViolation : public Error {
 public:
  explicit SoundnessViolation(const std::string& sample)
      : Error("sample violates the input formula: " + sample) {}
};

class BitmapMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace mga
