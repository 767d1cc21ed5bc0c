#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ipsnet {

// Base for all library errors. `code()` is a stable machine-readable
// identifier used by the CLI (`error: <code>: <detail>`).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct Violation {
  std::string code;   // "OutOfRange" or "OrderingViolation"
  std::string field;  // offending field name
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(violations.empty() ? "OutOfRange" : violations.front().code,
              describe(violations)),
        violations_(std::move(violations)) {}
  ValidationError(std::initializer_list<Violation> violations)
      : ValidationError(std::vector<Violation>(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& vs) {
    std::string s;
    for (const auto& v : vs) {
      if (!s.empty()) s += ", ";
      s += v.field;
    }
    return s;
  }
  std::vector<Violation> violations_;
};

class SeriesTooShort : public Error {
 public:
  explicit SeriesTooShort(const std::string& detail)
      : Error("SeriesTooShort", detail) {}
};

class ReducibleChain : public Error {
 public:
  explicit ReducibleChain(const std::string& detail)
      : Error("ReducibleChain", detail) {}
};

class ChainTooLarge : public Error {
 public:
  explicit ChainTooLarge(const std::string& detail)
      : Error("ChainTooLarge", detail) {}
};

class EmptySample : public Error {
 public:
  explicit EmptySample(const std::string& detail)
      : Error("EmptySample", detail) {}
};

class IoFailure : public Error {
 public:
  explicit IoFailure(const std::string& detail) : Error("IoFailure", detail) {}
};

}  // namespace ipsnet
