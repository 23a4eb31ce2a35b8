#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace covtypes {

struct SourcePos {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Base of every error raised by the library. `code()` is the stable,
/// machine-readable identifier surfaced in JSON reports.
class CovError : public std::runtime_error {
 public:
  CovError(std::string code, const std::string& message, SourcePos pos = {})
      : std::runtime_error(message), code_(std::move(code)), pos_(pos) {}

  const std::string& code() const { return code_; }
  const SourcePos& pos() const { return pos_; }

 private:
  std::string code_;
  SourcePos pos_;
};

class ParseError : public CovError {
 public:
  ParseError(const std::string& message, SourcePos pos, std::vector<std::string> expected = {})
      : CovError("parse-error", message, pos), expected_(std::move(expected)) {}

  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class SortError : public CovError {
 public:
  explicit SortError(const std::string& message, SourcePos pos = {})
      : CovError("sort-error", message, pos) {}
};

class ScopeError : public CovError {
 public:
  explicit ScopeError(const std::string& message, SourcePos pos = {})
      : CovError("unbound-name", message, pos) {}
};

class EvalError : public CovError {
 public:
  explicit EvalError(const std::string& message, SourcePos pos = {})
      : CovError("eval-error", message, pos) {}
};

}  // namespace covtypes
