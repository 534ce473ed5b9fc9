#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace dtop {

// Base for every error raised by the library. Callers that only care about
// "something about the input was wrong" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based; 0 means "no particular line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A precondition or structural invariant was violated. `invariant` names the
// rule (e.g. "downward-closed", "hom-well-defined"), `witness` shows the
// offending datum when one exists.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, std::string witness = {})
      : Error(invariant + (witness.empty() ? std::string{} : ": " + witness)),
        invariant_(std::move(invariant)),
        witness_(std::move(witness)) {}
  const std::string& invariant() const { return invariant_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string invariant_;
  std::string witness_;
};

// An enumeration or size budget would be exceeded.
class BudgetError : public Error {
 public:
  BudgetError(std::string what, double required, double budget)
      : Error(what + ": requires " + format(required) + ", budget " + format(budget)),
        required_(required),
        budget_(budget) {}
  double required() const { return required_; }
  double budget() const { return budget_; }

 private:
  static std::string format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }
  double required_;
  double budget_;
};

}  // namespace dtop
