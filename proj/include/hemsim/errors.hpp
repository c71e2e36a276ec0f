#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hemsim {

struct Violation;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a type invariant (bad appliance, tariff, parameter set...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A structured-text file failed to parse or validate. The message is
/// anchored as "<source>:<line>: <reason>".
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& source, int line, const std::string& reason);
  int line() const { return line_; }

 private:
  int line_;
};

class InfeasibleSchedule : public Error {
 public:
  explicit InfeasibleSchedule(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class EncodingMismatch : public Error {
 public:
  using Error::Error;
};

class SearchSpaceTooLarge : public Error {
 public:
  SearchSpaceTooLarge(long double size, std::uint64_t limit);
  long double size() const { return size_; }
  std::uint64_t limit() const { return limit_; }

 private:
  long double size_;
  std::uint64_t limit_;
};

class InvalidAttack : public Error {
 public:
  InvalidAttack(const std::string& reason, int index = -1);
  int index() const { return index_; }

 private:
  int index_;
};

class UndefinedRI : public Error {
 public:
  UndefinedRI() : Error("resilience index undefined: clean cost is zero") {}
};

}  // namespace hemsim
