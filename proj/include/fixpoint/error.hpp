#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fixpoint {

using Element = std::uint32_t;

enum class ErrorCode {
  CycleDetected,
  IndexOutOfRange,
  SizeLimit,
  NotKolmogorov,
  NotAWitness,
  InvalidSpace,
  InvalidPoset,
  NotMonotone,
  DomainMismatch,
  NotARetract,
  OracleFailure,
  VerificationFailure,
  OutOfDomain,
  NotAContraction,
  ParseError,
  DuplicateElement,
  ConsistencyViolation,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class CycleDetected : public Error {
 public:
  explicit CycleDetected(std::vector<Element> cycle);
  const std::vector<Element>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<Element> cycle_;
};

class NotKolmogorov : public Error {
 public:
  NotKolmogorov(Element x, Element y);
  std::pair<Element, Element> witness() const noexcept { return {x_, y_}; }

 private:
  Element x_;
  Element y_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] void throw_size_limit(const std::string& what, std::size_t value, std::size_t bound);

}  // namespace fixpoint
