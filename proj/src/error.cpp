#include "fixpoint/error.hpp"

#include <sstream>

namespace fixpoint {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::NotKolmogorov: return "NotKolmogorov";
    case ErrorCode::NotAWitness: return "NotAWitness";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::InvalidPoset: return "InvalidPoset";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotARetract: return "NotARetract";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotAContraction: return "NotAContraction";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::ConsistencyViolation: return "ConsistencyViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string describe_cycle(const std::vector<Element>& cycle) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) os << " < ";
    os << cycle[i];
  }
  return os.str();
}

}  // namespace

CycleDetected::CycleDetected(std::vector<Element> cycle)
    : Error(ErrorCode::CycleDetected, "cover relation has a cycle " + describe_cycle(cycle)),
      cycle_(std::move(cycle)) {}

NotKolmogorov::NotKolmogorov(Element x, Element y)
    : Error(ErrorCode::NotKolmogorov, "points " + std::to_string(x) + " and " + std::to_string(y) +
                                          " have the same minimal open neighbourhood"),
      x_(x),
      y_(y) {}

void throw_size_limit(const std::string& what, std::size_t value, std::size_t bound) {
  throw Error(ErrorCode::SizeLimit,
              what + " (" + std::to_string(value) + " exceeds bound " + std::to_string(bound) + ")");
}

}  // namespace fixpoint
