#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prlab {

enum class ErrorCode {
  kOutOfRangeVertex,
  kSelfLoop,
  kDuplicateEdge,
  kZeroDegreeVertex,
  kDisconnectedGraph,
  kEmptyGraph,
  kInvalidProbability,
  kInvalidProbabilityVector,
  kInadmissibleWeights,
  kInvalidExponent,
  kInvalidParams,
  kTooLargeForDense,
  kEmptySet,
  kIndexOutOfRange,
  kOddN,
  kLengthMismatch,
  kScenarioInvalid,
  kIoError,
  kParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRangeVertex: return "OutOfRangeVertex";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kZeroDegreeVertex: return "ZeroDegreeVertex";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kInvalidProbabilityVector: return "InvalidProbabilityVector";
    case ErrorCode::kInadmissibleWeights: return "InadmissibleWeights";
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kTooLargeForDense: return "TooLargeForDense";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kOddN: return "OddN";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kScenarioInvalid: return "ScenarioInvalid";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure kind
/// so callers can branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace prlab
