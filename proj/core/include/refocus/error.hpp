#pragma once

#include <stdexcept>
#include <string>

namespace refocus {

enum class ErrorCode {
  InvalidArgument,    // bad parameter value or malformed in-memory input
  SizeLimit,          // construction beyond the hard order/spin caps
  NoHadamardOrder,    // requested order has no matrix in the routing table
  Capacity,           // compiled sequence would need an order beyond 48
  InvalidPin,         // pinned colour groups overlap or are internally coupled
  DimensionMismatch,  // matrix/graph/schedule shapes disagree
  Parse,              // malformed input document
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace refocus
