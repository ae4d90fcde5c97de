#ifndef FLPART_ERROR_HPP
#define FLPART_ERROR_HPP

#include <stdexcept>
#include <string>

namespace flpart {

enum class ErrorCode {
  InvalidArgument,  // bad parameter, index out of range, profile length mismatch
  Parse,            // malformed numeric or config text
  Budget,           // exhaustive enumeration budget exceeded
  Assumption,       // operation requires a unique odd equilibrium size
  Precondition,     // operation-specific precondition violated
  Unresolved,       // trajectory did not reach a terminal within the stage limit
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flpart

#endif  // FLPART_ERROR_HPP
