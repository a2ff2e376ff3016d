#include "lpfom/errors.h"

#include <utility>

namespace lpfom {
namespace {

std::string JoinViolations(const std::vector<std::string>& violations) {
  std::string message = "invalid problem";
  for (std::size_t i = 0; i < violations.size(); ++i) {
    message += (i == 0 ? ": " : "; ");
    message += violations[i];
  }
  return message;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(JoinViolations(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                     : message),
      line_(line) {}

BatchMemberError::BatchMemberError(std::size_t index, const std::string& message)
    : Error("batch member " + std::to_string(index) + ": " + message),
      index_(index) {}

}  // namespace lpfom
