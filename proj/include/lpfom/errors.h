#ifndef LPFOM_ERRORS_H_
#define LPFOM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpfom {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Carries the full list of problem violations found by validate_problem().
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);
  // 1-based line of the offending input, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

// A failure attributed to one member of a batch.
class BatchMemberError : public Error {
 public:
  BatchMemberError(std::size_t index, const std::string& message);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Member `index` does not have the batch's shape.
class BatchShapeError : public BatchMemberError {
 public:
  using BatchMemberError::BatchMemberError;
};

// A metric whose denominator vanished.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpfom

#endif  // LPFOM_ERRORS_H_
