#ifndef LACSPIN_ERRORS_HPP
#define LACSPIN_ERRORS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacspin {

// Stable failure categories; the C API and the CLI exit codes mirror them.
enum class Status {
  ok = 0,
  parse_error = 1,
  convergence_error = 2,
  steady_state_error = 3,
  io_error = 4,
  invalid_argument = 5,
  internal_error = 6,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(Status::invalid_argument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::vector<std::string> issues = {})
      : Error(Status::parse_error, what), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

class SteadyStateError : public Error {
 public:
  explicit SteadyStateError(const std::string& what)
      : Error(Status::steady_state_error, what) {}
};

// Carries the last two monitored (X, Y) values when the doubling protocol
// hits the step cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::array<double, 2> previous,
                   std::array<double, 2> last)
      : Error(Status::convergence_error, what), previous_(previous), last_(last) {}
  std::array<double, 2> previous() const { return previous_; }
  std::array<double, 2> last() const { return last_; }

 private:
  std::array<double, 2> previous_;
  std::array<double, 2> last_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Status::io_error, what) {}
};

}  // namespace lacspin

#endif
