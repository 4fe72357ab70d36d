#pragma once

#include <stdexcept>
#include <string>

namespace acsv {

// Failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  parse,          // malformed input text or file
  domain,         // precondition violated by the caller
  out_of_scope,   // singularity type not handled (toral, non-simple, not minimal)
  numerical,      // solver or quadrature failed to converge
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), kind_(kind), module_(std::move(module)), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string message_;
};

inline std::string to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse:
      return "parse";
    case ErrorKind::domain:
      return "domain";
    case ErrorKind::out_of_scope:
      return "out_of_scope";
    case ErrorKind::numerical:
      return "numerical";
  }
  return "numerical";
}

}  // namespace acsv
