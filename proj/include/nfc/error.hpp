#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfc {

// Exit codes of the command-line driver double as error categories.
enum class ErrorKind {
  Parse = 2,
  Precondition = 3,
  Truncation = 4,
  Property = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& msg)
      : std::runtime_error(msg), kind_(kind), name_(std::move(name)) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg, std::string name = "precondition")
      : Error(ErrorKind::Precondition, std::move(name), msg) {}
};

struct ContextError : PreconditionError {
  explicit ContextError(const std::string& msg) : PreconditionError(msg, "context") {}
};

struct DivisionByZero : PreconditionError {
  explicit DivisionByZero(const std::string& msg) : PreconditionError(msg, "division-by-zero") {}
};

struct UndefinedOrd : PreconditionError {
  explicit UndefinedOrd(const std::string& msg) : PreconditionError(msg, "undefined-ord") {}
};

struct TruncationError : Error {
  explicit TruncationError(const std::string& msg, std::string name = "truncation")
      : Error(ErrorKind::Truncation, std::move(name), msg) {}
};

// A component failed quasi-polynomial verification within the supplied bounds.
struct NotHcpError : TruncationError {
  explicit NotHcpError(const std::string& msg) : TruncationError(msg, "not-an-hcp") {}
};

struct PropertyViolation : Error {
  explicit PropertyViolation(const std::string& msg)
      : Error(ErrorKind::Property, "property-violation", msg) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& msg)
      : Error(ErrorKind::Property, "internal", msg) {}
};

}  // namespace nfc
