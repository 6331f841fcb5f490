#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tendonsim {

enum class ErrorCode {
  Domain = 1,      // argument outside the operation's mathematical domain
  Usage,           // operation not defined for this configuration
  OutOfModel,      // state outside the region the model covers
  RomViolation,    // joint value outside its range of motion
  Parse,           // config file malformed or failing validation
  Io,
  InvalidArgument, // constructor invariant violated
  IntegrationFault,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCode::Usage, what) {}
};

class OutOfModelError : public Error {
 public:
  explicit OutOfModelError(const std::string& what) : Error(ErrorCode::OutOfModel, what) {}
};

class RomViolation : public Error {
 public:
  RomViolation(const std::string& joint, const std::string& what)
      : Error(ErrorCode::RomViolation, what), joint_(joint) {}

  const std::string& joint() const noexcept { return joint_; }

 private:
  std::string joint_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

class IntegrationFault : public Error {
 public:
  explicit IntegrationFault(const std::string& what) : Error(ErrorCode::IntegrationFault, what) {}
};

/// Config error carrying the file and 1-based line (0 when the problem is
/// not tied to a single line, e.g. a missing key).
class ParseError : public Error {
 public:
  ParseError(std::string path, int line, const std::string& message)
      : Error(ErrorCode::Parse, format(path, line, message)),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& path, int line, const std::string& message) {
    if (line > 0) return path + ":" + std::to_string(line) + ": " + message;
    return path + ": " + message;
  }

  std::string path_;
  int line_;
};

}  // namespace tendonsim
