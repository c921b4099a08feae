#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hoopstat {

// Precondition violated by a numerical routine or statistical test.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Design matrix without full column rank.
class SingularDesignError : public DomainError {
 public:
  SingularDesignError(std::size_t column, const std::string& what)
      : DomainError(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// Input data that fails schema or invariant validation.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Like DataError, but pinned to a file location.  Line 0 means the file as
// a whole (missing, unreadable).
class LoadError : public DataError {
 public:
  LoadError(std::string file, std::size_t line, const std::string& message)
      : DataError(line ? file + ":" + std::to_string(line) + ": " + message
                       : file + ": " + message),
        file_(std::move(file)),
        line_(line) {}
  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hoopstat
