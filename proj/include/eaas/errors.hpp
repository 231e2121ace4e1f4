#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace eaas {

// Argument outside the domain of a reward rule or model function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent configuration (constants, workload specs, CLI flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failure. The message always carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(what + ": " + path), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Bad input record. Row numbers are 1-based and count the header as row 1.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& what)
      : std::runtime_error("row " + std::to_string(row) + ", column '" + column + "': " + what),
        row_(row),
        column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

// Brute-force enumeration asked to exceed its size guard.
class LimitError : public std::runtime_error {
 public:
  LimitError(std::size_t size, std::size_t limit)
      : std::runtime_error("brute force refused: " + std::to_string(size) +
                           " scored requests exceed the enumeration limit of " +
                           std::to_string(limit)),
        size_(size),
        limit_(limit) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

}  // namespace eaas
