#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mvclass {

// Bad or inconsistent input: files, geometry, arguments.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class TruncatedInput : public InputError {
public:
  TruncatedInput(const std::string& path, std::uint64_t offset)
    : InputError(path + ": truncated frame at byte offset " + std::to_string(offset)),
      offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

private:
  std::uint64_t offset_;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
    : InputError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class GeometryMismatch : public InputError {
public:
  using InputError::InputError;
};

// Least-squares design matrix without full column rank.
class RankDeficient : public std::runtime_error {
public:
  explicit RankDeficient(std::size_t accepted)
    : std::runtime_error("affine fit is rank deficient with " + std::to_string(accepted) +
                         " accepted samples"),
      accepted_(accepted) {}

  std::size_t accepted() const { return accepted_; }

private:
  std::size_t accepted_;
};

}  // namespace mvclass
