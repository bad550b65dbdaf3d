#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace efa {

// Root of all library errors. CLI maps Error -> exit 1, UsageError -> exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes disagree with an operation's contract.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A spatial geometry that cannot produce a valid output (H' or W' < 1,
// pooling window entirely in padding, odd dims where even is required).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Invalid block/model configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Non-finite values where finiteness is part of the contract.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Caller misuse of an API (non-scalar loss, bad flag combinations).
class UsageError : public Error {
 public:
  using Error::Error;
};

// File format errors carry a kind and the byte offset where parsing failed.
class IoError : public Error {
 public:
  enum class Kind {
    OpenFailed,
    BadMagic,
    VersionMismatch,
    Truncated,
    DuplicateName,
    BadValue,
  };

  IoError(Kind kind, const std::string& msg, std::int64_t offset = -1)
      : Error(offset >= 0 ? msg + " (byte offset " + std::to_string(offset) + ")" : msg),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const { return kind_; }
  std::int64_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::int64_t offset_;
};

}  // namespace efa
