#pragma once

#include <stdexcept>
#include <string>

namespace shardforge {

// Error taxonomy mirrors the CLI exit codes: validation of input data (2),
// violated operation precondition (3), brute-force oracle out of range (4).

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

class OracleRangeError : public std::runtime_error {
public:
  explicit OracleRangeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace shardforge
