#pragma once

#include <stdexcept>
#include <string>

namespace secacc {

/// Input rejected before any modeling happened: bad config, bad trace,
/// bad arguments. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// The model reached a state the modeled hardware cannot be in (store into a
/// full FIFO, read of an empty output register, utilization above 1, ...).
/// The CLI maps this to exit code 2.
class ModelViolation : public std::runtime_error {
 public:
  explicit ModelViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secacc
