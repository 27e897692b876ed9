#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace branchtrace {

/// Argument outside the operation's domain (n == 0, empty range, short stream).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request that would exceed a configured size cap.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A branch trace that does not describe any trajectory ending at the given
/// terminal value. `step_index` is the 0-based position of the failing symbol.
class InconsistentTrace : public std::runtime_error {
 public:
  InconsistentTrace(std::size_t step_index, const std::string& what)
      : std::runtime_error(what), step_index_(step_index) {}

  std::size_t step_index() const noexcept { return step_index_; }

 private:
  std::size_t step_index_;
};

class KeyLengthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BlockLengthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace branchtrace
