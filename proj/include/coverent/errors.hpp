#pragma once

#include <stdexcept>
#include <string>

namespace coverent {

// Rejected input: malformed words, non-stochastic matrices, depth mismatches.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or search budget was exceeded. `at_n()` carries the
// horizon at which the budget broke when the error comes out of a trace,
// and -1 otherwise.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what, int at_n = -1)
      : std::runtime_error(what), at_n_(at_n) {}

  int at_n() const { return at_n_; }

 private:
  int at_n_;
};

}  // namespace coverent
