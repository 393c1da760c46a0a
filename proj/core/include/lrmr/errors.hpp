#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lrmr {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented invariant (bad ids, duplicate edges, negative weights...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Some element is contained in no set.
class Uncoverable : public Error {
 public:
  explicit Uncoverable(std::size_t element)
      : Error("element " + std::to_string(element) + " is contained in no set"), element_(element) {}
  std::size_t element() const noexcept { return element_; }

 private:
  std::size_t element_;
};

/// Exhaustive search refused because the candidate space exceeds the cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidEpsilon : public Error {
 public:
  using Error::Error;
};

}  // namespace lrmr
