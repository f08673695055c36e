#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swapdyn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance, witness or CNF document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates an instance invariant.
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// The network does not belong to the class a solver requires.
class ClassError : public Error {
 public:
  using Error::Error;
};

/// A caller-side contract was broken (bad range, bad query, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A swap in a replayed sequence was not applicable.
class SwapError : public Error {
 public:
  SwapError(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The exhaustive oracle hit its state limit before it could answer.
class TruncatedError : public Error {
 public:
  using Error::Error;
};

/// An internal algorithm invariant failed. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace swapdyn
