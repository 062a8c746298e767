#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutsideDisc : public Error {
 public:
  using Error::Error;
};

/// Two points of an interpolation sequence coincide (pseudo-hyperbolic
/// distance below 1e-14).
class DuplicatePoint : public Error {
 public:
  DuplicatePoint(std::size_t first, std::size_t second)
      : Error("points " + std::to_string(first) + " and " +
              std::to_string(second) + " coincide"),
        first_(first),
        second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class NonIntegerPowerOfComplex : public Error {
 public:
  using Error::Error;
};

class SpectrumOnBoundary : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class DegenerateFamily : public Error {
 public:
  using Error::Error;
};

class SymbolLeavesDisc : public Error {
 public:
  using Error::Error;
};

class CutoffTooSmall : public Error {
 public:
  using Error::Error;
};

class IndivisibleCutoff : public Error {
 public:
  using Error::Error;
};

}  // namespace framelab
