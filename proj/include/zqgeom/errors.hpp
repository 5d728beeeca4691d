#pragma once

#include <stdexcept>
#include <string>

namespace zqgeom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  explicit NonUnit(int valuation)
      : Error("element is not a unit (valuation " + std::to_string(valuation) + ")"),
        valuation_(valuation) {}
  int valuation() const noexcept { return valuation_; }

 private:
  int valuation_;
};

class NotARoot : public Error {
 public:
  using Error::Error;
};

class SingularRoot : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class NegativeValue : public Error {
 public:
  using Error::Error;
};

class MissingProductTag : public Error {
 public:
  using Error::Error;
};

class SizeTooLarge : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace zqgeom
