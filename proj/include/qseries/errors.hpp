#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroLeadingCoefficient : public Error {
 public:
  using Error::Error;
};

class OutOfPrecision : public Error {
 public:
  using Error::Error;
};

class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class EmptyPartition : public Error {
 public:
  using Error::Error;
};

class NotMonomial : public Error {
 public:
  using Error::Error;
};

class LevelMismatch : public Error {
 public:
  using Error::Error;
};

class NotModular : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace qseries
