#pragma once

#include <stdexcept>
#include <string>

namespace chi2qec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingBasisState : public Error {
 public:
  using Error::Error;
};

class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

class NonCommutingOperators : public Error {
 public:
  NonCommutingOperators(const std::string& what, double max_norm)
      : Error(what), max_commutator_norm(max_norm) {}
  double max_commutator_norm;
};

class EmptyEigenspace : public Error {
 public:
  using Error::Error;
};

class KLViolation : public Error {
 public:
  using Error::Error;
};

class IndefiniteParity : public Error {
 public:
  using Error::Error;
};

class UnknownSyndrome : public Error {
 public:
  using Error::Error;
};

class SearchCapExceeded : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

}  // namespace chi2qec
