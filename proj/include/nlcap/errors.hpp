#pragma once

#include <stdexcept>
#include <string>

namespace nlcap {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- probability-object validation ---------------------------------------

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class Signaling : public Error {
 public:
  using Error::Error;
};

class NegativeEntry : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Thrown before allocating a joint extension whose entry count exceeds the
// memory guard; the message states the requested size and the limit.
class ExtensionTooLarge : public Error {
 public:
  using Error::Error;
};

// --- solver ----------------------------------------------------------------

class NonstochasticChannel : public Error {
 public:
  using Error::Error;
};

class ZeroConditional : public Error {
 public:
  using Error::Error;
};

class NewtonDiverged : public Error {
 public:
  NewtonDiverged(const std::string& msg, double last_residual)
      : Error(msg), last_residual(last_residual) {}
  double last_residual;
};

// --- bell ------------------------------------------------------------------

class TooManyVertices : public Error {
 public:
  using Error::Error;
};

class LPNumericalFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

// --- quantum ---------------------------------------------------------------

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class StagnationWithoutConvergence : public Error {
 public:
  StagnationWithoutConvergence(const std::string& msg, double residual)
      : Error(msg), residual(residual) {}
  double residual;
};

// --- generic input problems (files, flags, malformed tensors) ---------------

class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace nlcap
