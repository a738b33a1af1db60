#pragma once

#include <stdexcept>
#include <string>

namespace bhp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: arity mismatch, bad permutation, inconsistent parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A protocol or check was asked to run on a function outside its domain
/// (e.g. the sdeg <= 1 protocol on PARITY).
class GuardRejected : public Error {
 public:
  using Error::Error;
};

/// The sign-representation LP has no solution at the requested degree.
class LpInfeasible : public Error {
 public:
  using Error::Error;
};

/// The LP solver gave up (iteration limit, breakdown) or its answer failed
/// exact certification. Distinct from infeasibility.
class LpFailure : public Error {
 public:
  using Error::Error;
};

/// No PARITY gadget exists for the symmetric function (NAE on odd arity).
class NoGadget : public Error {
 public:
  using Error::Error;
};

}  // namespace bhp
