#pragma once

#include <stdexcept>
#include <string>

namespace catforms {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point lies on or beyond a reference line, a pole, or outside the chart.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A formula hit a vanishing denominator (zero speed, f = 0, sin u = 0, ...).
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// Caller-supplied arguments violate a documented precondition.
class InputError : public Error {
public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  using Error::Error;
};

/// The generating curve is not a monotone graph over the rotation parameter.
class ResampleError : public Error {
public:
  using Error::Error;
};

/// Shooting or an iterative solver failed to meet its tolerance.
class NonConvergence : public Error {
public:
  using Error::Error;
};

class ProjectionError : public Error {
public:
  using Error::Error;
};

/// Malformed curve / manifest file.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Writing or reading a file failed.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace catforms
