#pragma once

#include <stdexcept>
#include <string>

namespace wreath {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A partition subtraction needed a part that is not there.
class NotContained : public Error
{
public:
  using Error::Error;
};

/// Padding target is smaller than the object being padded.
class TooSmall : public Error
{
public:
  using Error::Error;
};

class SizeMismatch : public Error
{
public:
  using Error::Error;
};

class DimensionMismatch : public Error
{
public:
  using Error::Error;
};

class DomainNotCovered : public Error
{
public:
  using Error::Error;
};

class NotProper : public Error
{
public:
  using Error::Error;
};

/// Malformed text input (partitions, families, permutations, records).
class ParseError : public Error
{
public:
  using Error::Error;
};

/// A computed quantity disagreed with an independent recomputation.
class InvariantViolation : public Error
{
public:
  using Error::Error;
};

/// An enumeration would exceed the configured element budget.
class BudgetExceeded : public Error
{
public:
  BudgetExceeded(std::string what_kind, std::string required, std::string limit)
    : Error("budget exceeded: " + what_kind + " requires " + required +
            " elements, limit is " + limit),
      kind(std::move(what_kind)),
      required(std::move(required)),
      limit(std::move(limit))
  {}

  std::string kind;
  std::string required;
  std::string limit;
};

} // namespace wreath
