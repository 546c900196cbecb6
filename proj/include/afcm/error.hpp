#pragma once

#include <stdexcept>
#include <string>

namespace afcm {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed model/request document.
class ParseError : public Error
{
public:
  using Error::Error;
};

/// A structural invariant of a model, config or dataset does not hold.
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// A record names an unknown attribute, omits one, or uses a value outside its domain.
/// `attribute()` is the offending attribute id so callers can report it per field.
class AttributeError : public Error
{
public:
  AttributeError(std::string attribute, std::string const &what)
    : Error(what), attribute_(std::move(attribute))
  {
  }
  [[nodiscard]] std::string const &attribute() const noexcept { return attribute_; }

private:
  std::string attribute_;
};

class DimensionError : public Error
{
public:
  using Error::Error;
};

} // namespace afcm
