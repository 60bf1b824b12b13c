#pragma once

#include <stdexcept>
#include <string>

namespace geovec {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed algebra file; `field` names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NotStationary : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

/// The algebra does not have the structure the requested normal form needs.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A centre-one normal form whose (S, l) would enlarge the centre.
class DegenerateForm : public Error {
 public:
  using Error::Error;
};

class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace geovec
