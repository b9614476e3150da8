#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mitplan {

/// Base class for every error raised by the planner library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed scenario text (not valid JSON, wrong value kinds).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Structurally valid input that violates a model invariant. Carries the
/// offending field so callers can point at it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Aggregate stock cannot cover the order for some material; no covering
/// transport plan exists for any allocation.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string material, const std::string& what)
      : Error(what), material_(std::move(material)) {}

  const std::string& material() const { return material_; }

 private:
  std::string material_;
};

/// Exhaustive search would exceed its enumeration guard.
class InstanceTooLargeError : public Error {
 public:
  explicit InstanceTooLargeError(const std::string& what) : Error(what) {}
};

}  // namespace mitplan
