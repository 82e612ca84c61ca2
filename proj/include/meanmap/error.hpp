#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace meanmap {

enum class ErrorKind {
  ArityMismatch,
  DomainViolation,
  NonFiniteInput,
  EmptyVector,
  ConstantVector,
  NotFoundWithinCap,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Base error for every failure raised by the library. The optional
/// component and step indices are filled in as the error propagates through
/// mapping application and iteration.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  const char* what() const noexcept override { return what_.c_str(); }
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> component() const noexcept { return component_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

  Error with_component(std::size_t index) const;
  Error with_step(std::size_t index) const;

 private:
  void refresh();

  ErrorKind kind_;
  std::string detail_;
  std::optional<std::size_t> component_;
  std::optional<std::size_t> step_;
  std::string what_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace meanmap
