#include "meanmap/error.hpp"

namespace meanmap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::EmptyVector: return "EmptyVector";
    case ErrorKind::ConstantVector: return "ConstantVector";
    case ErrorKind::NotFoundWithinCap: return "NotFoundWithinCap";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind), detail_(message) {
  refresh();
}

Error Error::with_component(std::size_t index) const {
  Error copy = *this;
  copy.component_ = index;
  copy.refresh();
  return copy;
}

Error Error::with_step(std::size_t index) const {
  Error copy = *this;
  copy.step_ = index;
  copy.refresh();
  return copy;
}

void Error::refresh() {
  what_ = std::string(to_string(kind_));
  if (step_) what_ += " at step " + std::to_string(*step_);
  if (component_) what_ += " in component " + std::to_string(*component_ + 1);
  what_ += ": " + detail_;
}

void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace meanmap
