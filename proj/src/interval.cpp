#include "meanmap/interval.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "meanmap/error.hpp"
#include "text.hpp"

namespace meanmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_endpoint(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return detail::format_double(x);
}

}  // namespace

Interval::Interval(double lower, double upper, bool lower_closed,
                   bool upper_closed)
    : lower_(lower),
      upper_(upper),
      lower_closed_(lower_closed),
      upper_closed_(upper_closed) {
  if (std::isnan(lower) || std::isnan(upper)) {
    raise(ErrorKind::InvalidArgument, "interval endpoint is NaN");
  }
  if (!(lower < upper)) {
    raise(ErrorKind::InvalidArgument,
          "interval must satisfy lower < upper, got " + to_string());
  }
  if ((std::isinf(lower) && lower_closed) ||
      (std::isinf(upper) && upper_closed)) {
    raise(ErrorKind::InvalidArgument,
          "infinite interval endpoints must be open");
  }
}

Interval Interval::real_line() { return {-kInf, kInf, false, false}; }
Interval Interval::positive() { return {0.0, kInf, false, false}; }
Interval Interval::closed(double lower, double upper) {
  return {lower, upper, true, true};
}
Interval Interval::open(double lower, double upper) {
  return {lower, upper, false, false};
}

bool Interval::bounded() const noexcept {
  return std::isfinite(lower_) && std::isfinite(upper_);
}

bool Interval::contains(double x) const noexcept {
  if (std::isnan(x)) return false;
  const bool above = lower_closed_ ? x >= lower_ : x > lower_;
  const bool below = upper_closed_ ? x <= upper_ : x < upper_;
  return above && below;
}

std::string Interval::to_string() const {
  std::string out;
  out += lower_closed_ ? '[' : '(';
  out += format_endpoint(lower_);
  out += ", ";
  out += format_endpoint(upper_);
  out += upper_closed_ ? ']' : ')';
  return out;
}

Interval Interval::parse(std::string_view text) {
  const std::string trimmed = detail::trim(text);
  if (trimmed.size() < 5) {
    raise(ErrorKind::ParseError, "malformed interval '" + trimmed + "'");
  }
  const char open = trimmed.front();
  const char close = trimmed.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')')) {
    raise(ErrorKind::ParseError,
          "interval '" + trimmed + "' must start with [ or ( and end with ] or )");
  }
  const auto parts =
      detail::split(std::string_view(trimmed).substr(1, trimmed.size() - 2), ',');
  if (parts.size() != 2) {
    raise(ErrorKind::ParseError,
          "interval '" + trimmed + "' must have exactly two endpoints");
  }
  const double lower = detail::parse_extended_real(parts[0]);
  const double upper = detail::parse_extended_real(parts[1]);
  try {
    return Interval(lower, upper, open == '[', close == ']');
  } catch (const Error& e) {
    raise(ErrorKind::ParseError,
          "interval '" + trimmed + "': " + e.detail());
  }
}

}  // namespace meanmap
