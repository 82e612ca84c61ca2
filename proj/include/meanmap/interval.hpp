#pragma once

#include <string>
#include <string_view>

namespace meanmap {

/// A nondegenerate subinterval of the extended real line. Infinite endpoints
/// are always open.
class Interval {
 public:
  Interval(double lower, double upper, bool lower_closed, bool upper_closed);

  static Interval real_line();
  static Interval positive();          // (0, inf)
  static Interval closed(double lower, double upper);
  static Interval open(double lower, double upper);

  /// Parses interval notation such as "[0, 1]", "(0, inf)", "(-inf, +inf)".
  static Interval parse(std::string_view text);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  bool lower_closed() const noexcept { return lower_closed_; }
  bool upper_closed() const noexcept { return upper_closed_; }
  bool bounded() const noexcept;

  bool contains(double x) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lower_;
  double upper_;
  bool lower_closed_;
  bool upper_closed_;
};

}  // namespace meanmap
