#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace splcsp {

/// Extended non-negative integer cost. Addition saturates at infinity, and
/// infinity compares greater than every finite value.
class Cost {
 public:
  using Rep = std::uint64_t;

  constexpr Cost() = default;
  constexpr explicit Cost(Rep value) : value_(value) {}

  static constexpr Cost infinity() { return Cost(kInfinity); }
  static constexpr Cost zero() { return Cost(0); }

  constexpr bool is_infinite() const { return value_ == kInfinity; }
  constexpr bool is_finite() const { return value_ != kInfinity; }
  constexpr Rep value() const { return value_; }

  constexpr Cost& operator+=(Cost other) {
    if (is_infinite() || other.is_infinite() || kInfinity - value_ <= other.value_) {
      value_ = kInfinity;
    } else {
      value_ += other.value_;
    }
    return *this;
  }

  friend constexpr Cost operator+(Cost a, Cost b) { return a += b; }

  // Removes a term that is known to be part of this sum. If the term is
  // infinite the sum is too, and it stays infinite.
  constexpr Cost without(Cost part) const {
    if (is_infinite()) return *this;
    return Cost(value_ - part.value_);
  }

  friend constexpr auto operator<=>(Cost, Cost) = default;
  friend constexpr bool operator==(Cost, Cost) = default;

  std::string to_string() const {
    return is_infinite() ? std::string("inf") : std::to_string(value_);
  }

  friend std::ostream& operator<<(std::ostream& os, Cost c) { return os << c.to_string(); }

 private:
  static constexpr Rep kInfinity = std::numeric_limits<Rep>::max();
  Rep value_ = 0;
};

}  // namespace splcsp
