#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchtrace {

/// Arbitrary-precision non-negative integer.
///
/// Thin value wrapper over boost::multiprecision::cpp_int that keeps the sign
/// out of the interface: every constructor and arithmetic operation either
/// produces a value >= 0 or throws DomainError. Serializes as a plain decimal
/// string (no sign, no leading zeros except for "0").
class Natural {
 public:
  using Int = boost::multiprecision::cpp_int;

  Natural() = default;
  Natural(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Natural(Int v);

  /// Parses a decimal string of ASCII digits. Throws DomainError otherwise.
  static Natural parse(std::string_view text);

  static Natural pow2(unsigned exponent);

  std::string to_string() const;

  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == 1; }
  bool is_even() const { return !boost::multiprecision::bit_test(value_, 0); }

  /// Minimal binary length; 0 for zero.
  std::size_t bit_length() const;

  /// Value modulo m (m > 0).
  std::uint64_t mod(std::uint64_t m) const;

  std::optional<std::uint64_t> to_u64() const;

  const Int& big() const { return value_; }

  Natural& operator+=(const Natural& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Natural& operator*=(std::uint64_t rhs) {
    value_ *= rhs;
    return *this;
  }
  /// Throws DomainError if rhs > *this.
  Natural& operator-=(const Natural& rhs);
  /// Floor division; throws DomainError on division by zero.
  Natural& operator/=(std::uint64_t rhs);

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator*(Natural a, std::uint64_t b) { return a *= b; }
  friend Natural operator/(Natural a, std::uint64_t b) { return a /= b; }

  friend bool operator==(const Natural& a, const Natural& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = a.value_.compare(b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Int value_{0};
};

}  // namespace branchtrace
