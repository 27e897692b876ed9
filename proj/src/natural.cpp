#include "branchtrace/natural.hpp"

#include <limits>

#include "branchtrace/errors.hpp"

namespace branchtrace {

Natural::Natural(Int v) : value_(std::move(v)) {
  if (value_.sign() < 0) {
    throw DomainError("Natural: negative value");
  }
}

Natural Natural::parse(std::string_view text) {
  if (text.empty()) {
    throw DomainError("Natural: empty string");
  }
  Int v = 0;
  for (const char c : text) {
    if (c < '0' || c > '9') {
      throw DomainError("Natural: not a decimal integer: '" + std::string(text) + "'");
    }
    v *= 10;
    v += static_cast<unsigned>(c - '0');
  }
  return Natural(std::move(v));
}

Natural Natural::pow2(unsigned exponent) {
  Int v = 0;
  boost::multiprecision::bit_set(v, exponent);
  return Natural(std::move(v));
}

std::string Natural::to_string() const { return value_.str(); }

std::size_t Natural::bit_length() const {
  if (value_.is_zero()) {
    return 0;
  }
  return boost::multiprecision::msb(value_) + 1;
}

std::uint64_t Natural::mod(std::uint64_t m) const {
  if (m == 0) {
    throw DomainError("Natural: modulus is zero");
  }
  return static_cast<std::uint64_t>(value_ % m);
}

std::optional<std::uint64_t> Natural::to_u64() const {
  if (value_ > std::numeric_limits<std::uint64_t>::max()) {
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(value_);
}

Natural& Natural::operator-=(const Natural& rhs) {
  if (rhs.value_ > value_) {
    throw DomainError("Natural: subtraction underflow");
  }
  value_ -= rhs.value_;
  return *this;
}

Natural& Natural::operator/=(std::uint64_t rhs) {
  if (rhs == 0) {
    throw DomainError("Natural: division by zero");
  }
  value_ /= rhs;
  return *this;
}

}  // namespace branchtrace
