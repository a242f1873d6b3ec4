#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "doctheory/result.hpp"
#include "doctheory/value.hpp"

namespace doctheory {

/// Fixed decimal precision: `integer_digits` before the point and
/// `fractional_digits` after it, prec = k + m.
struct NumericConfig {
  int integer_digits = 4;
  int fractional_digits = 2;

  int precision() const noexcept { return integer_digits + fractional_digits; }
  bool valid() const noexcept { return integer_digits >= 0 && fractional_digits >= 0 && precision() >= 1; }
  bool operator==(const NumericConfig&) const = default;
};

/// The list of n empty lists.
inline Value nat_of(std::size_t n) { return Value::nat(n); }

/// Real(x): exactly prec digits, each a Nat of at most nine elements.
/// Position 1 (the front) is the least significant digit and the head is
/// the most significant one.
bool is_real(const Value& x, const NumericConfig& cfg);

struct EncodeError {
  enum class Kind { Malformed, Unrepresentable } kind;
  std::string message;
};

/// Digit-list form of a non-negative decimal numeral such as "1.5". Fails
/// with Unrepresentable when the value needs more than k integer or m
/// fractional digits.
Result<Value, EncodeError> encode_real(std::string_view decimal, const NumericConfig& cfg);

/// Zero-padded "k.m" rendering of a Real, e.g. "01.50"; nullopt otherwise.
std::optional<std::string> decode_real(const Value& x, const NumericConfig& cfg);

/// Number of elements as a Nat. Requires a list.
Value len(const Value& x);

/// The i-th element (1-based, front to back); fault unless i is a Nat with
/// 1 <= i <= len(x).
Value index(const Value& x, const Value& i);

enum class Ordering { Less, Equal, Greater, NotComparable };

/// Decimal order of two Reals; NotComparable if either is not a Real.
Ordering compare(const Value& x, const Value& y, const NumericConfig& cfg);

/// Digitwise sum with carry; fault if an operand is not a Real or the sum
/// overflows k integer digits.
Value add(const Value& x, const Value& y, const NumericConfig& cfg);

/// Least / greatest element; fault on the empty list or any non-Real element.
Value min_list(const Value& t, const NumericConfig& cfg);
Value max_list(const Value& t, const NumericConfig& cfg);

}  // namespace doctheory
