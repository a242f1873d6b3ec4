#include "doctheory/numerics.hpp"

#include <vector>

namespace doctheory {

namespace {

/// Digits most significant first, or nullopt when x is not a Real.
std::optional<std::vector<int>> digits_of(const Value& x, const NumericConfig& cfg) {
  if (!x.is_list() || x.size() != static_cast<std::size_t>(cfg.precision())) return std::nullopt;
  std::vector<int> out;
  out.reserve(x.size());
  // Walk head-first: the head holds the most significant digit.
  Value rest = x;
  while (rest.size() > 0) {
    const Value d = rest.head();
    if (!d.is_nat() || d.size() > 9) return std::nullopt;
    out.push_back(static_cast<int>(d.size()));
    rest = rest.tail();
  }
  return out;
}

Value from_digits(const std::vector<int>& most_significant_first) {
  Value out;
  for (auto it = most_significant_first.rbegin(); it != most_significant_first.rend(); ++it) {
    out = out.cons(Value::nat(static_cast<std::size_t>(*it)));
  }
  return out;
}

Value extremum(const Value& t, const NumericConfig& cfg, Ordering keep_if) {
  if (!t.is_list() || t.size() == 0) return fault();
  const auto elems = t.elements();
  for (const auto& e : elems) {
    if (!is_real(e, cfg)) return fault();
  }
  // Fold from the head backwards, replacing only on strict improvement.
  Value best = t.head();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
    if (compare(*it, best, cfg) == keep_if) best = *it;
  }
  return best;
}

}  // namespace

bool is_real(const Value& x, const NumericConfig& cfg) { return digits_of(x, cfg).has_value(); }

Result<Value, EncodeError> encode_real(std::string_view decimal, const NumericConfig& cfg) {
  auto malformed = [&] {
    return EncodeError{EncodeError::Kind::Malformed, "malformed decimal numeral '" + std::string(decimal) + "'"};
  };
  const auto dot = decimal.find('.');
  std::string_view int_part = decimal.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : decimal.substr(dot + 1);
  if (int_part.empty()) return malformed();
  if (dot != std::string_view::npos && frac_part.empty()) return malformed();
  for (char c : int_part)
    if (c < '0' || c > '9') return malformed();
  for (char c : frac_part)
    if (c < '0' || c > '9') return malformed();

  while (!int_part.empty() && int_part.front() == '0') int_part.remove_prefix(1);
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.remove_suffix(1);
  if (int_part.size() > static_cast<std::size_t>(cfg.integer_digits) ||
      frac_part.size() > static_cast<std::size_t>(cfg.fractional_digits)) {
    return EncodeError{EncodeError::Kind::Unrepresentable,
                       "'" + std::string(decimal) + "' does not fit " + std::to_string(cfg.integer_digits) + "." +
                           std::to_string(cfg.fractional_digits) + " digits"};
  }

  std::vector<int> digits(static_cast<std::size_t>(cfg.precision()), 0);
  const std::size_t k = static_cast<std::size_t>(cfg.integer_digits);
  for (std::size_t i = 0; i < int_part.size(); ++i) digits[k - int_part.size() + i] = int_part[i] - '0';
  for (std::size_t i = 0; i < frac_part.size(); ++i) digits[k + i] = frac_part[i] - '0';
  return from_digits(digits);
}

std::optional<std::string> decode_real(const Value& x, const NumericConfig& cfg) {
  auto digits = digits_of(x, cfg);
  if (!digits) return std::nullopt;
  std::string out;
  for (int i = 0; i < cfg.precision(); ++i) {
    if (i == cfg.integer_digits) out += '.';
    out += static_cast<char>('0' + (*digits)[static_cast<std::size_t>(i)]);
  }
  return out;
}

Value len(const Value& x) { return Value::nat(x.size()); }

Value index(const Value& x, const Value& i) {
  if (!x.is_list() || !i.is_nat()) return fault();
  if (i.size() < 1 || i.size() > x.size()) return fault();
  return x.at(i.size() - 1);
}

Ordering compare(const Value& x, const Value& y, const NumericConfig& cfg) {
  auto a = digits_of(x, cfg);
  auto b = digits_of(y, cfg);
  if (!a || !b) return Ordering::NotComparable;
  for (std::size_t i = 0; i < a->size(); ++i) {
    if ((*a)[i] < (*b)[i]) return Ordering::Less;
    if ((*a)[i] > (*b)[i]) return Ordering::Greater;
  }
  return Ordering::Equal;
}

Value add(const Value& x, const Value& y, const NumericConfig& cfg) {
  auto a = digits_of(x, cfg);
  auto b = digits_of(y, cfg);
  if (!a || !b) return fault();
  std::vector<int> sum(a->size(), 0);
  int carry = 0;
  for (std::size_t i = a->size(); i-- > 0;) {
    const int s = (*a)[i] + (*b)[i] + carry;
    sum[i] = s % 10;
    carry = s / 10;
  }
  if (carry == 1) return fault();
  return from_digits(sum);
}

Value min_list(const Value& t, const NumericConfig& cfg) { return extremum(t, cfg, Ordering::Less); }

Value max_list(const Value& t, const NumericConfig& cfg) { return extremum(t, cfg, Ordering::Greater); }

}  // namespace doctheory
