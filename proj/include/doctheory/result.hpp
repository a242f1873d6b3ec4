#pragma once

#include <string>
#include <utility>
#include <variant>

namespace doctheory {

/// Error raised while evaluating a term or formula. Evaluation never throws
/// across the public API; failures come back as this value.
struct EvalError {
  std::string message;
};

/// Minimal value-or-error holder (std::expected is not available on every
/// toolchain we build with).
template <class T, class E = EvalError>
class Result {
 public:
  Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : state_(std::in_place_index<1>, std::move(error)) {}

  bool has_value() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  const T& value() const& { return std::get<0>(state_); }
  T& value() & { return std::get<0>(state_); }
  T&& value() && { return std::get<0>(std::move(state_)); }
  const E& error() const { return std::get<1>(state_); }
  T value_or(T fallback) const& { return has_value() ? value() : std::move(fallback); }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

 private:
  std::variant<T, E> state_;
};

}  // namespace doctheory
