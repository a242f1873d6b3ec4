#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace doctheory {

namespace detail {
struct Node;
}

/// A hereditarily finite list over urelements.
///
/// Lists follow the superstructure conventions: `head` is the LAST element,
/// `tail` drops the last element and `cons` appends at the end. Internally a
/// list is a persistent snoc chain, so head/tail/cons are O(1) and every
/// derived list shares structure with the one it was built from. Values are
/// immutable and may be shared freely between threads.
class Value {
 public:
  /// The empty list.
  Value();

  static Value atom(std::string_view name);
  static Value list(std::span<const Value> elements);
  static Value list(std::initializer_list<Value> elements);
  /// The list of `n` empty lists.
  static Value nat(std::size_t n);

  bool is_atom() const noexcept;
  bool is_list() const noexcept { return !is_atom(); }
  bool is_empty_list() const noexcept;

  /// Identifier of an atom. Empty for lists.
  std::string_view atom_name() const noexcept;

  /// Number of elements; 0 for atoms.
  std::size_t size() const noexcept;

  /// Last element, or the empty list for the empty list. Requires a list.
  Value head() const;
  /// All but the last element, or the empty list for the empty list.
  Value tail() const;
  /// This list with `element` added as the new last element.
  Value cons(const Value& element) const;
  /// Concatenation; shares this list's structure.
  Value conc(const Value& suffix) const;

  /// Elements front to back (position 1 first, head last).
  std::vector<Value> elements() const;
  /// Element at zero-based position from the front. O(size).
  Value at(std::size_t index) const;

  /// A list whose elements are all empty lists.
  bool is_nat() const noexcept;

  std::size_t hash() const noexcept;

  friend bool operator==(const Value& a, const Value& b) noexcept;
  friend bool operator!=(const Value& a, const Value& b) noexcept { return !(a == b); }

  /// Identity of the underlying node; equal identities imply equal values.
  const void* identity() const noexcept { return node_.get(); }

 private:
  explicit Value(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
  friend struct detail::Node;
};

namespace detail {
struct Node {
  static constexpr std::uint32_t kList = 0xffffffffu;

  std::uint32_t atom_id = kList;
  std::size_t size = 0;
  std::size_t hash = 0;
  // Every element is the empty list.
  bool nat = true;
  // Snoc chain: `prev` is the list without `last`.
  mutable std::shared_ptr<const Node> prev;
  Value last{std::shared_ptr<const Node>()};

  Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
  ~Node();
};
}  // namespace detail

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept { return v.hash(); }
};

struct RenderOptions {
  /// Use ⟨ ⟩ brackets instead of ASCII < >.
  bool unicode = false;
  /// Print non-empty lists of empty lists as nat(n).
  bool nat_sugar = false;
};

std::string to_string(const Value& v, RenderOptions options = {});

/// The reserved in-band error constant.
const Value& fault();
bool is_fault(const Value& v) noexcept;

}  // namespace doctheory

template <>
struct std::hash<doctheory::Value> {
  std::size_t operator()(const doctheory::Value& v) const noexcept { return v.hash(); }
};
