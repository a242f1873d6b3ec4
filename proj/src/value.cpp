#include "doctheory/value.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace doctheory {

namespace {

constexpr std::size_t kEmptyHash = 0x9e3779b97f4a7c15ull;

std::size_t mix(std::size_t h) noexcept {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  h *= 0xc4ceb93fe53ec4ceull;
  h ^= h >> 33;
  return h;
}

class AtomTable {
 public:
  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::string_view name(std::uint32_t id) {
    std::lock_guard lock(mutex_);
    return names_[id];
  }

 private:
  std::mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

AtomTable& atoms() {
  static AtomTable table;
  return table;
}

const std::shared_ptr<const detail::Node>& empty_node() {
  static const std::shared_ptr<const detail::Node> node = [] {
    auto n = std::make_shared<detail::Node>();
    n->hash = kEmptyHash;
    return std::shared_ptr<const detail::Node>(std::move(n));
  }();
  return node;
}

}  // namespace

detail::Node::~Node() {
  // Release long snoc chains without recursing once per element.
  std::shared_ptr<const Node> p = std::move(prev);
  while (p && p.use_count() == 1) {
    std::shared_ptr<const Node> next = std::move(p->prev);
    p = std::move(next);
  }
}

Value::Value() : node_(empty_node()) {}

Value Value::atom(std::string_view name) {
  auto n = std::make_shared<detail::Node>();
  n->atom_id = atoms().intern(name);
  n->hash = mix(0x51ed27u + n->atom_id);
  return Value(std::shared_ptr<const detail::Node>(std::move(n)));
}

Value Value::list(std::span<const Value> elements) {
  Value out;
  for (const auto& e : elements) out = out.cons(e);
  return out;
}

Value Value::list(std::initializer_list<Value> elements) {
  return list(std::span<const Value>(elements.begin(), elements.size()));
}

Value Value::nat(std::size_t n) {
  static const std::array<Value, 33> small = [] {
    std::array<Value, 33> out;
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = out[i - 1].cons(Value());
    return out;
  }();
  if (n < small.size()) return small[n];
  Value out = small.back();
  for (std::size_t i = small.size() - 1; i < n; ++i) out = out.cons(Value());
  return out;
}

bool Value::is_atom() const noexcept { return node_->atom_id != detail::Node::kList; }

bool Value::is_empty_list() const noexcept { return !is_atom() && node_->size == 0; }

std::string_view Value::atom_name() const noexcept {
  if (!is_atom()) return {};
  return atoms().name(node_->atom_id);
}

std::size_t Value::size() const noexcept { return is_atom() ? 0 : node_->size; }

Value Value::head() const {
  if (is_atom()) throw std::logic_error("head of an urelement");
  if (node_->size == 0) return Value();
  return node_->last;
}

Value Value::tail() const {
  if (is_atom()) throw std::logic_error("tail of an urelement");
  if (node_->size == 0) return Value();
  return Value(node_->prev);
}

Value Value::cons(const Value& element) const {
  if (is_atom()) throw std::logic_error("cons onto an urelement");
  auto n = std::make_shared<detail::Node>();
  n->size = node_->size + 1;
  n->hash = mix(node_->hash * 31 + element.hash());
  n->nat = node_->nat && element.is_empty_list();
  n->prev = node_;
  n->last = element;
  return Value(std::shared_ptr<const detail::Node>(std::move(n)));
}

Value Value::conc(const Value& suffix) const {
  if (is_atom() || suffix.is_atom()) throw std::logic_error("conc with an urelement");
  if (node_->size == 0) return suffix;
  Value out = *this;
  for (const auto& e : suffix.elements()) out = out.cons(e);
  return out;
}

std::vector<Value> Value::elements() const {
  std::vector<Value> out;
  if (is_atom()) return out;
  out.reserve(node_->size);
  for (const detail::Node* n = node_.get(); n->size > 0; n = n->prev.get()) out.push_back(n->last);
  std::reverse(out.begin(), out.end());
  return out;
}

Value Value::at(std::size_t index) const {
  if (is_atom() || index >= node_->size) throw std::out_of_range("list index");
  const detail::Node* n = node_.get();
  for (std::size_t steps = node_->size - 1 - index; steps > 0; --steps) n = n->prev.get();
  return n->last;
}

bool Value::is_nat() const noexcept { return !is_atom() && node_->nat; }

std::size_t Value::hash() const noexcept { return node_->hash; }

bool operator==(const Value& a, const Value& b) noexcept {
  const detail::Node* x = a.node_.get();
  const detail::Node* y = b.node_.get();
  while (x != y) {
    if (x->atom_id != y->atom_id || x->size != y->size || x->hash != y->hash) return false;
    if (x->atom_id != detail::Node::kList) return true;  // same atom id
    if (!(x->last == y->last)) return false;
    x = x->prev.get();
    y = y->prev.get();
  }
  return true;
}

namespace {

void render(const Value& v, const RenderOptions& opt, std::string& out) {
  if (v.is_atom()) {
    out += v.atom_name();
    return;
  }
  if (opt.nat_sugar && v.size() > 0 && v.is_nat()) {
    out += "nat(" + std::to_string(v.size()) + ")";
    return;
  }
  out += opt.unicode ? "⟨" : "<";
  bool first = true;
  for (const auto& e : v.elements()) {
    if (!first) out += ", ";
    first = false;
    render(e, opt, out);
  }
  out += opt.unicode ? "⟩" : ">";
}

}  // namespace

std::string to_string(const Value& v, RenderOptions options) {
  std::string out;
  render(v, options, out);
  return out;
}

const Value& fault() {
  static const Value f = Value::atom("fault");
  return f;
}

bool is_fault(const Value& v) noexcept { return v.is_atom() && v == fault(); }

}  // namespace doctheory
