#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "doctheory/result.hpp"
#include "doctheory/theory.hpp"
#include "doctheory/value.hpp"

namespace doctheory {

/// A theory together with the queue that drives it.
struct Encoded {
  Theory theory;
  Value queue;
};

// ------------------------------------------------------------ Turing machines

struct TMTransition {
  std::string state;
  std::string symbol;
  std::string next_state;
  std::string write;
  /// -1 or +1.
  int move = 1;
};

/// Deterministic machine on a right-infinite tape that starts blank.
struct TMSpec {
  std::string blank = "B";
  std::string start = "q0";
  std::vector<TMTransition> delta;

  std::vector<std::string> states() const;
  std::vector<std::string> alphabet() const;
  const TMTransition* find(std::string_view state, std::string_view symbol) const;
};

/// `.tm` format, one directive per line, `#` comments:
///   blank B
///   start q0
///   q0 B -> q1 X R        (state symbol -> state' symbol' L|R)
Result<TMSpec, Diagnostic> parse_tm(std::string_view text);
std::string print_tm(const TMSpec& tm);

/// Problems that make a machine unusable: nondeterminism, a name used both
/// as a state and a symbol, names that are not plain identifiers.
std::vector<std::string> check_tm(const TMSpec& tm);

/// Forms {TMcell}, fields {TMsymbol}, transactions {MakeTMStep}. Document i
/// is the i-th letter of the configuration word a1 .. ah q ah+1 .. so the
/// state sits right after the scanned cell.
Result<Encoded> encode_tm(const TMSpec& tm);

struct TMConfiguration {
  std::vector<std::string> tape;
  /// 0-based; -1 once the head has moved off the left end.
  long head = 0;
  std::string state;
  bool operator==(const TMConfiguration&) const = default;
};

/// Reads the configuration word out of the newest version of every cell.
/// Fails unless exactly one cell holds a state.
Result<TMConfiguration> read_configuration(const Value& model, const TMSpec& tm);

// ---------------------------------------------------------- exponential blowup

struct ExpParams {
  std::size_t k = 1;
  std::size_t n = 0;
};

/// Forms Form_0 .. Form_k without fields; MakeExp_i on the Form_i document
/// issues one Duplicate per Form_i-1 document and Duplicate issues one
/// CreateDoc(Form_i) per existing Form_i document.
Encoded exp_theory(const ExpParams& p);

/// EXP^1(n) = 2^n, EXP^(j+1)(n) = 2^EXP^j(n); fails when it exceeds 2^63.
Result<std::uint64_t> exp_tower(std::size_t i, std::size_t n);

struct ExpCounts {
  std::uint64_t model_size = 0;
  std::uint64_t steps = 0;
};

/// |model| = n + sum EXP^i(n) and
/// steps = (n + 2k) + n + sum (EXP^i(n) - 1) + sum_{i<k} EXP^i(n).
Result<ExpCounts> expected_counts(const ExpParams& p);

}  // namespace doctheory
