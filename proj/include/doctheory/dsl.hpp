#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "doctheory/ast.hpp"
#include "doctheory/numerics.hpp"
#include "doctheory/result.hpp"
#include "doctheory/theory.hpp"
#include "doctheory/value.hpp"

// Concrete syntax of `.dth` theory files, `.queue` files and value literals.
//
//   theory Name {
//     precision k=2 m=2;
//     fields { Status: ?; Amount: !; }
//     forms { Order { Status = <Open>; } Marker {} }
//     transactions { Approve; }
//     filters { Open(d) where field_value(head(d), Status, model) = <Open>; }
//     on set Order.Status when fValue = <Closed> emit { trans Approve(docID, <>); }
//     on trans Order.Approve emit { create Marker; }
//     default trans skip-queue;
//   }
//
// Identifiers are variables when they are one of the rule variables
// (docID, fValue, params, model) or bound by an enclosing binder, and
// urelement constants otherwise.

namespace doctheory {

/// Names the parser always reads as variables.
const std::vector<std::string>& rule_variables();

struct ParseOptions {
  /// Run validate_theory and report its diagnostics as errors.
  bool validate = true;
};

Result<Theory, std::vector<Diagnostic>> parse_theory(std::string_view text, ParseOptions options = {});

/// Canonical source text; parse_theory(print_theory(th)) == th.
std::string print_theory(const Theory& th);

/// A constant: lists, atoms, nat(n), real("d.d").
Result<Value, Diagnostic> parse_value(std::string_view text, const NumericConfig& cfg = {});

/// Term or formula over the given extra variables (besides rule_variables()).
Result<Term, Diagnostic> parse_term(std::string_view text, const std::vector<std::string>& vars = {},
                                    const NumericConfig& cfg = {});
Result<Formula, Diagnostic> parse_formula(std::string_view text, const std::vector<std::string>& vars = {},
                                          const NumericConfig& cfg = {});

/// Whitespace- or `;`-separated constants as one list, first value at the
/// front. This is the `.queue` file format.
Result<Value, Diagnostic> parse_value_sequence(std::string_view text, const NumericConfig& cfg = {});

/// One value per line, e.g. a model dump or a queue listing.
std::string print_value_lines(const Value& list);

}  // namespace doctheory
