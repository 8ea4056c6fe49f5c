#pragma once

// Line-oriented text format for models:
//
//   kind: hmm|qrw|pfa
//   mode: exact|float
//   alphabet: a b ...
//   # hmm: n, pi (n numbers), M (n rows of n), E (n rows of |alphabet|)
//   # qrw: k, labels (k symbols), U (k rows of k complex), psi0 (k complex)
//   # pfa: n, pi, F, then "Ma <sym>:" followed by n rows, per symbol
//
// Matrix rows go on the lines following their key. '#' starts a comment.
// Numbers are whitespace separated; '[', ']' and ',' are accepted as
// separators too. Exact files use integers and "p/q" rationals, float files
// use integers and decimal literals; mixing is an error. Complex entries are
// written "re+imi" (e.g. "1/2-1/2i"); a bare real or a bare "imi" is
// accepted on input. The symbol "$" is reserved for the PFA reduction.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "hmpeq/models.hpp"

namespace hmpeq {

/// A model with its scalar mode resolved at load time.
using AnyModel = std::variant<Model<Rational>, Model<double>>;

/// Parses and validates. Throws ParseError (with line and column) on syntax
/// errors, unknown kinds, mixed numeric modes or the reserved symbol, and
/// ValidationError when the model breaks an invariant.
AnyModel parse_model(std::string_view text,
                     double tolerance = kDefaultCompareTolerance);

/// Reads and parses a file. Throws Error when it cannot be read.
AnyModel load_model_file(const std::filesystem::path& path,
                         double tolerance = kDefaultCompareTolerance);

/// Canonical text: fixed key order (kind, mode, alphabet, then the payload in
/// grammar order), lowest-terms rationals, shortest round-trip floats,
/// complex entries always in full "re+imi" form.
template <ScalarType S>
std::string serialize_model(const Model<S>& model);

std::string serialize_model(const AnyModel& model);

/// "hmm", "qrw" or "pfa".
template <ScalarType S>
std::string_view kind_name(const Model<S>& model) {
  switch (model.index()) {
    case 0:
      return "hmm";
    case 1:
      return "qrw";
    default:
      return "pfa";
  }
}

inline bool is_exact(const AnyModel& model) { return model.index() == 0; }

/// Formats a complex scalar in canonical "re+imi" form.
template <ScalarType S>
std::string format_complex(const Complex<S>& z);

}  // namespace hmpeq
