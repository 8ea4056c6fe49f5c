#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmpeq/basis.hpp"
#include "hmpeq/oracle.hpp"

namespace hmpeq {

enum class Reason {
  kDimensionMismatch,
  kBasicMatrixMismatch,
  kInitialRowMismatch,
  kOneStepMismatch,
  kAllChecksPassed,
};

/// "dimension-mismatch", "basic-matrix-mismatch", ...
std::string_view to_string(Reason r);

struct EquivalenceOptions {
  NumericOptions numeric;
  /// On a dimension mismatch, search all words of length <= dim_x + dim_y
  /// for a distinguishing word with the brute-force oracle.
  bool witness_search = false;
  std::size_t oracle_budget = kDefaultOracleBudget;
};

template <ScalarType S>
struct EquivalenceVerdict {
  bool equivalent = false;
  Reason reason = Reason::kAllChecksPassed;
  /// A word u with p_x(u) != p_y(u), when one was found.
  std::optional<Word> witness;
  std::optional<S> value_x;
  std::optional<S> value_y;
  /// True for float-mode verdicts, which hold only within tolerance.
  bool approximate = !ScalarTraits<S>::exact;

  std::size_t dim_x = 0;
  std::size_t dim_y = 0;
  /// Basis (I, J) of the first process; the words the checks ran on.
  std::vector<Word> rows;
  std::vector<Word> columns;
  BasisStats stats_x;
  BasisStats stats_y;
  /// Set when the optional witness search could not run.
  std::string note;
};

/// Decides whether two linear representations generate the same process.
///
/// Computes a basis for both; unequal dimensions mean "not equivalent".
/// Otherwise, with (I, J) the basis of `x`, checks p(wv) = q(wv) and
/// p(wav) = q(wav) for all v in I, w in J, a in the alphabet. Matching
/// dimensions plus an equal basic matrix make (I, J) a basis of `y` too, so
/// these equalities decide equivalence. The first failed equality, in the
/// order (w = □ row, remaining basic-matrix entries, one-step entries),
/// becomes the witness.
///
/// Throws AlphabetMismatch unless both share the same symbols in the same
/// order.
template <ScalarType S>
EquivalenceVerdict<S> test_equivalence(const LinearRepresentation<S>& x,
                                       const LinearRepresentation<S>& y,
                                       const EquivalenceOptions& opts = {});

/// Same contract as test_equivalence; named entry point for comparing
/// representations compiled from different model classes.
template <ScalarType S>
EquivalenceVerdict<S> cross_class_equivalence(
    const LinearRepresentation<S>& x, const LinearRepresentation<S>& y,
    const EquivalenceOptions& opts = {}) {
  return test_equivalence(x, y, opts);
}

template <ScalarType S>
struct PfaVerdict {
  /// Verdict for the stop-symbol processes (alphabet + "$").
  EquivalenceVerdict<S> process;
  /// The witness translated to a word over the automata's alphabet, when
  /// the process witness has the form v$...$.
  std::optional<Word> acceptance_witness;
};

/// Reduces both automata with pfa_to_hmm and compares the resulting
/// processes over alphabet + "$". With opts.witness_search, a verdict of
/// "not equivalent" whose witness is not of the form v$...$ is followed by a
/// search for a word v of length <= dim_x + dim_y with different acceptance
/// probabilities; when found, v$ replaces the process witness.
template <ScalarType S>
PfaVerdict<S> test_equivalence_pfa(const PfaModel<S>& x, const PfaModel<S>& y,
                                   const EquivalenceOptions& opts = {});

}  // namespace hmpeq
