#pragma once

// Brute-force reference computations. Nothing here reuses the evaluator or
// basis code paths: every probability is recomputed from the raw operators
// with local loops, so these functions can check the main algorithms.
// All of them are exponential in the word length.

#include <cstddef>
#include <optional>
#include <vector>

#include "hmpeq/linear_representation.hpp"
#include "hmpeq/models.hpp"

namespace hmpeq {

/// Default cap on the number of table entries (or Hankel block entries) an
/// oracle call may materialize.
inline constexpr std::size_t kDefaultOracleBudget = 1'000'000;

/// Probabilities of every word of length <= max_length, shortest first and
/// lexicographic within a length.
template <ScalarType S>
struct ProbTable {
  std::size_t max_length = 0;
  std::vector<Word> words;
  std::vector<S> probs;

  /// Throws std::out_of_range for words longer than max_length.
  const S& at(const Word& w) const;
};

/// Throws BudgetExceeded when the table would exceed `budget` entries.
template <ScalarType S>
ProbTable<S> enumerate_probs(const LinearRepresentation<S>& lr,
                             std::size_t max_length,
                             std::size_t budget = kDefaultOracleBudget);

template <ScalarType S>
struct BruteComparison {
  bool equal = true;
  /// First differing word in length-then-lexicographic order.
  std::optional<Word> witness;
  std::optional<S> value_x;
  std::optional<S> value_y;
};

/// Compares two processes on every word of length <= max_length. Throws
/// AlphabetMismatch when the alphabets differ and BudgetExceeded as above.
template <ScalarType S>
BruteComparison<S> brute_equiv(const LinearRepresentation<S>& x,
                               const LinearRepresentation<S>& y,
                               std::size_t max_length,
                               std::size_t budget = kDefaultOracleBudget,
                               const NumericOptions& opts = {});

/// Rank of the Hankel block [p(w v)] with rows and columns indexed by all
/// words of length <= max_length.
///
/// When the block has at most `budget` entries it is built literally.
/// Otherwise the rank is computed on the sub-block whose row words have
/// independent suffix vectors and whose column words have independent prefix
/// vectors (every other row or column of the full block is a linear
/// combination of these, so the rank is the same); this still requires the
/// word count itself to fit the budget.
template <ScalarType S>
std::size_t hankel_rank(const LinearRepresentation<S>& lr,
                        std::size_t max_length,
                        std::size_t budget = kDefaultOracleBudget,
                        const NumericOptions& opts = {});

/// Acceptance probability initial^T M_{v1} ... M_{vt} final evaluated
/// directly on the automaton.
template <ScalarType S>
S pfa_acceptance(const PfaModel<S>& pfa, const Word& v);

}  // namespace hmpeq
