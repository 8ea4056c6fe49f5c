#pragma once

#include <cstddef>
#include <vector>

#include "hmpeq/linear_representation.hpp"

namespace hmpeq {

/// Output of the row-generator search.
template <ScalarType S>
struct RowGenerator {
  std::vector<Word> words;                  // I, construction order
  std::vector<BackwardVector<S>> backward;  // one per word
  std::size_t iterations = 0;               // candidates examined, incl. the seed
};

/// Output of the column-basis search.
template <ScalarType S>
struct ColumnBasis {
  std::vector<Word> words;                // J, construction order
  std::vector<ForwardVector<S>> forward;  // one per word
  std::size_t iterations = 0;
};

struct BasisStats {
  std::size_t row_iterations = 0;
  std::size_t column_iterations = 0;
  std::size_t row_generator_size = 0;  // |I| before reduction
};

/// A basis (I, J) of the process together with every probability needed to
/// compare it against another process.
template <ScalarType S>
struct Basis {
  std::vector<Word> rows;     // I (suffix words)
  std::vector<Word> columns;  // J (prefix words)
  /// |I| x |J|, entry (v, w) = p(w v).
  Matrix<S> hankel;
  /// Per symbol a: |I| x |J|, entry (v, w) = p(w a v).
  std::vector<Matrix<S>> one_step;
  std::vector<BackwardVector<S>> backward;  // per row word
  std::vector<ForwardVector<S>> forward;    // per column word
  BasisStats stats;

  std::size_t dimension() const noexcept { return columns.size(); }
};

/// Row generator I. Seeds I = {□} with g(□) = fin and the FIFO candidate
/// queue with the single letters in alphabet order; a candidate v joins I
/// when its backward vector is independent of those collected so far, and
/// then the words a v are queued. Every candidate carries its cached
/// backward vector, so each costs one O(n^2) extension and one independence
/// insert.
template <ScalarType S>
RowGenerator<S> row_generator(const LinearRepresentation<S>& lr,
                              const NumericOptions& opts = {});

/// Column basis J from q(w) = (p(w v))_{v in I}; the analogue of
/// row_generator that extends accepted words on the right.
template <ScalarType S>
ColumnBasis<S> column_basis(const LinearRepresentation<S>& lr,
                            const RowGenerator<S>& rows,
                            const NumericOptions& opts = {});

/// Drops the rows of `raw` (|I| x |J|, entry (v, w) = p(w v)) that depend on
/// earlier rows, in I's construction order, and assembles the basis.
template <ScalarType S>
Basis<S> reduce_rows(const RowGenerator<S>& rows, const ColumnBasis<S>& cols,
                     const Matrix<S>& raw, const NumericOptions& opts = {});

/// The full pipeline: row generator, column basis, row reduction, plus the
/// one-step probabilities p(w a v) from the cached vectors. Uses O(|Σ| n^4)
/// arithmetic operations.
template <ScalarType S>
Basis<S> compute_basis(const LinearRepresentation<S>& lr,
                       const NumericOptions& opts = {});

}  // namespace hmpeq
