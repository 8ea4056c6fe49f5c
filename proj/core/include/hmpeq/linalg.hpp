#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hmpeq/scalar.hpp"

namespace hmpeq {

/// Incremental linear-independence test over a fixed dimension.
///
/// Accepted vectors are kept in row-echelon form: each stored row is
/// normalized to 1 at its pivot column and is zero at the pivot columns of
/// all earlier rows. Inserting a vector eliminates it against the stored rows
/// in insertion order, which costs O(dimension * stored) scalar operations.
///
/// In float mode an entry counts as zero when its magnitude is at most
/// `pivot_tolerance * max(largest pivot seen, largest entry of the incoming
/// vector)`.
template <ScalarType S>
class IndependenceTester {
 public:
  explicit IndependenceTester(std::size_t dimension,
                              double pivot_tolerance = kDefaultPivotTolerance);

  /// Returns true and absorbs `v` iff it is not in the span of the stored
  /// vectors. The tester is unchanged when `v` is dependent. Throws
  /// DimensionMismatch when `v.size() != dimension()`.
  bool try_insert(std::span<const S> v);
  bool try_insert(const std::vector<S>& v) {
    return try_insert(std::span<const S>(v));
  }

  /// Same test without absorbing the vector.
  bool is_independent(std::span<const S> v) const;

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return basis_.size(); }
  bool full() const noexcept { return basis_.size() == dimension_; }

  const std::vector<std::vector<S>>& stored_basis() const noexcept {
    return basis_;
  }
  const std::vector<std::size_t>& pivot_columns() const noexcept {
    return pivots_;
  }

 private:
  // Reduces `v` in place; returns the chosen pivot column or nullopt when
  // the residual is zero. `scale` is the float-mode reference magnitude.
  std::optional<std::size_t> reduce(std::vector<S>& v, double scale) const;

  std::size_t dimension_;
  double tolerance_;
  double largest_pivot_ = 0.0;
  std::vector<std::vector<S>> basis_;
  std::vector<std::size_t> pivots_;
};

/// Rank of a matrix. Exact for Rational; the tolerance-based numerical rank
/// for double.
template <ScalarType S>
std::size_t rank(const Matrix<S>& m,
                 double pivot_tolerance = kDefaultPivotTolerance);

/// Same, for nested rows. Throws DimensionMismatch on ragged input.
template <ScalarType S>
std::size_t rank(const std::vector<std::vector<S>>& rows,
                 double pivot_tolerance = kDefaultPivotTolerance) {
  return rank(Matrix<S>::from_rows(rows), pivot_tolerance);
}

/// Indices of the rows that are independent of all earlier rows, scanning
/// top to bottom.
template <ScalarType S>
std::vector<std::size_t> independent_rows(
    const Matrix<S>& m, double pivot_tolerance = kDefaultPivotTolerance);

/// Coefficients beta with sum_i beta[i] * basis[i] == target, or nullopt
/// when target is outside the span. Free coefficients (when the basis
/// vectors are dependent) are set to zero.
template <ScalarType S>
std::optional<std::vector<S>> solve_coefficients(
    const std::vector<std::vector<S>>& basis, const std::vector<S>& target,
    double pivot_tolerance = kDefaultPivotTolerance);

// Small dense kernels shared by the evaluator and the basis algorithms.

template <ScalarType S>
S dot(std::span<const S> a, std::span<const S> b);

/// Row vector times matrix: returns v * m.
template <ScalarType S>
std::vector<S> row_times(std::span<const S> v, const Matrix<S>& m);

/// Matrix times column vector: returns m * v.
template <ScalarType S>
std::vector<S> times_column(const Matrix<S>& m, std::span<const S> v);

}  // namespace hmpeq
