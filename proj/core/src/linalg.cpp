#include "hmpeq/linalg.hpp"

#include <algorithm>
#include <string>

namespace hmpeq {
namespace {

template <ScalarType S>
double max_magnitude(std::span<const S> v) {
  double m = 0.0;
  for (const auto& x : v)
    m = std::max(m, ScalarTraits<S>::to_double(ScalarTraits<S>::abs(x)));
  return m;
}

void check_length(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw DimensionMismatch(std::string(what) + ": expected length " +
                            std::to_string(expected) + ", got " +
                            std::to_string(got));
}

}  // namespace

template <ScalarType S>
IndependenceTester<S>::IndependenceTester(std::size_t dimension,
                                          double pivot_tolerance)
    : dimension_(dimension), tolerance_(pivot_tolerance) {
  basis_.reserve(dimension);
  pivots_.reserve(dimension);
}

template <ScalarType S>
std::optional<std::size_t> IndependenceTester<S>::reduce(
    std::vector<S>& v, double scale) const {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (ScalarTraits<S>::is_zero(v[p], 0.0)) continue;
    const S factor = v[p];
    const auto& row = basis_[r];
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (ScalarTraits<S>::is_zero(row[j], 0.0)) continue;
      v[j] -= factor * row[j];
    }
    v[p] = S(0);
  }

  if constexpr (ScalarTraits<S>::exact) {
    for (std::size_t j = 0; j < dimension_; ++j)
      if (sgn(v[j]) != 0) return j;
    return std::nullopt;
  } else {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t j = 0; j < dimension_; ++j) {
      const double mag = std::fabs(v[j]);
      if (mag > best_mag) {
        best_mag = mag;
        best = j;
      }
    }
    const double threshold = tolerance_ * scale;
    if (dimension_ == 0 || best_mag <= threshold || best_mag == 0.0)
      return std::nullopt;
    return best;
  }
}

template <ScalarType S>
bool IndependenceTester<S>::is_independent(std::span<const S> v) const {
  check_length(dimension_, v.size(), "independence test");
  if (full()) return false;
  std::vector<S> w(v.begin(), v.end());
  double scale = 0.0;
  if constexpr (!ScalarTraits<S>::exact)
    scale = std::max(largest_pivot_, max_magnitude<S>(v));
  return reduce(w, scale).has_value();
}

template <ScalarType S>
bool IndependenceTester<S>::try_insert(std::span<const S> v) {
  check_length(dimension_, v.size(), "independence test");
  if (full()) return false;
  std::vector<S> w(v.begin(), v.end());
  double scale = 0.0;
  if constexpr (!ScalarTraits<S>::exact)
    scale = std::max(largest_pivot_, max_magnitude<S>(v));
  const auto pivot = reduce(w, scale);
  if (!pivot) return false;
  const S pivot_value = w[*pivot];
  if constexpr (!ScalarTraits<S>::exact)
    largest_pivot_ = std::max(largest_pivot_, std::fabs(pivot_value));
  for (auto& x : w) {
    if (!ScalarTraits<S>::is_zero(x, 0.0)) x /= pivot_value;
  }
  w[*pivot] = S(1);
  basis_.push_back(std::move(w));
  pivots_.push_back(*pivot);
  return true;
}

template <ScalarType S>
std::size_t rank(const Matrix<S>& m, double pivot_tolerance) {
  return independent_rows(m, pivot_tolerance).size();
}

template <ScalarType S>
std::vector<std::size_t> independent_rows(const Matrix<S>& m,
                                          double pivot_tolerance) {
  IndependenceTester<S> tester(m.cols(), pivot_tolerance);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m.rows() && !tester.full(); ++i) {
    if (tester.try_insert(m.row(i))) kept.push_back(i);
  }
  return kept;
}

template <ScalarType S>
std::optional<std::vector<S>> solve_coefficients(
    const std::vector<std::vector<S>>& basis, const std::vector<S>& target,
    double pivot_tolerance) {
  const std::size_t n = target.size();
  const std::size_t k = basis.size();
  for (const auto& b : basis) check_length(n, b.size(), "solve_coefficients");

  // Augmented system [A | t] with A's columns the basis vectors.
  Matrix<S> a(n, k + 1);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      a(i, j) = basis[j][i];
      scale = std::max(
          scale, ScalarTraits<S>::to_double(ScalarTraits<S>::abs(a(i, j))));
    }
    a(i, k) = target[i];
  }
  const double threshold =
      ScalarTraits<S>::exact ? 0.0 : pivot_tolerance * std::max(scale, 1e-300);
  auto negligible = [&](const S& x) {
    return ScalarTraits<S>::is_zero(x, threshold);
  };

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t best = n;
    double best_mag = 0.0;
    for (std::size_t i = row; i < n; ++i) {
      if (negligible(a(i, col))) continue;
      const double mag =
          ScalarTraits<S>::to_double(ScalarTraits<S>::abs(a(i, col)));
      if (best == n || (!ScalarTraits<S>::exact && mag > best_mag)) {
        best = i;
        best_mag = mag;
        if constexpr (ScalarTraits<S>::exact) break;
      }
    }
    if (best == n) continue;
    if (best != row)
      for (std::size_t j = 0; j <= k; ++j) std::swap(a(row, j), a(best, j));
    const S pivot = a(row, col);
    for (std::size_t j = 0; j <= k; ++j) a(row, j) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || ScalarTraits<S>::is_zero(a(i, col), 0.0)) continue;
      const S factor = a(i, col);
      for (std::size_t j = 0; j <= k; ++j) a(i, j) -= factor * a(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i) {
    const double t_scale = std::max(
        scale, ScalarTraits<S>::to_double(ScalarTraits<S>::abs(target[i])));
    const double t_threshold =
        ScalarTraits<S>::exact ? 0.0 : pivot_tolerance * t_scale;
    if (!ScalarTraits<S>::is_zero(a(i, k), t_threshold)) return std::nullopt;
  }
  std::vector<S> beta(k, S(0));
  for (std::size_t r = 0; r < pivot_cols.size(); ++r)
    beta[pivot_cols[r]] = a(r, k);
  return beta;
}

template <ScalarType S>
S dot(std::span<const S> a, std::span<const S> b) {
  check_length(a.size(), b.size(), "dot product");
  S acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <ScalarType S>
std::vector<S> row_times(std::span<const S> v, const Matrix<S>& m) {
  check_length(m.rows(), v.size(), "row vector times matrix");
  std::vector<S> out(m.cols(), S(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (ScalarTraits<S>::is_zero(v[i], 0.0)) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (ScalarTraits<S>::is_zero(m(i, j), 0.0)) continue;
      out[j] += v[i] * m(i, j);
    }
  }
  return out;
}

template <ScalarType S>
std::vector<S> times_column(const Matrix<S>& m, std::span<const S> v) {
  check_length(m.cols(), v.size(), "matrix times column vector");
  std::vector<S> out(m.rows(), S(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    S acc(0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (ScalarTraits<S>::is_zero(v[j], 0.0) ||
          ScalarTraits<S>::is_zero(m(i, j), 0.0))
        continue;
      acc += m(i, j) * v[j];
    }
    out[i] = std::move(acc);
  }
  return out;
}

#define HMPEQ_INSTANTIATE_LINALG(S)                                         \
  template class IndependenceTester<S>;                                     \
  template std::size_t rank<S>(const Matrix<S>&, double);                   \
  template std::vector<std::size_t> independent_rows<S>(const Matrix<S>&,   \
                                                        double);            \
  template std::optional<std::vector<S>> solve_coefficients<S>(             \
      const std::vector<std::vector<S>>&, const std::vector<S>&, double);   \
  template S dot<S>(std::span<const S>, std::span<const S>);                \
  template std::vector<S> row_times<S>(std::span<const S>, const Matrix<S>&); \
  template std::vector<S> times_column<S>(const Matrix<S>&, std::span<const S>);

HMPEQ_INSTANTIATE_LINALG(Rational)
HMPEQ_INSTANTIATE_LINALG(double)

#undef HMPEQ_INSTANTIATE_LINALG

}  // namespace hmpeq
