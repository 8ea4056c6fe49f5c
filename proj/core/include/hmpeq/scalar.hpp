#pragma once

// Scalar field abstraction. Two scalar types are supported and every
// algorithm in the library is instantiated for both:
//
//   Rational  exact arbitrary-precision rationals (the default). Field
//             operations are error-free and equality is exact. No rounding
//             is ever applied, so numerators and denominators may grow
//             along long products.
//   double    opt-in binary floating point. Zero tests and comparisons
//             use tolerances from NumericOptions.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hmpeq {

using Rational = mpq_class;

inline constexpr double kDefaultPivotTolerance = 1e-9;
inline constexpr double kDefaultCompareTolerance = 1e-9;

/// Tolerances for float mode; ignored by exact scalars.
struct NumericOptions {
  /// Relative pivot tolerance used by rank and independence tests.
  double pivot_tolerance = kDefaultPivotTolerance;
  /// Absolute tolerance used when comparing probabilities.
  double compare_tolerance = kDefaultCompareTolerance;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view mode_name = "exact";

  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  /// Lowest terms, "p" or "p/q".
  static std::string to_string(const Rational& x);
  static bool is_zero(const Rational& x, double /*threshold*/) {
    return sgn(x) == 0;
  }
  static bool near(const Rational& x, const Rational& y, double /*tol*/) {
    return x == y;
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view mode_name = "float";

  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  /// Shortest round-trip form, always with a decimal point.
  static std::string to_string(double x);
  static bool is_zero(double x, double threshold) {
    return std::fabs(x) <= threshold;
  }
  static bool near(double x, double y, double tol) {
    return std::fabs(x - y) <= tol;
  }
};

template <class S>
concept ScalarType = requires { ScalarTraits<S>::exact; };

template <ScalarType S>
std::string to_string(const S& x) {
  return ScalarTraits<S>::to_string(x);
}

template <ScalarType S>
bool approx_equal(const S& x, const S& y, const NumericOptions& opts = {}) {
  return ScalarTraits<S>::near(x, y, opts.compare_tolerance);
}

/// Complex number over a real scalar type. Over Rational these are the
/// Gaussian rationals.
template <ScalarType S>
struct Complex {
  S re{0};
  S im{0};

  Complex() = default;
  Complex(S r) : re(std::move(r)), im(0) {}  // NOLINT(runtime/explicit)
  Complex(S r, S i) : re(std::move(r)), im(std::move(i)) {}

  Complex conj() const { return {re, -im}; }
  S norm2() const { return re * re + im * im; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <class T>
using Vector = std::vector<T>;

/// Dense row-major matrix. Rows are never ragged by construction.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds a matrix from nested rows; throws DimensionMismatch on ragged
  /// input.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

}  // namespace hmpeq

#include "hmpeq/errors.hpp"

namespace hmpeq {

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw DimensionMismatch("ragged matrix: row " + std::to_string(i) +
                              " has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(c));
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

}  // namespace hmpeq
