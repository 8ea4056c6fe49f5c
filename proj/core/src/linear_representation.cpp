#include "hmpeq/linear_representation.hpp"

#include <string>
#include <tuple>

namespace hmpeq {
namespace {

enum class Part { kReal, kImag };

struct Coordinate {
  std::size_t row;
  std::size_t col;
  Part part;
};

std::vector<Coordinate> hermitian_layout(std::size_t k) {
  std::vector<Coordinate> layout;
  layout.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) layout.push_back({i, j, Part::kReal});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      layout.push_back({i, j, Part::kImag});
  return layout;
}

}  // namespace

template <ScalarType S>
LinearRepresentation<S>::LinearRepresentation(Alphabet alphabet,
                                              std::vector<Matrix<S>> operators,
                                              Vector<S> init, Vector<S> fin)
    : alphabet_(std::move(alphabet)),
      ops_(std::move(operators)),
      init_(std::move(init)),
      fin_(std::move(fin)) {
  const std::size_t n = init_.size();
  if (fin_.size() != n)
    throw DimensionMismatch("fin has length " + std::to_string(fin_.size()) +
                            ", init has length " + std::to_string(n));
  if (ops_.size() != alphabet_.size())
    throw DimensionMismatch("expected " + std::to_string(alphabet_.size()) +
                            " operators, got " + std::to_string(ops_.size()));
  for (const auto& t : ops_)
    if (t.rows() != n || t.cols() != n)
      throw DimensionMismatch("operator is " + std::to_string(t.rows()) + "x" +
                              std::to_string(t.cols()) + ", expected " +
                              std::to_string(n) + "x" + std::to_string(n));
}

template <ScalarType S>
const Matrix<S>& LinearRepresentation<S>::op(Symbol a) const {
  if (a >= ops_.size())
    throw UnknownSymbol("symbol index " + std::to_string(a) +
                        " outside alphabet of size " +
                        std::to_string(ops_.size()));
  return ops_[a];
}

template <ScalarType S>
ForwardVector<S> LinearRepresentation<S>::forward(const Word& w) const {
  alphabet_.check(w);
  ForwardVector<S> f{Word{}, init_};
  for (Symbol a : w) f = extend_forward(f, a);
  return f;
}

template <ScalarType S>
ForwardVector<S> LinearRepresentation<S>::extend_forward(
    const ForwardVector<S>& f, Symbol a) const {
  return {f.word.appended(a), row_times<S>(f.coords, op(a))};
}

template <ScalarType S>
BackwardVector<S> LinearRepresentation<S>::backward(const Word& v) const {
  alphabet_.check(v);
  BackwardVector<S> b{Word{}, fin_};
  for (auto it = v.symbols().rbegin(); it != v.symbols().rend(); ++it)
    b = extend_backward(*it, b);
  return b;
}

template <ScalarType S>
BackwardVector<S> LinearRepresentation<S>::extend_backward(
    Symbol a, const BackwardVector<S>& b) const {
  return {b.word.prepended(a), times_column<S>(op(a), b.coords)};
}

template <ScalarType S>
S LinearRepresentation<S>::prob(const Word& v) const {
  return dot<S>(forward(v).coords, fin_);
}

template <ScalarType S>
S LinearRepresentation<S>::prob_bilinear(const ForwardVector<S>& f,
                                         std::optional<Symbol> a,
                                         const BackwardVector<S>& b) const {
  if (f.coords.size() != dimension() || b.coords.size() != dimension())
    throw DimensionMismatch("vectors do not match representation dimension " +
                            std::to_string(dimension()));
  if (!a) return dot<S>(f.coords, b.coords);
  return dot<S>(row_times<S>(f.coords, op(*a)), b.coords);
}

template <ScalarType S>
LinearRepresentation<S> compile_hmm(const HmmModel<S>& hmm) {
  require_valid(Model<S>{hmm});
  const std::size_t n = hmm.states();
  std::vector<Matrix<S>> ops;
  ops.reserve(hmm.alphabet.size());
  for (Symbol a = 0; a < hmm.alphabet.size(); ++a) {
    Matrix<S> t(n, n, S(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t(i, j) = hmm.emission(i, a) * hmm.transition(i, j);
    ops.push_back(std::move(t));
  }
  return LinearRepresentation<S>(hmm.alphabet, std::move(ops), hmm.initial,
                                 Vector<S>(n, S(1)));
}

template <ScalarType S>
Vector<S> hermitian_coordinates(const Matrix<Complex<S>>& q) {
  const auto layout = hermitian_layout(q.rows());
  Vector<S> out;
  out.reserve(layout.size());
  for (const auto& c : layout)
    out.push_back(c.part == Part::kReal ? q(c.row, c.col).re
                                        : q(c.row, c.col).im);
  return out;
}

template <ScalarType S>
Matrix<Complex<S>> hermitian_from_coordinates(const Vector<S>& coords,
                                              std::size_t k) {
  const auto layout = hermitian_layout(k);
  if (coords.size() != layout.size())
    throw DimensionMismatch("expected " + std::to_string(layout.size()) +
                            " Hermitian coordinates, got " +
                            std::to_string(coords.size()));
  Matrix<Complex<S>> q(k, k);
  for (std::size_t c = 0; c < layout.size(); ++c) {
    const auto& [i, j, part] = layout[c];
    if (part == Part::kReal) {
      q(i, j).re = coords[c];
      q(j, i).re = coords[c];
    } else {
      q(i, j).im = coords[c];
      q(j, i).im = -coords[c];
    }
  }
  return q;
}

template <ScalarType S>
LinearRepresentation<S> compile_qrw(const QrwModel<S>& qrw) {
  require_valid(Model<S>{qrw});
  const std::size_t k = qrw.k();
  const std::size_t n = k * k;
  const auto layout = hermitian_layout(k);
  const Complex<S> one(S(1), S(0));
  const Complex<S> i_unit(S(0), S(1));

  std::vector<Matrix<S>> ops;
  ops.reserve(qrw.alphabet.size());
  for (Symbol a = 0; a < qrw.alphabet.size(); ++a) {
    // V = P_a U
    Matrix<Complex<S>> v(k, k);
    for (std::size_t r = 0; r < k; ++r)
      if (qrw.labels[r] == a)
        for (std::size_t c = 0; c < k; ++c) v(r, c) = qrw.evolution(r, c);

    // Row c of T_a holds the coordinates of V B_c V*, where B_c is the
    // Hermitian basis element with coordinate vector e_c. B_c has at most
    // two nonzero entries, so each image costs O(k^2).
    Matrix<S> t(n, n, S(0));
    for (std::size_t c = 0; c < n; ++c) {
      const auto& [p, q, part] = layout[c];
      std::vector<std::tuple<std::size_t, std::size_t, Complex<S>>> entries;
      if (part == Part::kReal) {
        entries.emplace_back(p, q, one);
        if (p != q) entries.emplace_back(q, p, one);
      } else {
        entries.emplace_back(p, q, i_unit);
        entries.emplace_back(q, p, -i_unit);
      }
      for (std::size_t r = 0; r < n; ++r) {
        const auto& [ri, rj, rpart] = layout[r];
        Complex<S> z;
        for (const auto& [bp, bq, bval] : entries)
          z += v(ri, bp) * bval * v(rj, bq).conj();
        t(c, r) = rpart == Part::kReal ? z.re : z.im;
      }
    }
    ops.push_back(std::move(t));
  }

  Matrix<Complex<S>> q0(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c)
      q0(r, c) = qrw.psi0[r] * qrw.psi0[c].conj();

  Vector<S> fin(n, S(0));
  for (std::size_t c = 0; c < n; ++c)
    if (layout[c].part == Part::kReal && layout[c].row == layout[c].col)
      fin[c] = S(1);

  return LinearRepresentation<S>(qrw.alphabet, std::move(ops),
                                 hermitian_coordinates<S>(q0), std::move(fin));
}

template <ScalarType S>
LinearRepresentation<S> compile(const Model<S>& model) {
  struct Visitor {
    LinearRepresentation<S> operator()(const HmmModel<S>& m) const {
      return compile_hmm(m);
    }
    LinearRepresentation<S> operator()(const QrwModel<S>& m) const {
      return compile_qrw(m);
    }
    LinearRepresentation<S> operator()(const PfaModel<S>& m) const {
      return compile_hmm(pfa_to_hmm(m));
    }
  };
  return std::visit(Visitor{}, model);
}

#define HMPEQ_INSTANTIATE_LR(S)                                              \
  template class LinearRepresentation<S>;                                    \
  template LinearRepresentation<S> compile_hmm<S>(const HmmModel<S>&);       \
  template LinearRepresentation<S> compile_qrw<S>(const QrwModel<S>&);       \
  template LinearRepresentation<S> compile<S>(const Model<S>&);              \
  template Vector<S> hermitian_coordinates<S>(const Matrix<Complex<S>>&);    \
  template Matrix<Complex<S>> hermitian_from_coordinates<S>(const Vector<S>&, \
                                                            std::size_t);

HMPEQ_INSTANTIATE_LR(Rational)
HMPEQ_INSTANTIATE_LR(double)

#undef HMPEQ_INSTANTIATE_LR

}  // namespace hmpeq
