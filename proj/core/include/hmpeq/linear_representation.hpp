#pragma once

#include <optional>
#include <vector>

#include "hmpeq/alphabet.hpp"
#include "hmpeq/linalg.hpp"
#include "hmpeq/models.hpp"
#include "hmpeq/scalar.hpp"

namespace hmpeq {

/// Prefix state init * T_{w1} ... T_{ws} of a word w.
template <ScalarType S>
struct ForwardVector {
  Word word;
  Vector<S> coords;
};

/// Suffix functional T_{v1} ... T_{vt} * fin of a word v.
template <ScalarType S>
struct BackwardVector {
  Word word;
  Vector<S> coords;
};

/// Unified evaluator p(v) = init * T_{v1} * ... * T_{vt} * fin that every
/// model class compiles to.
///
/// All evaluation is left to right. Extending a forward or backward vector
/// by one symbol is a single O(n^2) vector-matrix product.
template <ScalarType S>
class LinearRepresentation {
 public:
  /// Throws DimensionMismatch unless there is one n x n operator per symbol
  /// and init, fin have length n.
  LinearRepresentation(Alphabet alphabet, std::vector<Matrix<S>> operators,
                       Vector<S> init, Vector<S> fin);

  std::size_t dimension() const noexcept { return init_.size(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Matrix<S>& op(Symbol a) const;
  const std::vector<Matrix<S>>& operators() const noexcept { return ops_; }
  const Vector<S>& init() const noexcept { return init_; }
  const Vector<S>& fin() const noexcept { return fin_; }

  ForwardVector<S> forward(const Word& w) const;
  ForwardVector<S> extend_forward(const ForwardVector<S>& f, Symbol a) const;

  BackwardVector<S> backward(const Word& v) const;
  BackwardVector<S> extend_backward(Symbol a, const BackwardVector<S>& b) const;

  S prob(const Word& v) const;

  /// p(w a v) from the forward vector of w and the backward vector of v, or
  /// p(w v) when `a` is empty.
  S prob_bilinear(const ForwardVector<S>& f, std::optional<Symbol> a,
                  const BackwardVector<S>& b) const;

 private:
  Alphabet alphabet_;
  std::vector<Matrix<S>> ops_;
  Vector<S> init_;
  Vector<S> fin_;
};

/// (T_a)_{ij} = E[i, a] * M[i, j], init = pi, fin = all ones.
template <ScalarType S>
LinearRepresentation<S> compile_hmm(const HmmModel<S>& hmm);

/// Real coordinates of a Hermitian k x k matrix Q, in this order: Re Q[m1,m2]
/// for m1 <= m2 (row-major), then Im Q[m1,m2] for m1 < m2 (row-major).
/// Returns k * k coordinates.
template <ScalarType S>
Vector<S> hermitian_coordinates(const Matrix<Complex<S>>& q);

/// Inverse of hermitian_coordinates.
template <ScalarType S>
Matrix<Complex<S>> hermitian_from_coordinates(const Vector<S>& coords,
                                              std::size_t k);

/// Representation of dimension k^2 over Hermitian-matrix coordinates.
/// With A_a the coordinate matrix of Q -> (P_a U) Q (P_a U)*, where P_a keeps
/// the coordinates labelled a, the operators are T_a = transpose(A_a), init
/// holds the coordinates of psi0 psi0*, and fin is the trace functional.
/// Transposing absorbs the right-to-left composition of the walk so
/// init * T_{v1} ... T_{vt} * fin = tr(A_{vt} ... A_{v1} Q_psi0).
template <ScalarType S>
LinearRepresentation<S> compile_qrw(const QrwModel<S>& qrw);

/// Compiles any model class; automata go through pfa_to_hmm first.
template <ScalarType S>
LinearRepresentation<S> compile(const Model<S>& model);

}  // namespace hmpeq
