#pragma once

#include <variant>
#include <vector>

#include "hmpeq/alphabet.hpp"
#include "hmpeq/errors.hpp"
#include "hmpeq/scalar.hpp"

namespace hmpeq {

/// Hidden Markov model: the process starts in state s with probability
/// initial[s], emits symbol a with probability emission(s, a), then moves to
/// state s' with probability transition(s, s').
template <ScalarType S>
struct HmmModel {
  Alphabet alphabet;
  Vector<S> initial;      // n
  Matrix<S> transition;   // n x n
  Matrix<S> emission;     // n x |alphabet|

  std::size_t states() const noexcept { return initial.size(); }
  friend bool operator==(const HmmModel&, const HmmModel&) = default;
};

/// Quantum random walk on C^k. Coordinate m is labelled by symbol
/// labels[m]; one step applies the unitary `evolution` and then collapses
/// onto the coordinates carrying the emitted symbol.
template <ScalarType S>
struct QrwModel {
  Alphabet alphabet;
  std::vector<Symbol> labels;       // k
  Matrix<Complex<S>> evolution;     // k x k, unitary
  Vector<Complex<S>> psi0;          // k, unit norm

  std::size_t k() const noexcept { return labels.size(); }
  friend bool operator==(const QrwModel&, const QrwModel&) = default;
};

/// Probabilistic automaton with final probabilities. From state s the
/// automaton reads a and moves to s' with probability transitions[a](s, s'),
/// or stops with probability final[s].
template <ScalarType S>
struct PfaModel {
  Alphabet alphabet;
  Vector<S> initial;                 // n
  Vector<S> final;                   // n
  std::vector<Matrix<S>> transitions;  // one n x n matrix per symbol

  std::size_t states() const noexcept { return initial.size(); }
  friend bool operator==(const PfaModel&, const PfaModel&) = default;
};

template <ScalarType S>
using Model = std::variant<HmmModel<S>, QrwModel<S>, PfaModel<S>>;

/// Checks every invariant and reports all violations with field paths; an
/// empty result means the model is valid. In float mode sums and unitarity
/// are checked within `tolerance`; exact models are checked exactly.
template <ScalarType S>
std::vector<Violation> validate(const HmmModel<S>& m,
                                double tolerance = kDefaultCompareTolerance);
template <ScalarType S>
std::vector<Violation> validate(const QrwModel<S>& m,
                                double tolerance = kDefaultCompareTolerance);
template <ScalarType S>
std::vector<Violation> validate(const PfaModel<S>& m,
                                double tolerance = kDefaultCompareTolerance);

template <ScalarType S>
std::vector<Violation> validate(const Model<S>& m,
                                double tolerance = kDefaultCompareTolerance) {
  return std::visit([&](const auto& x) { return validate(x, tolerance); }, m);
}

/// Throws ValidationError when `validate` reports anything.
template <ScalarType S>
void require_valid(const Model<S>& m,
                   double tolerance = kDefaultCompareTolerance) {
  auto violations = validate(m, tolerance);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

/// Stop-symbol reduction. The result is an HMM over alphabet + "$" with
/// |alphabet| * n + 1 hidden states: state (a, s') means "just read a and
/// moved to s'", and one absorbing state emits "$" forever. For every word v
/// over the original alphabet, P(v$) equals the automaton's acceptance
/// probability initial^T M_{v1} ... M_{vt} final.
///
/// Throws ValidationError for an invalid automaton.
template <ScalarType S>
HmmModel<S> pfa_to_hmm(const PfaModel<S>& pfa);

/// Index of the absorbing stop state in the HMM returned by pfa_to_hmm.
template <ScalarType S>
std::size_t stop_state(const PfaModel<S>& pfa) {
  return pfa.alphabet.size() * pfa.states();
}

}  // namespace hmpeq
