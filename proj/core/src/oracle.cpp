#include "hmpeq/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hmpeq {
namespace {

// Local kernels; deliberately not the ones in linalg.cpp.

template <ScalarType S>
Vector<S> apply_left(const Vector<S>& row, const Matrix<S>& m) {
  Vector<S> out(m.cols(), S(0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out[j] += row[i] * m(i, j);
  return out;
}

template <ScalarType S>
Vector<S> apply_right(const Matrix<S>& m, const Vector<S>& col) {
  Vector<S> out(m.rows(), S(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * col[j];
  return out;
}

template <ScalarType S>
S inner(const Vector<S>& a, const Vector<S>& b) {
  S acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void check_budget(std::size_t needed, std::size_t budget, const char* what) {
  if (needed > budget)
    throw BudgetExceeded(std::string(what) + " needs " +
                         std::to_string(needed) + " entries, budget is " +
                         std::to_string(budget));
}

std::size_t checked_square(std::size_t n) {
  if (n != 0 && n > static_cast<std::size_t>(-1) / n)
    return static_cast<std::size_t>(-1);
  return n * n;
}

// Position of w in the length-then-lexicographic enumeration of words.
std::size_t word_index(const Word& w, std::size_t sigma) {
  std::size_t lex = 0;
  for (Symbol a : w) lex = lex * sigma + a;
  return (w.empty() ? 0 : count_words_up_to(sigma, w.size() - 1)) + lex;
}

// Prefix vectors init * T_w for every word of `words` (which must be the
// full length-lex enumeration), each obtained from the vector of its
// parent w[0 .. |w|-2].
template <ScalarType S>
std::vector<Vector<S>> all_prefix_vectors(const LinearRepresentation<S>& lr,
                                          const std::vector<Word>& words) {
  const std::size_t sigma = lr.alphabet().size();
  std::vector<Vector<S>> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (w.empty()) {
      out[i] = lr.init();
      continue;
    }
    const Word parent(std::vector<Symbol>(w.begin(), w.end() - 1));
    out[i] = apply_left(out[word_index(parent, sigma)],
                        lr.operators()[w[w.size() - 1]]);
  }
  return out;
}

// Suffix vectors T_v * fin, each from the vector of v[1 ..].
template <ScalarType S>
std::vector<Vector<S>> all_suffix_vectors(const LinearRepresentation<S>& lr,
                                          const std::vector<Word>& words) {
  const std::size_t sigma = lr.alphabet().size();
  std::vector<Vector<S>> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& v = words[i];
    if (v.empty()) {
      out[i] = lr.fin();
      continue;
    }
    const Word rest(std::vector<Symbol>(v.begin() + 1, v.end()));
    out[i] = apply_right(lr.operators()[v[0]], out[word_index(rest, sigma)]);
  }
  return out;
}

template <ScalarType S>
std::size_t block_rank(const std::vector<Vector<S>>& prefix,
                       const std::vector<Vector<S>>& suffix,
                       const std::vector<std::size_t>& row_words,
                       const std::vector<std::size_t>& col_words,
                       double tol) {
  Matrix<S> block(row_words.size(), col_words.size());
  for (std::size_t r = 0; r < row_words.size(); ++r)
    for (std::size_t c = 0; c < col_words.size(); ++c)
      block(r, c) = inner(prefix[col_words[c]], suffix[row_words[r]]);
  return rank(block, tol);
}

}  // namespace

template <ScalarType S>
const S& ProbTable<S>::at(const Word& w) const {
  if (w.size() > max_length)
    throw std::out_of_range("word longer than the table's maximum length");
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w)
    throw std::out_of_range("word not in table");
  return probs[static_cast<std::size_t>(it - words.begin())];
}

template <ScalarType S>
ProbTable<S> enumerate_probs(const LinearRepresentation<S>& lr,
                             std::size_t max_length, std::size_t budget) {
  const std::size_t sigma = lr.alphabet().size();
  check_budget(count_words_up_to(sigma, max_length), budget,
               "probability table");
  ProbTable<S> table;
  table.max_length = max_length;
  table.words = words_up_to(sigma, max_length);
  const auto prefix = all_prefix_vectors(lr, table.words);
  table.probs.reserve(table.words.size());
  for (const auto& f : prefix) table.probs.push_back(inner(f, lr.fin()));
  return table;
}

template <ScalarType S>
BruteComparison<S> brute_equiv(const LinearRepresentation<S>& x,
                               const LinearRepresentation<S>& y,
                               std::size_t max_length, std::size_t budget,
                               const NumericOptions& opts) {
  if (x.alphabet() != y.alphabet())
    throw AlphabetMismatch("models are over different alphabets");
  const auto tx = enumerate_probs(x, max_length, budget);
  const auto ty = enumerate_probs(y, max_length, budget);
  BruteComparison<S> out;
  for (std::size_t i = 0; i < tx.words.size(); ++i) {
    if (!approx_equal(tx.probs[i], ty.probs[i], opts)) {
      out.equal = false;
      out.witness = tx.words[i];
      out.value_x = tx.probs[i];
      out.value_y = ty.probs[i];
      break;
    }
  }
  return out;
}

template <ScalarType S>
std::size_t hankel_rank(const LinearRepresentation<S>& lr,
                        std::size_t max_length, std::size_t budget,
                        const NumericOptions& opts) {
  const std::size_t sigma = lr.alphabet().size();
  const std::size_t count = count_words_up_to(sigma, max_length);
  check_budget(count, budget, "Hankel word list");
  const auto words = words_up_to(sigma, max_length);
  const auto prefix = all_prefix_vectors(lr, words);
  const auto suffix = all_suffix_vectors(lr, words);

  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  if (checked_square(count) <= budget) {
    for (std::size_t i = 0; i < count; ++i) {
      rows.push_back(i);
      cols.push_back(i);
    }
  } else {
    IndependenceTester<S> row_test(lr.dimension(), opts.pivot_tolerance);
    IndependenceTester<S> col_test(lr.dimension(), opts.pivot_tolerance);
    for (std::size_t i = 0; i < count; ++i) {
      if (row_test.try_insert(suffix[i])) rows.push_back(i);
      if (col_test.try_insert(prefix[i])) cols.push_back(i);
    }
  }
  return block_rank(prefix, suffix, rows, cols, opts.pivot_tolerance);
}

template <ScalarType S>
S pfa_acceptance(const PfaModel<S>& pfa, const Word& v) {
  pfa.alphabet.check(v);
  Vector<S> state = pfa.initial;
  for (Symbol a : v) state = apply_left(state, pfa.transitions[a]);
  return inner(state, pfa.final);
}

#define HMPEQ_INSTANTIATE_ORACLE(S)                                           \
  template struct ProbTable<S>;                                               \
  template ProbTable<S> enumerate_probs<S>(const LinearRepresentation<S>&,    \
                                           std::size_t, std::size_t);         \
  template BruteComparison<S> brute_equiv<S>(                                 \
      const LinearRepresentation<S>&, const LinearRepresentation<S>&,         \
      std::size_t, std::size_t, const NumericOptions&);                       \
  template std::size_t hankel_rank<S>(const LinearRepresentation<S>&,         \
                                      std::size_t, std::size_t,               \
                                      const NumericOptions&);                 \
  template S pfa_acceptance<S>(const PfaModel<S>&, const Word&);

HMPEQ_INSTANTIATE_ORACLE(Rational)
HMPEQ_INSTANTIATE_ORACLE(double)

#undef HMPEQ_INSTANTIATE_ORACLE

}  // namespace hmpeq
