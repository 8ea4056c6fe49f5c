#include "hmpeq/basis.hpp"

#include <deque>

namespace hmpeq {
namespace {

template <ScalarType S>
Vector<S> column_profile(const ForwardVector<S>& f,
                         const std::vector<BackwardVector<S>>& rows) {
  Vector<S> q;
  q.reserve(rows.size());
  for (const auto& b : rows) q.push_back(dot<S>(f.coords, b.coords));
  return q;
}

}  // namespace

template <ScalarType S>
RowGenerator<S> row_generator(const LinearRepresentation<S>& lr,
                              const NumericOptions& opts) {
  RowGenerator<S> out;
  IndependenceTester<S> tester(lr.dimension(), opts.pivot_tolerance);

  BackwardVector<S> seed{Word{}, lr.fin()};
  tester.try_insert(seed.coords);
  out.iterations = 1;

  std::deque<BackwardVector<S>> candidates;
  for (Symbol a = 0; a < lr.alphabet().size(); ++a)
    candidates.push_back(lr.extend_backward(a, seed));
  out.words.push_back(seed.word);
  out.backward.push_back(std::move(seed));

  while (!candidates.empty()) {
    BackwardVector<S> v = std::move(candidates.front());
    candidates.pop_front();
    ++out.iterations;
    if (!tester.try_insert(v.coords)) continue;
    for (Symbol a = 0; a < lr.alphabet().size(); ++a)
      candidates.push_back(lr.extend_backward(a, v));
    out.words.push_back(v.word);
    out.backward.push_back(std::move(v));
  }
  return out;
}

template <ScalarType S>
ColumnBasis<S> column_basis(const LinearRepresentation<S>& lr,
                            const RowGenerator<S>& rows,
                            const NumericOptions& opts) {
  ColumnBasis<S> out;
  IndependenceTester<S> tester(rows.backward.size(), opts.pivot_tolerance);

  ForwardVector<S> seed{Word{}, lr.init()};
  tester.try_insert(column_profile(seed, rows.backward));
  out.iterations = 1;

  std::deque<ForwardVector<S>> candidates;
  for (Symbol a = 0; a < lr.alphabet().size(); ++a)
    candidates.push_back(lr.extend_forward(seed, a));
  out.words.push_back(seed.word);
  out.forward.push_back(std::move(seed));

  while (!candidates.empty()) {
    ForwardVector<S> w = std::move(candidates.front());
    candidates.pop_front();
    ++out.iterations;
    if (!tester.try_insert(column_profile(w, rows.backward))) continue;
    for (Symbol a = 0; a < lr.alphabet().size(); ++a)
      candidates.push_back(lr.extend_forward(w, a));
    out.words.push_back(w.word);
    out.forward.push_back(std::move(w));
  }
  return out;
}

template <ScalarType S>
Basis<S> reduce_rows(const RowGenerator<S>& rows, const ColumnBasis<S>& cols,
                     const Matrix<S>& raw, const NumericOptions& opts) {
  if (raw.rows() != rows.words.size() || raw.cols() != cols.words.size())
    throw DimensionMismatch("raw Hankel block does not match |I| x |J|");
  const auto kept = independent_rows(raw, opts.pivot_tolerance);

  Basis<S> basis;
  basis.columns = cols.words;
  basis.forward = cols.forward;
  basis.hankel = Matrix<S>(kept.size(), raw.cols());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    basis.rows.push_back(rows.words[kept[r]]);
    basis.backward.push_back(rows.backward[kept[r]]);
    for (std::size_t c = 0; c < raw.cols(); ++c)
      basis.hankel(r, c) = raw(kept[r], c);
  }
  basis.stats.row_iterations = rows.iterations;
  basis.stats.column_iterations = cols.iterations;
  basis.stats.row_generator_size = rows.words.size();
  return basis;
}

template <ScalarType S>
Basis<S> compute_basis(const LinearRepresentation<S>& lr,
                       const NumericOptions& opts) {
  const auto rows = row_generator(lr, opts);
  const auto cols = column_basis(lr, rows, opts);

  Matrix<S> raw(rows.words.size(), cols.words.size());
  for (std::size_t c = 0; c < cols.forward.size(); ++c) {
    const auto q = column_profile(cols.forward[c], rows.backward);
    for (std::size_t r = 0; r < q.size(); ++r) raw(r, c) = q[r];
  }

  Basis<S> basis = reduce_rows(rows, cols, raw, opts);

  const std::size_t sigma = lr.alphabet().size();
  basis.one_step.assign(
      sigma, Matrix<S>(basis.rows.size(), basis.columns.size(), S(0)));
  for (std::size_t c = 0; c < basis.forward.size(); ++c) {
    for (Symbol a = 0; a < sigma; ++a) {
      const auto fa = row_times<S>(basis.forward[c].coords, lr.op(a));
      for (std::size_t r = 0; r < basis.backward.size(); ++r)
        basis.one_step[a](r, c) = dot<S>(fa, basis.backward[r].coords);
    }
  }
  return basis;
}

#define HMPEQ_INSTANTIATE_BASIS(S)                                            \
  template RowGenerator<S> row_generator<S>(const LinearRepresentation<S>&,   \
                                            const NumericOptions&);           \
  template ColumnBasis<S> column_basis<S>(const LinearRepresentation<S>&,     \
                                          const RowGenerator<S>&,             \
                                          const NumericOptions&);             \
  template Basis<S> reduce_rows<S>(const RowGenerator<S>&,                    \
                                   const ColumnBasis<S>&, const Matrix<S>&,   \
                                   const NumericOptions&);                    \
  template Basis<S> compute_basis<S>(const LinearRepresentation<S>&,          \
                                     const NumericOptions&);

HMPEQ_INSTANTIATE_BASIS(Rational)
HMPEQ_INSTANTIATE_BASIS(double)

#undef HMPEQ_INSTANTIATE_BASIS

}  // namespace hmpeq
