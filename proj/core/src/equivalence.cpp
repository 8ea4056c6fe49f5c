#include "hmpeq/equivalence.hpp"

#include <map>

namespace hmpeq {

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::kDimensionMismatch:
      return "dimension-mismatch";
    case Reason::kBasicMatrixMismatch:
      return "basic-matrix-mismatch";
    case Reason::kInitialRowMismatch:
      return "initial-row-mismatch";
    case Reason::kOneStepMismatch:
      return "one-step-mismatch";
    case Reason::kAllChecksPassed:
      return "all-checks-passed";
  }
  return "unknown";
}

namespace {

// Forward / backward vectors of `y` at the basis words of `x`, memoized by
// word so each one costs a single extension of a shorter cached vector.
template <ScalarType S>
class VectorCache {
 public:
  explicit VectorCache(const LinearRepresentation<S>& lr) : lr_(lr) {}

  const Vector<S>& forward(const Word& w) {
    if (auto it = fwd_.find(w); it != fwd_.end()) return it->second;
    Vector<S> v;
    if (w.empty()) {
      v = lr_.init();
    } else {
      const Word parent(std::vector<Symbol>(w.begin(), w.end() - 1));
      v = row_times<S>(forward(parent), lr_.op(w[w.size() - 1]));
    }
    return fwd_.emplace(w, std::move(v)).first->second;
  }

  const Vector<S>& backward(const Word& w) {
    if (auto it = bwd_.find(w); it != bwd_.end()) return it->second;
    Vector<S> v;
    if (w.empty()) {
      v = lr_.fin();
    } else {
      const Word rest(std::vector<Symbol>(w.begin() + 1, w.end()));
      v = times_column<S>(lr_.op(w[0]), backward(rest));
    }
    return bwd_.emplace(w, std::move(v)).first->second;
  }

 private:
  const LinearRepresentation<S>& lr_;
  std::map<Word, Vector<S>> fwd_;
  std::map<Word, Vector<S>> bwd_;
};

template <ScalarType S>
void mismatch(EquivalenceVerdict<S>& out, Reason reason, Word witness, S px,
              S py) {
  out.equivalent = false;
  out.reason = reason;
  out.witness = std::move(witness);
  out.value_x = std::move(px);
  out.value_y = std::move(py);
}

}  // namespace

template <ScalarType S>
EquivalenceVerdict<S> test_equivalence(const LinearRepresentation<S>& x,
                                       const LinearRepresentation<S>& y,
                                       const EquivalenceOptions& opts) {
  if (x.alphabet() != y.alphabet())
    throw AlphabetMismatch(
        "models must share the same alphabet in the same order");

  const auto bx = compute_basis(x, opts.numeric);
  const auto by = compute_basis(y, opts.numeric);

  EquivalenceVerdict<S> out;
  out.dim_x = bx.dimension();
  out.dim_y = by.dimension();
  out.rows = bx.rows;
  out.columns = bx.columns;
  out.stats_x = bx.stats;
  out.stats_y = by.stats;

  if (out.dim_x != out.dim_y) {
    out.equivalent = false;
    out.reason = Reason::kDimensionMismatch;
    if (opts.witness_search) {
      try {
        auto brute = brute_equiv(x, y, out.dim_x + out.dim_y,
                                 opts.oracle_budget, opts.numeric);
        if (!brute.equal) {
          out.witness = brute.witness;
          out.value_x = brute.value_x;
          out.value_y = brute.value_y;
        } else {
          out.note = "no distinguishing word of length <= " +
                     std::to_string(out.dim_x + out.dim_y) + " found";
        }
      } catch (const BudgetExceeded& e) {
        out.note = std::string("witness search skipped: ") + e.what();
      }
    }
    return out;
  }

  VectorCache<S> ycache(y);
  const auto& tol = opts.numeric;
  const std::size_t nrows = bx.rows.size();
  const std::size_t ncols = bx.columns.size();

  // Column 0 is the empty prefix: p(v) = q(v).
  for (std::size_t c = 0; c < ncols; ++c) {
    const Word& w = bx.columns[c];
    const auto& fy = ycache.forward(w);
    for (std::size_t r = 0; r < nrows; ++r) {
      const Word& v = bx.rows[r];
      S qy = dot<S>(fy, ycache.backward(v));
      if (!approx_equal(bx.hankel(r, c), qy, tol)) {
        mismatch(out,
                 w.empty() ? Reason::kInitialRowMismatch
                           : Reason::kBasicMatrixMismatch,
                 w + v, bx.hankel(r, c), std::move(qy));
        return out;
      }
    }
  }

  for (std::size_t c = 0; c < ncols; ++c) {
    const Word& w = bx.columns[c];
    const auto& fy = ycache.forward(w);
    for (Symbol a = 0; a < x.alphabet().size(); ++a) {
      const auto fya = row_times<S>(fy, y.op(a));
      for (std::size_t r = 0; r < nrows; ++r) {
        const Word& v = bx.rows[r];
        S qy = dot<S>(fya, ycache.backward(v));
        if (!approx_equal(bx.one_step[a](r, c), qy, tol)) {
          mismatch(out, Reason::kOneStepMismatch, w.appended(a) + v,
                   bx.one_step[a](r, c), std::move(qy));
          return out;
        }
      }
    }
  }

  out.equivalent = true;
  out.reason = Reason::kAllChecksPassed;
  return out;
}

template <ScalarType S>
PfaVerdict<S> test_equivalence_pfa(const PfaModel<S>& x, const PfaModel<S>& y,
                                   const EquivalenceOptions& opts) {
  if (x.alphabet != y.alphabet)
    throw AlphabetMismatch(
        "automata must share the same alphabet in the same order");
  const auto hx = compile_hmm(pfa_to_hmm(x));
  const auto hy = compile_hmm(pfa_to_hmm(y));

  PfaVerdict<S> out;
  out.process = test_equivalence(hx, hy, opts);
  if (out.process.witness) {
    const Word& u = *out.process.witness;
    const Symbol stop = static_cast<Symbol>(x.alphabet.size());
    std::size_t first_stop = u.size();
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] == stop) {
        first_stop = i;
        break;
      }
    bool tail_all_stop = first_stop < u.size();
    for (std::size_t i = first_stop; i < u.size(); ++i)
      tail_all_stop &= u[i] == stop;
    if (tail_all_stop)
      out.acceptance_witness =
          Word(std::vector<Symbol>(u.begin(), u.begin() + first_stop));
  }
  if (out.process.equivalent || out.acceptance_witness || !opts.witness_search)
    return out;

  // Prefer a witness of the form v$: search acceptance probabilities.
  const std::size_t sigma = x.alphabet.size();
  const std::size_t max_len = out.process.dim_x + out.process.dim_y;
  if (count_words_up_to(sigma, max_len) > opts.oracle_budget) return out;
  const Symbol stop = static_cast<Symbol>(sigma);
  for (const Word& v : words_up_to(sigma, max_len)) {
    S px = pfa_acceptance(x, v);
    S py = pfa_acceptance(y, v);
    if (!approx_equal(px, py, opts.numeric)) {
      out.process.witness = v.appended(stop);
      out.process.value_x = std::move(px);
      out.process.value_y = std::move(py);
      out.acceptance_witness = v;
      break;
    }
  }
  return out;
}

#define HMPEQ_INSTANTIATE_EQUIV(S)                                           \
  template EquivalenceVerdict<S> test_equivalence<S>(                        \
      const LinearRepresentation<S>&, const LinearRepresentation<S>&,        \
      const EquivalenceOptions&);                                            \
  template PfaVerdict<S> test_equivalence_pfa<S>(                            \
      const PfaModel<S>&, const PfaModel<S>&, const EquivalenceOptions&);

HMPEQ_INSTANTIATE_EQUIV(Rational)
HMPEQ_INSTANTIATE_EQUIV(double)

#undef HMPEQ_INSTANTIATE_EQUIV

}  // namespace hmpeq
