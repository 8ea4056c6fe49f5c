#include <gtest/gtest.h>

#include <algorithm>

#include "hmpeq/basis.hpp"
#include "hmpeq/linalg.hpp"
#include "hmpeq/oracle.hpp"
#include "random_models.hpp"

namespace hmpeq {
namespace {

using Q = Rational;
using CQ = Complex<Q>;

Q q(long p, long d = 1) {
  Q x(p, d);
  x.canonicalize();
  return x;
}

LinearRepresentation<Q> coin() {
  return compile_hmm(HmmModel<Q>{Alphabet({"a", "b"}), {q(1)},
                                 Matrix<Q>::from_rows({{q(1)}}),
                                 Matrix<Q>::from_rows({{q(1, 2), q(1, 2)}})});
}

LinearRepresentation<Q> always_a() {
  return compile_hmm(HmmModel<Q>{
      Alphabet({"a", "b"}), {q(1, 2), q(1, 2)},
      Matrix<Q>::from_rows({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}),
      Matrix<Q>::from_rows({{q(1), q(0)}, {q(1), q(0)}})});
}

// E = identity, M uniform, pi = (1, 0).
LinearRepresentation<Q> distinct_emission() {
  return compile_hmm(HmmModel<Q>{
      Alphabet({"a", "b"}), {q(1), q(0)},
      Matrix<Q>::from_rows({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}),
      Matrix<Q>::from_rows({{q(1), q(0)}, {q(0), q(1)}})});
}

LinearRepresentation<Q> swap_qrw() {
  return compile_qrw(QrwModel<Q>{
      Alphabet({"a", "b"}), {0, 1},
      Matrix<CQ>::from_rows({{CQ(q(0)), CQ(q(1))}, {CQ(q(1)), CQ(q(0))}}),
      {CQ(q(1)), CQ(q(0))}});
}

TEST(RowGenerator, Coin) {
  const auto rows = row_generator(coin());
  EXPECT_EQ(rows.words, std::vector<Word>{Word{}});
}

TEST(RowGenerator, DistinctEmissionHasTwoRows) {
  const auto lr = distinct_emission();
  const auto rows = row_generator(lr);
  EXPECT_EQ(rows.words.size(), 2u);
  EXPECT_EQ(hankel_rank(lr, 3), 2u);
}

TEST(RowGenerator, DeterministicEmitterCollapses) {
  EXPECT_EQ(row_generator(always_a()).words, std::vector<Word>{Word{}});
}

TEST(ColumnBasis, Examples) {
  const auto lr1 = coin();
  EXPECT_EQ(column_basis(lr1, row_generator(lr1)).words,
            std::vector<Word>{Word{}});
  const auto lr2 = distinct_emission();
  EXPECT_EQ(column_basis(lr2, row_generator(lr2)).words.size(), 2u);
  const auto lr3 = always_a();
  EXPECT_EQ(column_basis(lr3, row_generator(lr3)).words,
            std::vector<Word>{Word{}});
}

Matrix<Q> raw_block(const RowGenerator<Q>& rows, const ColumnBasis<Q>& cols) {
  Matrix<Q> raw(rows.words.size(), cols.words.size());
  for (std::size_t r = 0; r < raw.rows(); ++r)
    for (std::size_t c = 0; c < raw.cols(); ++c)
      raw(r, c) = dot<Q>(cols.forward[c].coords, rows.backward[r].coords);
  return raw;
}

TEST(ReduceRows, SquareInputUnchanged) {
  const auto lr = distinct_emission();
  const auto rows = row_generator(lr);
  const auto cols = column_basis(lr, rows);
  const auto b = reduce_rows(rows, cols, raw_block(rows, cols));
  EXPECT_EQ(b.rows, rows.words);
  EXPECT_EQ(b.columns, cols.words);
}

TEST(ReduceRows, DropsDependentRow) {
  // I = {□, a}, J = {□}, raw rows (1) and (1/2).
  RowGenerator<Q> rows;
  rows.words = {Word{}, Word{0}};
  rows.backward = {BackwardVector<Q>{Word{}, {q(1)}},
                   BackwardVector<Q>{Word{0}, {q(1, 2)}}};
  ColumnBasis<Q> cols;
  cols.words = {Word{}};
  cols.forward = {ForwardVector<Q>{Word{}, {q(1)}}};
  const auto b =
      reduce_rows(rows, cols, Matrix<Q>::from_rows({{q(1)}, {q(1, 2)}}));
  EXPECT_EQ(b.rows, std::vector<Word>{Word{}});
  EXPECT_EQ(b.hankel, Matrix<Q>::from_rows({{q(1)}}));
  EXPECT_THROW(reduce_rows(rows, cols, Matrix<Q>(1, 1)), DimensionMismatch);
}

TEST(ReduceRows, RankTwoFromThreeStates) {
  // Search for a 3-state HMM whose generator set exceeds the dimension.
  testing::Rng rng(40);
  bool found = false;
  for (int trial = 0; trial < 5000 && !found; ++trial) {
    const auto lr = compile_hmm(testing::random_hmm(rng, 3, 2));
    const auto rows = row_generator(lr);
    const auto cols = column_basis(lr, rows);
    if (rows.words.size() != 3 || cols.words.size() != 2) continue;
    found = true;
    ASSERT_EQ(hankel_rank(lr, 3), 2u);
    const auto b = reduce_rows(rows, cols, raw_block(rows, cols));
    EXPECT_EQ(b.rows.size(), 2u);
    EXPECT_EQ(rank(b.hankel), 2u);
  }
  EXPECT_TRUE(found);
}

TEST(ComputeBasis, Examples) {
  const auto b1 = compute_basis(coin());
  EXPECT_EQ(b1.dimension(), 1u);
  EXPECT_EQ(b1.hankel, Matrix<Q>::from_rows({{q(1)}}));
  EXPECT_EQ(compute_basis(always_a()).dimension(), 1u);
  const auto lr = swap_qrw();
  EXPECT_EQ(compute_basis(lr).dimension(), hankel_rank(lr, 4));
}

TEST(ComputeBasis, CachesVectorsAndOneStepBlocks) {
  const auto lr = distinct_emission();
  const auto b = compute_basis(lr);
  ASSERT_EQ(b.backward.size(), b.rows.size());
  ASSERT_EQ(b.forward.size(), b.columns.size());
  ASSERT_EQ(b.one_step.size(), lr.alphabet().size());
  for (std::size_t r = 0; r < b.rows.size(); ++r) {
    EXPECT_EQ(b.backward[r].coords, lr.backward(b.rows[r]).coords);
    for (std::size_t c = 0; c < b.columns.size(); ++c) {
      EXPECT_EQ(b.hankel(r, c), lr.prob(b.columns[c] + b.rows[r]));
      for (Symbol a = 0; a < lr.alphabet().size(); ++a)
        EXPECT_EQ(b.one_step[a](r, c),
                  lr.prob(b.columns[c].appended(a) + b.rows[r]));
    }
  }
}

// ---- properties -----------------------------------------------------------

struct Case {
  LinearRepresentation<Q> lr;
  std::size_t n;
};

std::vector<Case> random_cases(unsigned seed, int count) {
  testing::Rng rng(seed);
  std::vector<Case> out;
  for (int i = 0; i < count; ++i) {
    if (i % 3 != 2) {
      const std::size_t n = 1 + i % 4;
      out.push_back({compile_hmm(testing::random_hmm(rng, n, 1 + i % 3)), n});
    } else {
      const std::size_t k = 1 + (i / 3) % 3;
      out.push_back(
          {compile_qrw(testing::random_qrw(rng, k, 1 + (i / 9) % k)), k * k});
    }
  }
  return out;
}

TEST(BasisProperty, StructuralInvariants) {
  for (const auto& [lr, n] : random_cases(41, 60)) {
    const auto b = compute_basis(lr);
    const std::size_t sigma = lr.alphabet().size();
    EXPECT_EQ(b.rows.size(), b.columns.size());
    EXPECT_EQ(rank(b.hankel), b.dimension());
    EXPECT_EQ(b.rows.front(), Word{});
    EXPECT_EQ(b.columns.front(), Word{});
    EXPECT_LE(b.stats.row_generator_size, n);
    EXPECT_LE(b.stats.row_iterations, sigma * n + 1);
    // Prefix/suffix closure: v in I non-empty => v[1..] in I's generator;
    // checked on the reduced sets through their construction words.
    const auto rows = row_generator(lr);
    for (const Word& v : rows.words) {
      if (v.empty()) continue;
      const Word rest(std::vector<Symbol>(v.begin() + 1, v.end()));
      EXPECT_NE(std::find(rows.words.begin(), rows.words.end(), rest),
                rows.words.end());
    }
    for (const Word& w : b.columns) {
      if (w.empty()) continue;
      const Word parent(std::vector<Symbol>(w.begin(), w.end() - 1));
      EXPECT_NE(std::find(b.columns.begin(), b.columns.end(), parent),
                b.columns.end());
    }
  }
}

TEST(BasisProperty, DimensionMatchesHankelRank) {
  for (const auto& [lr, n] : random_cases(42, 45))
    ASSERT_EQ(compute_basis(lr).dimension(), hankel_rank(lr, n));
}

TEST(BasisProperty, Deterministic) {
  for (const auto& [lr, n] : random_cases(43, 15)) {
    const auto a = compute_basis(lr);
    const auto b = compute_basis(lr);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.columns, b.columns);
    EXPECT_EQ(a.hankel, b.hankel);
  }
}

TEST(BasisProperty, RemovingAColumnDropsRank) {
  for (const auto& [lr, n] : random_cases(44, 30)) {
    const auto b = compute_basis(lr);
    for (std::size_t drop = 0; drop < b.columns.size(); ++drop) {
      Matrix<Q> sub(b.hankel.rows(), b.hankel.cols() - 1);
      for (std::size_t r = 0; r < sub.rows(); ++r)
        for (std::size_t c = 0, d = 0; c < b.hankel.cols(); ++c)
          if (c != drop) sub(r, d++) = b.hankel(r, c);
      EXPECT_LT(rank(sub), b.dimension());
    }
  }
}

TEST(BasisProperty, FloatModeMatchesExactOnSmallModels) {
  testing::Rng rng(45);
  for (int i = 0; i < 30; ++i) {
    const auto m = testing::random_hmm(rng, 1 + i % 4, 1 + i % 3);
    HmmModel<double> f{m.alphabet, {}, Matrix<double>(m.states(), m.states()),
                       Matrix<double>(m.states(), m.alphabet.size())};
    for (const auto& x : m.initial) f.initial.push_back(x.get_d());
    for (std::size_t r = 0; r < m.states(); ++r) {
      for (std::size_t c = 0; c < m.states(); ++c)
        f.transition(r, c) = m.transition(r, c).get_d();
      for (std::size_t c = 0; c < m.alphabet.size(); ++c)
        f.emission(r, c) = m.emission(r, c).get_d();
    }
    EXPECT_EQ(compute_basis(compile_hmm(f)).dimension(),
              compute_basis(compile_hmm(m)).dimension());
  }
}

}  // namespace
}  // namespace hmpeq
