#include <gtest/gtest.h>

#include "hmpeq/oracle.hpp"
#include "random_models.hpp"

namespace hmpeq {
namespace {

using Q = Rational;

Q q(long p, long d = 1) {
  Q x(p, d);
  x.canonicalize();
  return x;
}

HmmModel<Q> coin() {
  return {Alphabet({"a", "b"}), {q(1)}, Matrix<Q>::from_rows({{q(1)}}),
          Matrix<Q>::from_rows({{q(1, 2), q(1, 2)}})};
}

bool has_message(const std::vector<Violation>& vs, const std::string& needle) {
  for (const auto& v : vs)
    if (v.message.find(needle) != std::string::npos) return true;
  return false;
}

// ---- alphabet and words ---------------------------------------------------

TEST(Alphabet, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(Alphabet(std::vector<std::string>{}), std::invalid_argument);
  EXPECT_THROW(Alphabet({"a", "a"}), std::invalid_argument);
  EXPECT_THROW(Alphabet({"a", ""}), std::invalid_argument);
}

TEST(Alphabet, ParseAndFormatWords) {
  const Alphabet ab({"a", "b"});
  EXPECT_EQ(ab.parse_word("ab"), (Word{0, 1}));
  EXPECT_EQ(ab.parse_word("a b"), (Word{0, 1}));
  EXPECT_TRUE(ab.parse_word("").empty());
  EXPECT_TRUE(ab.parse_word("-").empty());
  EXPECT_TRUE(ab.parse_word("□").empty());
  EXPECT_EQ(ab.format(Word{1, 0}), "ba");
  EXPECT_EQ(ab.format(Word{}), "□");
  EXPECT_THROW(ab.parse_word("ac"), UnknownSymbol);

  const Alphabet long_tokens({"up", "down"});
  EXPECT_EQ(long_tokens.parse_word("up.down"), (Word{0, 1}));
  EXPECT_EQ(long_tokens.parse_word("updown"), (Word{0, 1}));
  EXPECT_EQ(long_tokens.format(Word{1, 1}), "down.down");
}

TEST(Word, OrderedByLengthThenLexicographic) {
  EXPECT_LT(Word{1}, (Word{0, 0}));
  EXPECT_LT((Word{0, 1}), (Word{1, 0}));
  EXPECT_LT(Word{}, Word{0});
}

TEST(Word, EnumerationOrderAndCount) {
  const auto ws = words_up_to(2, 2);
  ASSERT_EQ(ws.size(), 7u);
  EXPECT_EQ(ws[0], Word{});
  EXPECT_EQ(ws[1], Word{0});
  EXPECT_EQ(ws[3], (Word{0, 0}));
  EXPECT_EQ(ws[6], (Word{1, 1}));
  EXPECT_EQ(count_words_up_to(3, 4), 121u);
  EXPECT_EQ(count_words_up_to(2, 200), static_cast<std::size_t>(-1));
}

// ---- validation -----------------------------------------------------------

TEST(Validate, CoinIsValid) { EXPECT_TRUE(validate(coin()).empty()); }

TEST(Validate, TransitionRowSum) {
  HmmModel<Q> m{Alphabet({"a"}), {q(1), q(0)},
                Matrix<Q>::from_rows({{q(1, 2), q(2, 5)}, {q(0), q(1)}}),
                Matrix<Q>::from_rows({{q(1)}, {q(1)}})};
  const auto vs = validate(m);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].path, "M[0]");
  EXPECT_NE(vs[0].message.find("M row 0 sums to 9/10"), std::string::npos);
}

TEST(Validate, ReportsEveryViolation) {
  HmmModel<Q> m{Alphabet({"a", "b"}), {q(1, 2), q(1, 4)},
                Matrix<Q>::from_rows({{q(-1), q(2)}, {q(0), q(1)}}),
                Matrix<Q>::from_rows({{q(1), q(0)}, {q(1, 3), q(1, 3)}})};
  const auto vs = validate(m);
  EXPECT_TRUE(has_message(vs, "pi sums to 3/4"));
  EXPECT_TRUE(has_message(vs, "negative"));
  EXPECT_TRUE(has_message(vs, "E row 1 sums to 2/3"));
}

TEST(Validate, FloatWithinTolerance) {
  HmmModel<double> m{Alphabet({"a", "b"}), {1.0},
                     Matrix<double>::from_rows({{1.0}}),
                     Matrix<double>::from_rows({{0.1 + 0.2, 0.7}})};
  EXPECT_TRUE(validate(m).empty());
  m.emission(0, 1) = 0.71;
  EXPECT_FALSE(validate(m).empty());
}

TEST(Validate, IdentityQrwIsValid) {
  QrwModel<Q> m{Alphabet({"a", "b"}), {0, 1},
                Matrix<Complex<Q>>::identity(2), {q(1), q(0)}};
  EXPECT_TRUE(validate(m).empty());
}

TEST(Validate, NonUnitaryQrw) {
  QrwModel<Q> m{Alphabet({"a", "b"}), {0, 1},
                Matrix<Complex<Q>>::from_rows({{q(1), q(1)}, {q(0), q(1)}}),
                {q(1), q(0)}};
  EXPECT_TRUE(has_message(validate(m), "unitarity violated at entry (0,0)"));
}

TEST(Validate, QrwNormAndLabels) {
  QrwModel<Q> m{Alphabet({"a", "b"}), {0, 0},
                Matrix<Complex<Q>>::identity(2), {q(1), q(1)}};
  const auto vs = validate(m);
  EXPECT_TRUE(has_message(vs, "psi0"));
  EXPECT_TRUE(has_message(vs, "'b'"));
}

TEST(Validate, PfaOutgoingMass) {
  PfaModel<Q> m{Alphabet({"a"}), {q(1)}, {q(1, 2)},
                {Matrix<Q>::from_rows({{q(1, 4)}})}};
  EXPECT_TRUE(has_message(validate(m), "outgoing mass 3/4"));
}

TEST(Validate, RequireValidThrows) {
  HmmModel<Q> m = coin();
  m.initial[0] = q(1, 2);
  EXPECT_THROW(require_valid(Model<Q>(m)), ValidationError);
}

// ---- PFA reduction --------------------------------------------------------

TEST(PfaToHmm, ImmediateAcceptance) {
  PfaModel<Q> m{Alphabet({"a"}), {q(1)}, {q(1)},
                {Matrix<Q>::from_rows({{q(0)}})}};
  const auto hmm = pfa_to_hmm(m);
  EXPECT_EQ(hmm.alphabet.symbols(), (std::vector<std::string>{"a", "$"}));
  EXPECT_EQ(hmm.states(), 2u);
  const auto lr = compile_hmm(hmm);
  EXPECT_EQ(lr.prob(Word{1}), q(1));
}

TEST(PfaToHmm, SelfLoop) {
  PfaModel<Q> m{Alphabet({"a"}), {q(1)}, {q(1, 2)},
                {Matrix<Q>::from_rows({{q(1, 2)}})}};
  const auto lr = compile_hmm(pfa_to_hmm(m));
  EXPECT_EQ(lr.prob(Word{0, 1}), q(1, 4));
}

TEST(PfaToHmm, NoAcceptingMass) {
  // Two states looping forever on a; F = 0 everywhere.
  PfaModel<Q> m{Alphabet({"a"}), {q(1), q(0)}, {q(0), q(0)},
                {Matrix<Q>::from_rows({{q(0), q(1)}, {q(1), q(0)}})}};
  const auto lr = compile_hmm(pfa_to_hmm(m));
  for (const Word& v : words_up_to(1, 5)) EXPECT_EQ(lr.prob(v.appended(1)), q(0));
}

TEST(PfaToHmm, InvalidInputThrows) {
  PfaModel<Q> m{Alphabet({"a"}), {q(1)}, {q(1)},
                {Matrix<Q>::from_rows({{q(1)}})}};
  EXPECT_THROW(pfa_to_hmm(m), ValidationError);
}

TEST(PfaToHmmProperty, OutputValidAndMatchesAcceptance) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t sigma = 1 + trial % 2;
    const auto pfa = testing::random_pfa(rng, n, sigma);
    const auto hmm = pfa_to_hmm(pfa);
    ASSERT_TRUE(validate(hmm).empty());
    const auto table = enumerate_probs(compile_hmm(hmm), 7);
    const Symbol stop = static_cast<Symbol>(sigma);
    for (const Word& v : words_up_to(sigma, 6))
      ASSERT_EQ(table.at(v.appended(stop)), pfa_acceptance(pfa, v));
  }
}

TEST(RandomModels, GeneratorsProduceValidModels) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = testing::random_hmm(rng, 1 + trial % 4, 1 + trial % 3);
    EXPECT_TRUE(validate(h).empty());
    EXPECT_TRUE(validate(testing::split_state(h, 0, q(1, 3))).empty());
    EXPECT_TRUE(validate(testing::blend(h, h, q(2, 5))).empty());
    EXPECT_TRUE(validate(testing::perturb_emission(rng, h)).empty());
    const auto w = testing::random_qrw(rng, 1 + trial % 3, 1);
    EXPECT_TRUE(validate(w).empty());
    EXPECT_TRUE(validate(testing::diagonal_conjugation(rng, w)).empty());
    EXPECT_TRUE(validate(testing::permute_within_blocks(rng, w)).empty());
    const auto p = testing::random_pfa(rng, 1 + trial % 3, 1 + trial % 2);
    EXPECT_TRUE(validate(p).empty());
    EXPECT_TRUE(validate(testing::split_state(p, 0, q(3, 4))).empty());
  }
}

}  // namespace
}  // namespace hmpeq
