#include <benchmark/benchmark.h>

#include <random>

#include "hmpeq/equivalence.hpp"

namespace {

using namespace hmpeq;

// Dense float HMM with entries uniform in [0.05, 1], rows normalized.
HmmModel<double> dense_hmm(std::size_t n, std::size_t sigma, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::string> symbols;
  for (std::size_t a = 0; a < sigma; ++a) symbols.push_back(std::string(1, static_cast<char>('a' + a)));
  HmmModel<double> m{Alphabet(symbols), Vector<double>(n), Matrix<double>(n, n),
                     Matrix<double>(n, sigma)};
  auto normalize = [](auto begin, auto end) {
    double s = 0;
    for (auto it = begin; it != end; ++it) s += *it;
    for (auto it = begin; it != end; ++it) *it /= s;
  };
  for (auto& x : m.initial) x = u(rng);
  normalize(m.initial.begin(), m.initial.end());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n);
    for (auto& x : row) x = u(rng);
    normalize(row.begin(), row.end());
    for (std::size_t j = 0; j < n; ++j) m.transition(i, j) = row[j];
    std::vector<double> em(sigma);
    for (auto& x : em) x = u(rng);
    normalize(em.begin(), em.end());
    for (std::size_t a = 0; a < sigma; ++a) m.emission(i, a) = em[a];
  }
  return m;
}

// Exact n-state HMM: state i moves to i+1 (mod n), emits a with i/n.
HmmModel<Rational> cyclic_hmm(std::size_t n) {
  HmmModel<Rational> m{Alphabet({"a", "b"}), Vector<Rational>(n, Rational(0)),
                       Matrix<Rational>(n, n), Matrix<Rational>(n, 2)};
  m.initial[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    m.transition(i, (i + 1) % n) = 1;
    Rational p(static_cast<long>(i + 1), static_cast<long>(n + 1));
    p.canonicalize();
    m.emission(i, 0) = p;
    m.emission(i, 1) = Rational(1) - p;
  }
  return m;
}

void BM_ComputeBasisFloat(benchmark::State& state) {
  const auto lr = compile_hmm(dense_hmm(static_cast<std::size_t>(state.range(0)), 2, 1));
  for (auto _ : state) benchmark::DoNotOptimize(compute_basis(lr));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComputeBasisFloat)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_EquivalenceFloat(benchmark::State& state) {
  const auto lr = compile_hmm(dense_hmm(static_cast<std::size_t>(state.range(0)), 2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(test_equivalence(lr, lr));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EquivalenceFloat)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_EquivalenceExact(benchmark::State& state) {
  const auto lr = compile_hmm(cyclic_hmm(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(test_equivalence(lr, lr));
}
BENCHMARK(BM_EquivalenceExact)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
