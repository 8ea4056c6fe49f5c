#include "hmpeq/models.hpp"

#include <string>

namespace hmpeq {
namespace {

template <ScalarType S>
bool is_one(const S& x, double tol) {
  return ScalarTraits<S>::near(x, S(1), tol);
}

template <ScalarType S>
bool is_negative(const S& x) {
  return x < S(0);
}

std::string at(const std::string& name, std::size_t i) {
  return name + "[" + std::to_string(i) + "]";
}

std::string at(const std::string& name, std::size_t i, std::size_t j) {
  return name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

template <ScalarType S>
void check_distribution(const std::vector<S>& v, const std::string& path,
                        const std::string& what, double tol,
                        std::vector<Violation>& out) {
  S sum(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (is_negative(v[i]))
      out.push_back({at(path, i), what + " entry " + std::to_string(i) +
                                      " is negative (" + to_string(v[i]) +
                                      ")"});
    sum += v[i];
  }
  if (!is_one(sum, tol))
    out.push_back({path, what + " sums to " + to_string(sum) + ", expected 1"});
}

template <ScalarType S>
void check_stochastic_rows(const Matrix<S>& m, const std::string& name,
                           double tol, std::vector<Violation>& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    S sum(0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (is_negative(m(i, j)))
        out.push_back({at(name, i, j), name + " entry (" + std::to_string(i) +
                                           "," + std::to_string(j) +
                                           ") is negative (" +
                                           to_string(m(i, j)) + ")"});
      sum += m(i, j);
    }
    if (!is_one(sum, tol))
      out.push_back({at(name, i), name + " row " + std::to_string(i) +
                                      " sums to " + to_string(sum) +
                                      ", expected 1"});
  }
}

template <class T>
bool check_shape(const Matrix<T>& m, std::size_t rows, std::size_t cols,
                 const std::string& name, std::vector<Violation>& out) {
  if (m.rows() == rows && m.cols() == cols) return true;
  out.push_back({name, name + " is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " +
                           std::to_string(rows) + "x" + std::to_string(cols)});
  return false;
}

}  // namespace

template <ScalarType S>
std::vector<Violation> validate(const HmmModel<S>& m, double tol) {
  std::vector<Violation> out;
  const std::size_t n = m.states();
  if (n == 0) out.push_back({"n", "model has no hidden states"});
  if (m.alphabet.size() == 0) out.push_back({"alphabet", "alphabet is empty"});
  check_distribution(m.initial, "pi", "pi", tol, out);
  if (check_shape(m.transition, n, n, "M", out))
    check_stochastic_rows(m.transition, "M", tol, out);
  if (check_shape(m.emission, n, m.alphabet.size(), "E", out))
    check_stochastic_rows(m.emission, "E", tol, out);
  return out;
}

template <ScalarType S>
std::vector<Violation> validate(const QrwModel<S>& m, double tol) {
  std::vector<Violation> out;
  const std::size_t k = m.k();
  if (k == 0) out.push_back({"k", "wave-function space is empty"});
  if (m.alphabet.size() == 0) out.push_back({"alphabet", "alphabet is empty"});

  std::vector<bool> used(m.alphabet.size(), false);
  for (std::size_t i = 0; i < k; ++i) {
    if (m.labels[i] >= m.alphabet.size())
      out.push_back({at("labels", i), "label of coordinate " +
                                          std::to_string(i) +
                                          " is outside the alphabet"});
    else
      used[m.labels[i]] = true;
  }
  for (std::size_t a = 0; a < used.size(); ++a)
    if (!used[a])
      out.push_back({"labels", "symbol '" + m.alphabet[static_cast<Symbol>(a)] +
                                   "' labels no coordinate"});

  if (check_shape(m.evolution, k, k, "U", out)) {
    // U U* == I
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        Complex<S> acc;
        for (std::size_t l = 0; l < k; ++l)
          acc += m.evolution(i, l) * m.evolution(j, l).conj();
        const S expected = i == j ? S(1) : S(0);
        if (!ScalarTraits<S>::near(acc.re, expected, tol) ||
            !ScalarTraits<S>::near(acc.im, S(0), tol)) {
          out.push_back({at("U", i, j), "unitarity violated at entry (" +
                                            std::to_string(i) + "," +
                                            std::to_string(j) + ")"});
        }
      }
    }
  }

  if (m.psi0.size() != k) {
    out.push_back({"psi0", "psi0 has " + std::to_string(m.psi0.size()) +
                               " entries, expected " + std::to_string(k)});
  } else {
    S norm(0);
    for (const auto& z : m.psi0) norm += z.norm2();
    if (!is_one(norm, tol))
      out.push_back({"psi0", "psi0 has squared norm " + to_string(norm) +
                                 ", expected 1"});
  }
  return out;
}

template <ScalarType S>
std::vector<Violation> validate(const PfaModel<S>& m, double tol) {
  std::vector<Violation> out;
  const std::size_t n = m.states();
  if (n == 0) out.push_back({"n", "automaton has no states"});
  if (m.alphabet.size() == 0) out.push_back({"alphabet", "alphabet is empty"});
  check_distribution(m.initial, "pi", "pi", tol, out);

  bool shapes_ok = true;
  if (m.final.size() != n) {
    out.push_back({"F", "F has " + std::to_string(m.final.size()) +
                            " entries, expected " + std::to_string(n)});
    shapes_ok = false;
  }
  if (m.transitions.size() != m.alphabet.size()) {
    out.push_back({"Ma", "expected one transition matrix per symbol (" +
                             std::to_string(m.alphabet.size()) + "), got " +
                             std::to_string(m.transitions.size())});
    shapes_ok = false;
  } else {
    for (std::size_t a = 0; a < m.transitions.size(); ++a)
      shapes_ok &= check_shape(m.transitions[a], n, n,
                               "Ma " + m.alphabet[static_cast<Symbol>(a)], out);
  }
  if (!shapes_ok) return out;

  for (std::size_t s = 0; s < n; ++s) {
    if (is_negative(m.final[s]))
      out.push_back({at("F", s), "F entry " + std::to_string(s) +
                                     " is negative (" + to_string(m.final[s]) +
                                     ")"});
    S mass = m.final[s];
    for (std::size_t a = 0; a < m.transitions.size(); ++a) {
      const auto name = "Ma " + m.alphabet[static_cast<Symbol>(a)];
      for (std::size_t t = 0; t < n; ++t) {
        const auto& x = m.transitions[a](s, t);
        if (is_negative(x))
          out.push_back({at(name, s, t), name + " entry (" +
                                             std::to_string(s) + "," +
                                             std::to_string(t) +
                                             ") is negative (" + to_string(x) +
                                             ")"});
        mass += x;
      }
    }
    if (!is_one(mass, tol))
      out.push_back({at("state", s), "state " + std::to_string(s) +
                                         " has outgoing mass " +
                                         to_string(mass) + ", expected 1"});
  }
  return out;
}

template <ScalarType S>
HmmModel<S> pfa_to_hmm(const PfaModel<S>& pfa) {
  require_valid(Model<S>{pfa});
  const std::size_t n = pfa.states();
  const std::size_t sigma = pfa.alphabet.size();
  const std::size_t states = sigma * n + 1;
  const std::size_t stop = sigma * n;
  auto state = [n](std::size_t a, std::size_t s) { return a * n + s; };

  HmmModel<S> hmm;
  hmm.alphabet = pfa.alphabet.extended(std::string(kStopSymbol));
  hmm.initial.assign(states, S(0));
  hmm.transition = Matrix<S>(states, states, S(0));
  hmm.emission = Matrix<S>(states, sigma + 1, S(0));

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < sigma; ++a)
      for (std::size_t t = 0; t < n; ++t)
        hmm.initial[state(a, t)] += pfa.initial[s] * pfa.transitions[a](s, t);
    hmm.initial[stop] += pfa.initial[s] * pfa.final[s];
  }

  for (std::size_t a = 0; a < sigma; ++a) {
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t from = state(a, s);
      hmm.emission(from, a) = S(1);
      for (std::size_t b = 0; b < sigma; ++b)
        for (std::size_t t = 0; t < n; ++t)
          hmm.transition(from, state(b, t)) = pfa.transitions[b](s, t);
      hmm.transition(from, stop) = pfa.final[s];
    }
  }
  hmm.emission(stop, sigma) = S(1);
  hmm.transition(stop, stop) = S(1);
  return hmm;
}

#define HMPEQ_INSTANTIATE_MODELS(S)                                          \
  template std::vector<Violation> validate<S>(const HmmModel<S>&, double);   \
  template std::vector<Violation> validate<S>(const QrwModel<S>&, double);   \
  template std::vector<Violation> validate<S>(const PfaModel<S>&, double);   \
  template HmmModel<S> pfa_to_hmm<S>(const PfaModel<S>&);

HMPEQ_INSTANTIATE_MODELS(Rational)
HMPEQ_INSTANTIATE_MODELS(double)

#undef HMPEQ_INSTANTIATE_MODELS

}  // namespace hmpeq
