#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <ostream>

#include "hmpeq/equivalence.hpp"
#include "hmpeq/model_io.hpp"

namespace hmpeq::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  std::string format = "text";
  bool decimal = false;
  double tolerance = kDefaultPivotTolerance;
  double abs_tolerance = kDefaultCompareTolerance;
  bool witness_search = false;
  std::size_t budget = kDefaultOracleBudget;

  bool json() const { return format == "json"; }
  NumericOptions numeric() const { return {tolerance, abs_tolerance}; }
};

// Thrown for bad arguments detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

template <ScalarType S>
std::string value_text(const S& x, const Settings& s) {
  std::string out = to_string(x);
  if constexpr (ScalarTraits<S>::exact)
    if (s.decimal) out += " (~" + to_string(ScalarTraits<S>::to_double(x)) + ")";
  return out;
}

template <ScalarType S>
Json value_json(const S& x, const Settings& s) {
  if (s.decimal && ScalarTraits<S>::exact)
    return Json{{"value", to_string(x)},
                {"decimal", ScalarTraits<S>::to_double(x)}};
  return to_string(x);
}

Json header(std::string_view command, std::string_view mode) {
  return Json{{"format_version", kFormatVersion},
              {"command", command},
              {"mode", mode}};
}

template <ScalarType S>
Json tolerance_json(const Settings& s) {
  if constexpr (ScalarTraits<S>::exact) return nullptr;
  return Json{{"pivot", s.tolerance}, {"compare", s.abs_tolerance}};
}

std::string join_words(const Alphabet& alphabet, const std::vector<Word>& ws,
                       const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i)
    out += (i ? sep : "") + alphabet.format(ws[i]);
  return out;
}

Json words_json(const Alphabet& alphabet, const std::vector<Word>& ws) {
  Json arr = Json::array();
  for (const auto& w : ws) arr.push_back(alphabet.format(w));
  return arr;
}

void pfa_notice(const std::string& path, std::ostream& err) {
  err << "note: " << path
      << " is a probabilistic automaton; using its stop-symbol process over "
         "the alphabet extended by '$'\n";
}

template <ScalarType S>
LinearRepresentation<S> compile_noted(const Model<S>& m,
                                      const std::string& path,
                                      std::ostream& err) {
  if (std::holds_alternative<PfaModel<S>>(m)) pfa_notice(path, err);
  return compile(m);
}

// ---- equiv -----------------------------------------------------------------

template <ScalarType S>
int equiv(const Model<S>& a, const Model<S>& b, const std::string& path_a,
          const std::string& path_b, const Settings& s, std::ostream& out,
          std::ostream& err) {
  const auto lr_a = compile_noted(a, path_a, err);
  const auto lr_b = compile_noted(b, path_b, err);
  if (lr_a.alphabet() != lr_b.alphabet())
    throw AlphabetMismatch(
        "models must share the same alphabet in the same order");

  EquivalenceOptions opts;
  opts.numeric = s.numeric();
  opts.witness_search = s.witness_search;
  opts.oracle_budget = s.budget;

  EquivalenceVerdict<S> v;
  std::optional<Word> acceptance;
  const auto* pa = std::get_if<PfaModel<S>>(&a);
  const auto* pb = std::get_if<PfaModel<S>>(&b);
  if (pa && pb) {
    auto pv = test_equivalence_pfa(*pa, *pb, opts);
    v = std::move(pv.process);
    acceptance = std::move(pv.acceptance_witness);
  } else {
    v = test_equivalence(lr_a, lr_b, opts);
  }

  const Alphabet& sigma = lr_a.alphabet();
  const std::string_view mode = ScalarTraits<S>::mode_name;
  if (s.json()) {
    Json j = header("equiv", mode);
    j["equivalent"] = v.equivalent;
    j["approximate"] = v.approximate;
    j["tolerance"] = tolerance_json<S>(s);
    j["reason"] = to_string(v.reason);
    j["dim_a"] = v.dim_x;
    j["dim_b"] = v.dim_y;
    j["I"] = words_json(sigma, v.rows);
    j["J"] = words_json(sigma, v.columns);
    j["witness"] = v.witness ? Json(sigma.format(*v.witness)) : Json(nullptr);
    j["value_a"] = v.value_x ? value_json(*v.value_x, s) : Json(nullptr);
    j["value_b"] = v.value_y ? value_json(*v.value_y, s) : Json(nullptr);
    if (pa && pb)
      j["acceptance_witness"] =
          acceptance ? Json(pa->alphabet.format(*acceptance)) : Json(nullptr);
    j["note"] = v.note.empty() ? Json(nullptr) : Json(v.note);
    out << j.dump(2) << "\n";
  } else {
    if (v.approximate)
      out << "verdict: "
          << (v.equivalent ? "equivalent within tolerance"
                           : "not equivalent (difference above tolerance)")
          << " [pivot " << to_string(s.tolerance) << ", compare "
          << to_string(s.abs_tolerance) << "]\n";
    else
      out << "verdict: " << (v.equivalent ? "equivalent" : "not equivalent")
          << "\n";
    out << "reason: " << to_string(v.reason) << "\n"
        << "dimensions: " << v.dim_x << " " << v.dim_y << "\n"
        << "I: " << join_words(sigma, v.rows) << "\n"
        << "J: " << join_words(sigma, v.columns) << "\n";
    if (v.witness) {
      const std::string w = sigma.format(*v.witness);
      out << "witness: " << w << "\n"
          << "p_A(" << w << ") = " << value_text(*v.value_x, s) << "\n"
          << "p_B(" << w << ") = " << value_text(*v.value_y, s) << "\n";
    }
    if (acceptance)
      out << "acceptance witness: " << pa->alphabet.format(*acceptance)
          << "\n";
    if (!v.note.empty()) out << "note: " << v.note << "\n";
  }
  return v.equivalent ? kExitEquivalent : kExitNotEquivalent;
}

// ---- dim / basis -----------------------------------------------------------

template <ScalarType S>
int dim(const Model<S>& m, const std::string& path, const Settings& s,
        std::ostream& out, std::ostream& err) {
  const auto lr = compile_noted(m, path, err);
  const auto b = compute_basis(lr, s.numeric());
  if (s.json()) {
    Json j = header("dim", ScalarTraits<S>::mode_name);
    j["kind"] = kind_name(m);
    j["representation_dimension"] = lr.dimension();
    j["dimension"] = b.dimension();
    j["row_iterations"] = b.stats.row_iterations;
    j["column_iterations"] = b.stats.column_iterations;
    out << j.dump(2) << "\n";
  } else {
    out << b.dimension() << "\n";
  }
  return 0;
}

template <ScalarType S>
int basis(const Model<S>& m, const std::string& path, const Settings& s,
          std::ostream& out, std::ostream& err) {
  const auto lr = compile_noted(m, path, err);
  const auto b = compute_basis(lr, s.numeric());
  const Alphabet& sigma = lr.alphabet();
  if (s.json()) {
    Json j = header("basis", ScalarTraits<S>::mode_name);
    j["dimension"] = b.dimension();
    j["I"] = words_json(sigma, b.rows);
    j["J"] = words_json(sigma, b.columns);
    Json p = Json::array();
    for (std::size_t r = 0; r < b.hankel.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < b.hankel.cols(); ++c)
        row.push_back(value_json(b.hankel(r, c), s));
      p.push_back(row);
    }
    j["P_IJ"] = p;
    out << j.dump(2) << "\n";
  } else {
    out << "I: " << join_words(sigma, b.rows) << "\n"
        << "J: " << join_words(sigma, b.columns) << "\n"
        << "P_IJ:\n";
    for (std::size_t r = 0; r < b.hankel.rows(); ++r) {
      out << " ";
      for (std::size_t c = 0; c < b.hankel.cols(); ++c)
        out << " " << value_text(b.hankel(r, c), s);
      out << "\n";
    }
  }
  return 0;
}

// ---- prob ------------------------------------------------------------------

template <ScalarType S>
int prob(const Model<S>& m, const std::string& path, const std::string& word,
         const Settings& s, std::ostream& out, std::ostream& err) {
  const auto lr = compile_noted(m, path, err);
  const Word w = lr.alphabet().parse_word(word);
  const S p = lr.prob(w);
  if (s.json()) {
    Json j = header("prob", ScalarTraits<S>::mode_name);
    j["word"] = lr.alphabet().format(w);
    j["probability"] = value_json(p, s);
    out << j.dump(2) << "\n";
  } else {
    out << value_text(p, s) << "\n";
  }
  return 0;
}

// ---- oracle ----------------------------------------------------------------

template <ScalarType S>
int oracle_single(const Model<S>& m, const std::string& path, std::size_t L,
                  const Settings& s, std::ostream& out, std::ostream& err) {
  const auto lr = compile_noted(m, path, err);
  const auto table = enumerate_probs(lr, L, s.budget);
  const Alphabet& sigma = lr.alphabet();
  if (s.json()) {
    Json j = header("oracle", ScalarTraits<S>::mode_name);
    j["max_length"] = L;
    Json rows = Json::array();
    for (std::size_t i = 0; i < table.words.size(); ++i)
      rows.push_back(Json{{"word", sigma.format(table.words[i])},
                          {"probability", value_json(table.probs[i], s)}});
    j["table"] = rows;
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < table.words.size(); ++i)
      out << sigma.format(table.words[i]) << "\t"
          << value_text(table.probs[i], s) << "\n";
  }
  return 0;
}

template <ScalarType S>
int oracle_pair(const Model<S>& a, const Model<S>& b,
                const std::string& path_a, const std::string& path_b,
                std::size_t L, const Settings& s, std::ostream& out,
                std::ostream& err) {
  const auto lr_a = compile_noted(a, path_a, err);
  const auto lr_b = compile_noted(b, path_b, err);
  const auto cmp = brute_equiv(lr_a, lr_b, L, s.budget, s.numeric());
  const Alphabet& sigma = lr_a.alphabet();
  if (s.json()) {
    Json j = header("oracle", ScalarTraits<S>::mode_name);
    j["max_length"] = L;
    j["equal"] = cmp.equal;
    j["witness"] =
        cmp.witness ? Json(sigma.format(*cmp.witness)) : Json(nullptr);
    j["value_a"] = cmp.value_x ? value_json(*cmp.value_x, s) : Json(nullptr);
    j["value_b"] = cmp.value_y ? value_json(*cmp.value_y, s) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else if (cmp.equal) {
    out << "equal on all words of length <= " << L << "\n";
  } else {
    const std::string w = sigma.format(*cmp.witness);
    out << "differ at " << w << "\n"
        << "p_A(" << w << ") = " << value_text(*cmp.value_x, s) << "\n"
        << "p_B(" << w << ") = " << value_text(*cmp.value_y, s) << "\n";
  }
  return cmp.equal ? kExitEquivalent : kExitNotEquivalent;
}

// ---- validate --------------------------------------------------------------

template <ScalarType S>
int validate_report(const Model<S>& m, const Settings& s, std::ostream& out) {
  std::size_t size = std::visit(
      [](const auto& x) -> std::size_t {
        if constexpr (requires { x.k(); })
          return x.k();
        else
          return x.states();
      },
      m);
  if (s.json()) {
    Json j = header("validate", ScalarTraits<S>::mode_name);
    j["valid"] = true;
    j["kind"] = kind_name(m);
    j["size"] = size;
    out << j.dump(2) << "\n";
  } else {
    out << "valid " << kind_name(m) << " (" << ScalarTraits<S>::mode_name
        << ", " << (std::holds_alternative<QrwModel<S>>(m) ? "k" : "n")
        << " = " << size << ")\n";
  }
  return 0;
}

// ---- plumbing --------------------------------------------------------------

AnyModel load(const std::string& path, const Settings& s) {
  try {
    return load_model_file(path, s.abs_tolerance);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.what());
  } catch (const ValidationError& e) {
    auto v = e.violations();
    for (auto& x : v) x.path = path + ": " + x.path;
    throw ValidationError(std::move(v));
  }
}

// Calls f(model_a, model_b) with both models at the same scalar type.
template <class F>
int with_pair(const AnyModel& a, const AnyModel& b, F&& f) {
  if (a.index() != b.index())
    throw ScalarModeMismatch(
        "cannot compare an exact-mode model with a float-mode model");
  if (const auto* x = std::get_if<Model<Rational>>(&a))
    return f(*x, std::get<Model<Rational>>(b));
  return f(std::get<Model<double>>(a), std::get<Model<double>>(b));
}

double env_tolerance() {
  const char* raw = std::getenv(kToleranceEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultCompareTolerance;
  char* end = nullptr;
  const double t = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(t >= 0))
    throw UsageError(std::string(kToleranceEnv) + " must be a non-negative "
                     "number, got '" + raw + "'");
  return t;
}

void report_error(const std::exception& e, std::ostream& err) {
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    err << "error: model violates its invariants\n";
    for (const auto& x : v->violations())
      err << "  " << x.path << ": " << x.message << "\n";
    return;
  }
  err << "error: " << e.what() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Settings s;
  try {
    s.tolerance = s.abs_tolerance = env_tolerance();
  } catch (const std::exception& e) {
    report_error(e, err);
    return kExitError;
  }

  CLI::App app{"Equivalence testing for hidden Markov models, quantum random "
               "walks and probabilistic automata"};
  app.name(args.empty() ? "hmpeq" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "hmpeq 0.1.0");

  app.add_option("--tolerance", s.tolerance,
                 "Float mode: relative pivot tolerance for rank tests "
                 "(default 1e-9, or $HMPEQ_TOLERANCE)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--abs-tolerance", s.abs_tolerance,
                 "Float mode: absolute tolerance for probability comparisons "
                 "(default 1e-9, or $HMPEQ_TOLERANCE)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--decimal", s.decimal,
               "Also print decimal approximations of exact values");
  app.add_option("--budget", s.budget,
                 "Maximum number of entries an oracle computation may use")
      ->check(CLI::PositiveNumber);

  std::string path_a;
  std::string path_b;
  std::string word;
  std::size_t max_length = 0;

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of A and B");
  equiv_cmd->add_option("A", path_a, "Model file")->required();
  equiv_cmd->add_option("B", path_b, "Model file")->required();
  equiv_cmd->add_flag("--witness-search", s.witness_search,
                      "On a dimension mismatch, search short words for a "
                      "distinguishing witness");

  auto* dim_cmd = app.add_subcommand("dim", "Print the process dimension");
  dim_cmd->add_option("MODEL", path_a, "Model file")->required();

  auto* basis_cmd = app.add_subcommand("basis", "Print I, J and P_IJ");
  basis_cmd->add_option("MODEL", path_a, "Model file")->required();

  auto* prob_cmd = app.add_subcommand("prob", "Print the probability of WORD");
  prob_cmd->add_option("MODEL", path_a, "Model file")->required();
  prob_cmd->add_option("WORD", word,
                       "Word; '-' or an empty string is the empty word")
      ->required();

  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Brute-force probability table or comparison up to length L");
  oracle_cmd->add_option("A", path_a, "Model file")->required();
  oracle_cmd->add_option("B", path_b, "Model file to compare against");
  oracle_cmd->add_option("-L,--length", max_length, "Maximum word length")
      ->required();

  auto* validate_cmd =
      app.add_subcommand("validate", "Parse and validate a model file");
  validate_cmd->add_option("MODEL", path_a, "Model file")->required();

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (equiv_cmd->parsed()) {
      const AnyModel a = load(path_a, s);
      const AnyModel b = load(path_b, s);
      return with_pair(a, b, [&](const auto& x, const auto& y) {
        return equiv(x, y, path_a, path_b, s, out, err);
      });
    }
    if (oracle_cmd->parsed()) {
      const AnyModel a = load(path_a, s);
      if (path_b.empty())
        return std::visit(
            [&](const auto& x) {
              return oracle_single(x, path_a, max_length, s, out, err);
            },
            a);
      const AnyModel b = load(path_b, s);
      return with_pair(a, b, [&](const auto& x, const auto& y) {
        return oracle_pair(x, y, path_a, path_b, max_length, s, out, err);
      });
    }
    const AnyModel m = load(path_a, s);
    return std::visit(
        [&](const auto& x) -> int {
          if (dim_cmd->parsed()) return dim(x, path_a, s, out, err);
          if (basis_cmd->parsed()) return basis(x, path_a, s, out, err);
          if (prob_cmd->parsed()) return prob(x, path_a, word, s, out, err);
          return validate_report(x, s, out);
        },
        m);
  } catch (const std::exception& e) {
    report_error(e, err);
    return kExitError;
  }
}

}  // namespace hmpeq::cli
