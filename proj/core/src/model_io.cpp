#include "hmpeq/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace hmpeq {
namespace {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Entry {
  std::string key;
  std::size_t line = 0;
  std::size_t column = 0;
  std::vector<Token> value;
  std::vector<std::vector<Token>> rows;
};

bool is_separator(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == ',' || c == '[' ||
         c == ']';
}

// Splits text[from, to) on separators; columns are 1-based byte offsets.
std::vector<Token> tokenize(std::string_view text, std::size_t line,
                            std::size_t from) {
  std::vector<Token> out;
  std::size_t i = from;
  while (i < text.size()) {
    while (i < text.size() && is_separator(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_separator(text[i])) ++i;
    if (i > start)
      out.push_back({std::string(text.substr(start, i - start)), line,
                     start + 1});
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool is_matrix_key(std::string_view key) {
  return key == "M" || key == "E" || key == "U" || key.starts_with("Ma ");
}

bool is_plain_key(std::string_view key) {
  static const std::set<std::string_view> keys = {
      "kind", "mode", "alphabet", "n", "k", "pi", "M", "E",
      "labels", "U", "psi0", "F"};
  return keys.contains(key);
}

class Document {
 public:
  explicit Document(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::optional<std::size_t> current;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      if (trim(line).empty()) {
        if (end == text.size()) break;
        continue;
      }
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) {
        if (!current || !is_matrix_key(entries_[*current].key)) {
          const auto toks = tokenize(line, line_no, 0);
          throw ParseError(line_no, toks.front().column,
                           "expected 'key: value', found a bare row");
        }
        entries_[*current].rows.push_back(tokenize(line, line_no, 0));
      } else {
        std::size_t key_col = 0;
        while (key_col < colon && (line[key_col] == ' ' || line[key_col] == '\t'))
          ++key_col;
        std::string key(trim(line.substr(0, colon)));
        // Normalize "Ma   sym" to "Ma sym".
        if (key.starts_with("Ma") && key.size() > 2 &&
            (key[2] == ' ' || key[2] == '\t'))
          key = "Ma " + std::string(trim(std::string_view(key).substr(2)));
        if (!is_plain_key(key) && !key.starts_with("Ma "))
          throw ParseError(line_no, key_col + 1,
                           "unknown key '" + key + "'");
        if (index_.contains(key))
          throw ParseError(line_no, key_col + 1,
                           "duplicate key '" + key + "'");
        entries_.push_back(
            {key, line_no, key_col + 1, tokenize(line, line_no, colon + 1), {}});
        index_.emplace(key, entries_.size() - 1);
        current = entries_.size() - 1;
        if (is_matrix_key(key) && !entries_.back().value.empty())
          throw ParseError(line_no, entries_.back().value.front().column,
                           "rows of '" + key + "' go on the following lines");
      }
      if (end == text.size()) break;
    }
    end_line_ = line_no + 1;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  const Entry* find(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const Entry& require(const std::string& key) const {
    if (const Entry* e = find(key)) return *e;
    throw ParseError(end_line_, 1, "missing key '" + key + "'");
  }

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
  std::size_t end_line_ = 1;
};

const Token& single_value(const Entry& e) {
  if (e.value.size() != 1)
    throw ParseError(e.line, e.column,
                     "'" + e.key + "' expects exactly one value");
  return e.value.front();
}

std::size_t parse_count(const Entry& e) {
  const Token& t = single_value(e);
  std::size_t n = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || n == 0)
    throw ParseError(t.line, t.column,
                     "'" + e.key + "' must be a positive integer, got '" +
                         t.text + "'");
  return n;
}

template <ScalarType S>
S parse_real(const Token& t, std::string_view text, std::size_t offset = 0);

template <>
Rational parse_real<Rational>(const Token& t, std::string_view text,
                              std::size_t offset) {
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(t.line, t.column + offset, why);
  };
  if (text.find_first_of(".eE") != std::string_view::npos)
    throw fail("float literal '" + std::string(text) +
               "' in an exact-mode file (mixed numeric modes)");
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  auto digits = [](std::string_view s) {
    return !s.empty() &&
           s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  if (!digits(num) || !digits(den))
    throw fail("malformed rational literal '" + std::string(text) + "'");
  if (den.find_first_not_of('0') == std::string_view::npos)
    throw fail("zero denominator in '" + std::string(text) + "'");
  Rational q(std::string(num) + "/" + std::string(den), 10);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

template <>
double parse_real<double>(const Token& t, std::string_view text,
                          std::size_t offset) {
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(t.line, t.column + offset, why);
  };
  if (text.find('/') != std::string_view::npos)
    throw fail("rational literal '" + std::string(text) +
               "' in a float-mode file (mixed numeric modes)");
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double x = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), x);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty() ||
      !std::isfinite(x))
    throw fail("malformed float literal '" + std::string(text) + "'");
  return x;
}

// "re", "imi", "re+imi", "re-imi", "re+-imi".
template <ScalarType S>
Complex<S> parse_complex(const Token& t) {
  const std::string_view text = t.text;
  if (text.empty() || text.back() != 'i') return Complex<S>(parse_real<S>(t, text));
  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < body.size(); ++i) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' &&
        body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag = [&](std::string_view s, std::size_t offset) -> S {
    if (s.size() >= 2 && s[0] == '+' && (s[1] == '-' || s[1] == '+')) {
      s.remove_prefix(1);
      ++offset;
    }
    if (s.empty() || s == "+") return S(1);
    if (s == "-") return S(-1);
    return parse_real<S>(t, s, offset);
  };
  if (split == std::string_view::npos) return Complex<S>(S(0), imag(body, 0));
  return Complex<S>(parse_real<S>(t, body.substr(0, split)),
                    imag(body.substr(split), split));
}

template <ScalarType S>
Vector<S> parse_vector(const Entry& e, std::size_t expected) {
  if (e.value.size() != expected)
    throw ParseError(e.line, e.column,
                     "'" + e.key + "' expects " + std::to_string(expected) +
                         " entries, got " + std::to_string(e.value.size()));
  Vector<S> out;
  for (const auto& t : e.value) out.push_back(parse_real<S>(t, t.text));
  return out;
}

template <class T, class F>
Matrix<T> parse_matrix(const Entry& e, std::size_t rows, std::size_t cols,
                       F&& parse_entry) {
  if (e.rows.size() != rows)
    throw ParseError(e.line, e.column,
                     "'" + e.key + "' expects " + std::to_string(rows) +
                         " rows, got " + std::to_string(e.rows.size()));
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = e.rows[i];
    if (row.size() != cols)
      throw ParseError(row.front().line, row.front().column,
                       "row " + std::to_string(i) + " of '" + e.key +
                           "' expects " + std::to_string(cols) +
                           " entries, got " + std::to_string(row.size()));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_entry(row[j]);
  }
  return m;
}

void check_allowed(const Document& doc, const std::set<std::string>& allowed,
                   bool allow_ma, const std::string& kind) {
  for (const auto& e : doc.entries()) {
    const bool ok =
        allowed.contains(e.key) || (allow_ma && e.key.starts_with("Ma "));
    if (!ok)
      throw ParseError(e.line, e.column,
                       "key '" + e.key + "' is not valid for kind " + kind);
  }
}

Alphabet parse_alphabet(const Entry& e) {
  if (e.value.empty())
    throw ParseError(e.line, e.column, "alphabet must not be empty");
  std::vector<std::string> symbols;
  std::set<std::string> seen;
  for (const auto& t : e.value) {
    if (t.text == kStopSymbol)
      throw ParseError(t.line, t.column,
                       "symbol '$' is reserved for the stop-symbol reduction");
    if (!seen.insert(t.text).second)
      throw ParseError(t.line, t.column,
                       "duplicate alphabet symbol '" + t.text + "'");
    symbols.push_back(t.text);
  }
  return Alphabet(std::move(symbols));
}

template <ScalarType S>
Model<S> build(const Document& doc, const std::string& kind,
               const Alphabet& alphabet) {
  const auto real = [](const Token& t) { return parse_real<S>(t, t.text); };
  if (kind == "hmm") {
    check_allowed(doc, {"kind", "mode", "alphabet", "n", "pi", "M", "E"},
                  false, kind);
    const std::size_t n = parse_count(doc.require("n"));
    HmmModel<S> m;
    m.alphabet = alphabet;
    m.initial = parse_vector<S>(doc.require("pi"), n);
    m.transition = parse_matrix<S>(doc.require("M"), n, n, real);
    m.emission = parse_matrix<S>(doc.require("E"), n, alphabet.size(), real);
    return m;
  }
  if (kind == "qrw") {
    check_allowed(doc, {"kind", "mode", "alphabet", "k", "labels", "U", "psi0"},
                  false, kind);
    const std::size_t k = parse_count(doc.require("k"));
    QrwModel<S> m;
    m.alphabet = alphabet;
    const Entry& labels = doc.require("labels");
    if (labels.value.size() != k)
      throw ParseError(labels.line, labels.column,
                       "'labels' expects " + std::to_string(k) +
                           " symbols, got " +
                           std::to_string(labels.value.size()));
    for (const auto& t : labels.value) {
      auto a = alphabet.find(t.text);
      if (!a)
        throw ParseError(t.line, t.column,
                         "label '" + t.text + "' is not in the alphabet");
      m.labels.push_back(*a);
    }
    m.evolution = parse_matrix<Complex<S>>(
        doc.require("U"), k, k, [](const Token& t) { return parse_complex<S>(t); });
    const Entry& psi = doc.require("psi0");
    if (psi.value.size() != k)
      throw ParseError(psi.line, psi.column,
                       "'psi0' expects " + std::to_string(k) +
                           " entries, got " + std::to_string(psi.value.size()));
    for (const auto& t : psi.value) m.psi0.push_back(parse_complex<S>(t));
    return m;
  }
  if (kind == "pfa") {
    check_allowed(doc, {"kind", "mode", "alphabet", "n", "pi", "F"}, true,
                  kind);
    const std::size_t n = parse_count(doc.require("n"));
    PfaModel<S> m;
    m.alphabet = alphabet;
    m.initial = parse_vector<S>(doc.require("pi"), n);
    m.final = parse_vector<S>(doc.require("F"), n);
    for (const auto& e : doc.entries()) {
      if (!e.key.starts_with("Ma ")) continue;
      const std::string sym = e.key.substr(3);
      if (!alphabet.find(sym))
        throw ParseError(e.line, e.column,
                         "'" + e.key + "': symbol '" + sym +
                             "' is not in the alphabet");
    }
    for (const auto& sym : alphabet.symbols())
      m.transitions.push_back(
          parse_matrix<S>(doc.require("Ma " + sym), n, n, real));
    return m;
  }
  const Entry& e = doc.require("kind");
  throw ParseError(e.value.front().line, e.value.front().column,
                   "unknown kind '" + kind + "' (expected hmm, qrw or pfa)");
}

template <ScalarType S>
bool is_negative(const S& x) {
  if constexpr (ScalarTraits<S>::exact)
    return sgn(x) < 0;
  else
    return std::signbit(x);
}

template <ScalarType S>
void write_row(std::ostringstream& out, const Vector<S>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    out << (i ? " " : "") << to_string(v[i]);
}

template <class T, class F>
void write_matrix(std::ostringstream& out, const std::string& key,
                  const Matrix<T>& m, F&& fmt) {
  out << key << ":\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j)
      out << (j ? " " : "") << fmt(m(i, j));
    out << "\n";
  }
}

template <ScalarType S>
void write_header(std::ostringstream& out, std::string_view kind,
                  const Alphabet& alphabet) {
  out << "kind: " << kind << "\n"
      << "mode: " << ScalarTraits<S>::mode_name << "\n"
      << "alphabet:";
  for (const auto& s : alphabet.symbols()) out << " " << s;
  out << "\n";
}

}  // namespace

template <ScalarType S>
std::string format_complex(const Complex<S>& z) {
  std::string out = to_string(z.re);
  if (is_negative(z.im)) {
    out += "-";
    out += to_string(S(-z.im));
  } else {
    out += "+";
    out += to_string(z.im);
  }
  return out + "i";
}

AnyModel parse_model(std::string_view text, double tolerance) {
  const Document doc(text);
  const Entry& kind_entry = doc.require("kind");
  const std::string kind = single_value(kind_entry).text;
  const Entry& mode_entry = doc.require("mode");
  const Token& mode = single_value(mode_entry);
  if (mode.text != "exact" && mode.text != "float")
    throw ParseError(mode.line, mode.column,
                     "unknown mode '" + mode.text +
                         "' (expected exact or float)");
  Alphabet alphabet = parse_alphabet(doc.require("alphabet"));

  if (mode.text == "exact") {
    Model<Rational> m = build<Rational>(doc, kind, alphabet);
    require_valid(m, tolerance);
    return m;
  }
  Model<double> m = build<double>(doc, kind, alphabet);
  require_valid(m, tolerance);
  return m;
}

AnyModel load_model_file(const std::filesystem::path& path, double tolerance) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), tolerance);
}

template <ScalarType S>
std::string serialize_model(const Model<S>& model) {
  std::ostringstream out;
  const auto real = [](const S& x) { return to_string(x); };
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HmmModel<S>>) {
          write_header<S>(out, "hmm", m.alphabet);
          out << "n: " << m.states() << "\npi: ";
          write_row(out, m.initial);
          out << "\n";
          write_matrix(out, "M", m.transition, real);
          write_matrix(out, "E", m.emission, real);
        } else if constexpr (std::is_same_v<T, QrwModel<S>>) {
          write_header<S>(out, "qrw", m.alphabet);
          out << "k: " << m.k() << "\nlabels:";
          for (Symbol a : m.labels) out << " " << m.alphabet[a];
          out << "\n";
          write_matrix(out, "U", m.evolution,
                       [](const Complex<S>& z) { return format_complex(z); });
          out << "psi0:";
          for (const auto& z : m.psi0) out << " " << format_complex(z);
          out << "\n";
        } else {
          write_header<S>(out, "pfa", m.alphabet);
          out << "n: " << m.states() << "\npi: ";
          write_row(out, m.initial);
          out << "\nF: ";
          write_row(out, m.final);
          out << "\n";
          for (Symbol a = 0; a < m.alphabet.size(); ++a)
            write_matrix(out, "Ma " + m.alphabet[a], m.transitions[a], real);
        }
      },
      model);
  return out.str();
}

std::string serialize_model(const AnyModel& model) {
  return std::visit([](const auto& m) { return serialize_model(m); }, model);
}

template std::string serialize_model<Rational>(const Model<Rational>&);
template std::string serialize_model<double>(const Model<double>&);
template std::string format_complex<Rational>(const Complex<Rational>&);
template std::string format_complex<double>(const Complex<double>&);

}  // namespace hmpeq
