#include "hmpeq/alphabet.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "hmpeq/errors.hpp"

namespace hmpeq {

Word Word::appended(Symbol a) const {
  Word w = *this;
  w.symbols_.push_back(a);
  return w;
}

Word Word::prepended(Symbol a) const {
  Word w;
  w.symbols_.reserve(symbols_.size() + 1);
  w.symbols_.push_back(a);
  w.symbols_.insert(w.symbols_.end(), symbols_.begin(), symbols_.end());
  return w;
}

Word operator+(const Word& a, const Word& b) {
  Word w = a;
  w.symbols_.insert(w.symbols_.end(), b.symbols_.begin(), b.symbols_.end());
  return w;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.symbols_ <=> b.symbols_;
}

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet is empty");
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw std::invalid_argument("alphabet has an empty symbol");
    if (!seen.insert(s).second)
      throw std::invalid_argument("alphabet repeats symbol '" + s + "'");
  }
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == token) return static_cast<Symbol>(i);
  return std::nullopt;
}

Symbol Alphabet::index_of(std::string_view token) const {
  if (auto a = find(token)) return *a;
  throw UnknownSymbol("unknown symbol '" + std::string(token) + "'");
}

Alphabet Alphabet::extended(std::string token) const {
  auto symbols = symbols_;
  symbols.push_back(std::move(token));
  return Alphabet(std::move(symbols));
}

void Alphabet::check(const Word& w) const {
  for (Symbol a : w)
    if (a >= symbols_.size())
      throw UnknownSymbol("symbol index " + std::to_string(a) +
                          " outside alphabet of size " +
                          std::to_string(symbols_.size()));
}

Word Alphabet::parse_word(std::string_view text) const {
  auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == ',' || c == '.';
  };
  while (!text.empty() && is_sep(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_sep(text.back())) text.remove_suffix(1);
  if (text.empty() || text == "-" || text == kEmptyWordText) return {};

  std::vector<Symbol> out;
  if (std::any_of(text.begin(), text.end(), is_sep)) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_sep(text[i])) ++i;
      std::size_t j = i;
      while (j < text.size() && !is_sep(text[j])) ++j;
      if (j > i) out.push_back(index_of(text.substr(i, j - i)));
      i = j;
    }
    return Word(std::move(out));
  }
  if (auto whole = find(text)) return Word{*whole};

  std::size_t i = 0;
  while (i < text.size()) {
    std::optional<Symbol> best;
    std::size_t best_len = 0;
    for (std::size_t s = 0; s < symbols_.size(); ++s) {
      const auto& sym = symbols_[s];
      if (sym.size() > best_len && text.substr(i, sym.size()) == sym) {
        best = static_cast<Symbol>(s);
        best_len = sym.size();
      }
    }
    if (!best)
      throw UnknownSymbol("cannot split word '" + std::string(text) +
                          "' at offset " + std::to_string(i));
    out.push_back(*best);
    i += best_len;
  }
  return Word(std::move(out));
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return std::string(kEmptyWordText);
  const bool single = std::all_of(symbols_.begin(), symbols_.end(),
                                  [](const auto& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += '.';
    out += (*this)[w[i]];
  }
  return out;
}

std::vector<Word> words_up_to(std::size_t alphabet_size,
                              std::size_t max_length) {
  std::vector<Word> words{Word{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t level_end = words.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (Symbol a = 0; a < alphabet_size; ++a)
        words.push_back(words[i].appended(a));
    level_begin = level_end;
  }
  return words;
}

std::size_t count_words_up_to(std::size_t alphabet_size,
                              std::size_t max_length) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  std::size_t level = 1;
  for (std::size_t len = 1; len <= max_length; ++len) {
    if (alphabet_size != 0 && level > kMax / alphabet_size) return kMax;
    level *= alphabet_size;
    if (total > kMax - level) return kMax;
    total += level;
  }
  return total;
}

}  // namespace hmpeq
