#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hmpeq {

/// Index of a symbol in its Alphabet.
using Symbol = std::uint32_t;

/// The reserved stop symbol appended by the PFA reduction.
inline constexpr std::string_view kStopSymbol = "$";

/// Display form of the empty word.
inline constexpr std::string_view kEmptyWordText = "□";

/// Finite word over an alphabet; the default-constructed word is the empty
/// word. Ordered by length first, then lexicographically by symbol index.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  Word appended(Symbol a) const;
  Word prepended(Symbol a) const;

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Symbol> symbols_;
};

/// Ordered list of distinct, non-empty symbol tokens. The order is the
/// canonical iteration order everywhere in the library.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws std::invalid_argument when the list is empty, has duplicates or
  /// contains an empty token.
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& operator[](Symbol a) const { return symbols_.at(a); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::optional<Symbol> find(std::string_view token) const;
  /// Throws UnknownSymbol.
  Symbol index_of(std::string_view token) const;

  /// Copy of this alphabet with `token` appended.
  Alphabet extended(std::string token) const;

  /// Throws UnknownSymbol when any symbol index is out of range.
  void check(const Word& w) const;

  /// Parses a word. "", "-" and the empty-word glyph denote the empty word.
  /// Tokens may be separated by whitespace, commas or dots; a single
  /// unseparated run is split by greedy longest match against the symbols.
  Word parse_word(std::string_view text) const;

  /// Concatenated symbols when every symbol is one character, otherwise
  /// symbols joined by '.'; the empty word prints as the empty-word glyph.
  std::string format(const Word& w) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// All words of length at most `max_length`, shortest first and
/// lexicographic within a length.
std::vector<Word> words_up_to(std::size_t alphabet_size,
                              std::size_t max_length);

/// Number of words of length at most `max_length`, saturating at SIZE_MAX.
std::size_t count_words_up_to(std::size_t alphabet_size,
                              std::size_t max_length);

}  // namespace hmpeq
