#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monoidlab/error.hpp"

namespace monoidlab {

using Letter  = std::uint32_t;
using Letters = std::vector<Letter>;

enum class AlphabetKind { generators, variables };

// Length first, then lexicographic by letter index.
inline std::strong_ordering shortlex_compare(std::span<Letter const> a,
                                             std::span<Letter const> b) {
  if (a.size() != b.size()) {
    return a.size() <=> b.size();
  }
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

inline bool shortlex_less(std::span<Letter const> a, std::span<Letter const> b) {
  return shortlex_compare(a, b) < 0;
}

namespace detail {

  inline bool valid_symbol_name(std::string_view name) {
    if (name.empty() || name == "1") {
      return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) != 0;
    });
  }

  inline std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t                   i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j > i) {
        out.push_back(text.substr(i, j - i));
      }
      i = j;
    }
    return out;
  }

  inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  }

}  // namespace detail

////////////////////////////////////////////////////////////////////////////////
// Alphabet
////////////////////////////////////////////////////////////////////////////////

// An ordered list of distinct symbol names. Declaration order fixes the
// lexicographic order on words. Copies share the same immutable storage.
class Alphabet {
 public:
  Alphabet() : Alphabet(AlphabetKind::generators, {}) {}

  Alphabet(AlphabetKind kind, std::vector<std::string> symbols) {
    auto d     = std::make_shared<Data>();
    d->kind    = kind;
    d->symbols = std::move(symbols);
    for (std::size_t i = 0; i < d->symbols.size(); ++i) {
      auto const& s = d->symbols[i];
      if (!detail::valid_symbol_name(s)) {
        throw InvalidArgument("invalid symbol name '" + s + "'");
      }
      if (!d->index.emplace(s, static_cast<Letter>(i)).second) {
        throw InvalidArgument("duplicate symbol '" + s + "'");
      }
    }
    data_ = std::move(d);
  }

  // x1, x2, ..., xn
  static Alphabet variables(std::size_t n, std::string_view prefix = "x") {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
      names.push_back(std::string(prefix) + std::to_string(i));
    }
    return Alphabet(AlphabetKind::variables, std::move(names));
  }

  AlphabetKind kind() const noexcept { return data_->kind; }
  std::size_t  size() const noexcept { return data_->symbols.size(); }
  bool         empty() const noexcept { return data_->symbols.empty(); }

  std::string const&              symbol(Letter i) const { return data_->symbols.at(i); }
  std::vector<std::string> const& symbols() const noexcept { return data_->symbols; }

  std::optional<Letter> index_of(std::string_view name) const {
    auto it = data_->index.find(std::string(name));
    if (it == data_->index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool same_storage(Alphabet const& other) const noexcept {
    return data_ == other.data_;
  }

  friend bool operator==(Alphabet const& a, Alphabet const& b) {
    return a.data_ == b.data_
           || (a.data_->kind == b.data_->kind && a.data_->symbols == b.data_->symbols);
  }

 private:
  struct Data {
    AlphabetKind                            kind = AlphabetKind::generators;
    std::vector<std::string>                symbols;
    std::unordered_map<std::string, Letter> index;
  };
  std::shared_ptr<Data const> data_;
};

////////////////////////////////////////////////////////////////////////////////
// Word
////////////////////////////////////////////////////////////////////////////////

// A finite sequence of letters over an alphabet. The empty word is the
// identity element and prints as `1`.
class Word {
 public:
  Word() = default;

  explicit Word(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  Word(Alphabet alphabet, Letters letters)
      : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    for (Letter x : letters_) {
      if (x >= alphabet_.size()) {
        throw InvalidArgument("letter index " + std::to_string(x)
                              + " out of range for alphabet of size "
                              + std::to_string(alphabet_.size()));
      }
    }
  }

  // Parses the word text format: space separated symbols, `1` alone for the
  // empty word.
  static Word parse(Alphabet const& alphabet, std::string_view text) {
    auto tokens = detail::split_ws(text);
    if (tokens.empty()) {
      throw ParseError("empty word text (use '1' for the identity)");
    }
    if (tokens.size() == 1 && tokens[0] == "1") {
      return Word(alphabet);
    }
    Letters letters;
    letters.reserve(tokens.size());
    for (auto tok : tokens) {
      if (tok == "1") {
        throw ParseError("'1' may only appear alone");
      }
      auto x = alphabet.index_of(tok);
      if (!x) {
        throw ParseError("undeclared symbol '" + std::string(tok) + "'");
      }
      letters.push_back(*x);
    }
    return Word(alphabet, std::move(letters));
  }

  Alphabet const& alphabet() const noexcept { return alphabet_; }
  Letters const&  letters() const noexcept { return letters_; }
  std::size_t     size() const noexcept { return letters_.size(); }
  bool            empty() const noexcept { return letters_.empty(); }
  Letter          operator[](std::size_t i) const { return letters_[i]; }

  std::string to_string() const {
    if (letters_.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += alphabet_.symbol(letters_[i]);
    }
    return out;
  }

  friend bool operator==(Word const& a, Word const& b) {
    return a.letters_ == b.letters_ && a.alphabet_ == b.alphabet_;
  }

  // Shortlex; only meaningful for words over the same alphabet.
  friend std::strong_ordering operator<=>(Word const& a, Word const& b) {
    return shortlex_compare(a.letters_, b.letters_);
  }

 private:
  Alphabet alphabet_;
  Letters  letters_;
};

inline std::ostream& operator<<(std::ostream& os, Word const& w) {
  return os << w.to_string();
}

inline std::string to_string(Alphabet const& a, std::span<Letter const> letters) {
  return Word(a, Letters(letters.begin(), letters.end())).to_string();
}

inline void require_same_alphabet(Word const& u, Word const& v) {
  if (!(u.alphabet() == v.alphabet())) {
    throw AlphabetMismatch("words '" + u.to_string() + "' and '" + v.to_string()
                           + "' are over different alphabets");
  }
}

inline Word concat(Word const& u, Word const& v) {
  require_same_alphabet(u, v);
  Letters out = u.letters();
  out.insert(out.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet(), std::move(out));
}

////////////////////////////////////////////////////////////////////////////////
// Parikh vectors
////////////////////////////////////////////////////////////////////////////////

class ParikhVector {
 public:
  explicit ParikhVector(Alphabet alphabet)
      : alphabet_(std::move(alphabet)), counts_(alphabet_.size(), 0) {}

  ParikhVector(Alphabet alphabet, std::vector<std::size_t> counts)
      : alphabet_(std::move(alphabet)), counts_(std::move(counts)) {
    if (counts_.size() != alphabet_.size()) {
      throw InvalidArgument("Parikh vector size does not match alphabet");
    }
  }

  Alphabet const&                 alphabet() const noexcept { return alphabet_; }
  std::vector<std::size_t> const& counts() const noexcept { return counts_; }

  std::size_t operator[](Letter x) const { return counts_.at(x); }

  std::size_t at(std::string_view symbol) const {
    auto x = alphabet_.index_of(symbol);
    if (!x) {
      throw InvalidArgument("unknown symbol '" + std::string(symbol) + "'");
    }
    return counts_[*x];
  }

  std::size_t total() const noexcept {
    std::size_t n = 0;
    for (auto c : counts_) {
      n += c;
    }
    return n;
  }

  ParikhVector& operator+=(ParikhVector const& other) {
    if (!(alphabet_ == other.alphabet_)) {
      throw AlphabetMismatch("Parikh vectors over different alphabets");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      counts_[i] += other.counts_[i];
    }
    return *this;
  }

  friend ParikhVector operator+(ParikhVector a, ParikhVector const& b) {
    a += b;
    return a;
  }

  friend bool operator==(ParikhVector const& a, ParikhVector const& b) {
    return a.alphabet_ == b.alphabet_ && a.counts_ == b.counts_;
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (i != 0) {
        out += ", ";
      }
      out += alphabet_.symbol(static_cast<Letter>(i)) + ":" + std::to_string(counts_[i]);
    }
    return out + "}";
  }

 private:
  Alphabet                 alphabet_;
  std::vector<std::size_t> counts_;
};

inline ParikhVector parikh(Word const& w) {
  std::vector<std::size_t> counts(w.alphabet().size(), 0);
  for (Letter x : w.letters()) {
    ++counts[x];
  }
  return ParikhVector(w.alphabet(), std::move(counts));
}

inline bool is_balanced(Word const& u, Word const& v) {
  require_same_alphabet(u, v);
  return parikh(u) == parikh(v);
}

////////////////////////////////////////////////////////////////////////////////
// Zimin words
////////////////////////////////////////////////////////////////////////////////

// Z_n as raw letters 0..n-1 (letter i stands for x_{i+1}).
inline Letters zimin_letters(std::size_t n) {
  if (n == 0) {
    throw InvalidArgument("Zimin words are indexed from 1");
  }
  if (n > 31) {
    throw InvalidArgument("Zimin word Z_" + std::to_string(n) + " is too long");
  }
  Letters z{0};
  z.reserve((std::size_t{1} << n) - 1);
  for (Letter k = 1; k < n; ++k) {
    Letters next = z;
    next.push_back(k);
    next.insert(next.end(), z.begin(), z.end());
    z = std::move(next);
  }
  return z;
}

inline Word zimin(std::size_t n, Alphabet const& vars) {
  if (vars.size() < n) {
    throw InvalidArgument("Z_" + std::to_string(n) + " needs " + std::to_string(n)
                          + " variables, alphabet has " + std::to_string(vars.size()));
  }
  return Word(vars, zimin_letters(n));
}

inline Word zimin(std::size_t n) {
  return zimin(n, Alphabet::variables(n));
}

////////////////////////////////////////////////////////////////////////////////
// Substitutions
////////////////////////////////////////////////////////////////////////////////

// A total map from the symbols of `domain` to words over `target`.
class Substitution {
 public:
  Substitution(Alphabet domain, Alphabet target, std::vector<Word> values)
      : domain_(std::move(domain)), target_(std::move(target)), values_(std::move(values)) {
    if (values_.size() != domain_.size()) {
      throw InvalidArgument("substitution must assign every variable exactly once");
    }
    for (auto const& v : values_) {
      if (!(v.alphabet() == target_)) {
        throw AlphabetMismatch("substitution value '" + v.to_string()
                               + "' is not over the target alphabet");
      }
    }
  }

  // Builds from raw letter sequences over `target`.
  static Substitution from_letters(Alphabet domain, Alphabet target,
                                   std::vector<Letters> const& values) {
    std::vector<Word> words;
    words.reserve(values.size());
    for (auto const& v : values) {
      words.emplace_back(target, v);
    }
    return Substitution(std::move(domain), std::move(target), std::move(words));
  }

  // Parses `x=e b,y=1`; every domain symbol must be assigned exactly once.
  static Substitution parse(Alphabet domain, Alphabet target, std::string_view text) {
    std::vector<std::optional<Word>> values(domain.size());
    std::size_t                      start = 0;
    while (start <= text.size()) {
      auto end  = text.find(',', start);
      auto part = detail::trim(text.substr(start, end == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : end - start));
      auto eq   = part.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("expected 'name=word' in '" + std::string(part) + "'");
      }
      auto name = detail::trim(part.substr(0, eq));
      auto x    = domain.index_of(name);
      if (!x) {
        throw ParseError("unknown symbol '" + std::string(name) + "'");
      }
      if (values[*x]) {
        throw ParseError("symbol '" + std::string(name) + "' assigned twice");
      }
      values[*x] = Word::parse(target, part.substr(eq + 1));
      if (end == std::string_view::npos) {
        break;
      }
      start = end + 1;
    }
    std::vector<Word> words;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) {
        throw ParseError("symbol '" + domain.symbol(static_cast<Letter>(i))
                         + "' is not assigned");
      }
      words.push_back(*values[i]);
    }
    return Substitution(std::move(domain), std::move(target), std::move(words));
  }

  Alphabet const&          domain() const noexcept { return domain_; }
  Alphabet const&          target() const noexcept { return target_; }
  std::vector<Word> const& values() const noexcept { return values_; }
  Word const&              operator[](Letter x) const { return values_.at(x); }

  // `x=e b,y=1`
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i != 0) {
        out += ',';
      }
      out += domain_.symbol(static_cast<Letter>(i)) + "=" + values_[i].to_string();
    }
    return out;
  }

  friend bool operator==(Substitution const&, Substitution const&) = default;

 private:
  Alphabet          domain_;
  Alphabet          target_;
  std::vector<Word> values_;
};

inline Letters substitute_letters(std::span<Letter const>  w,
                                  std::span<Letters const> values) {
  std::size_t n = 0;
  for (Letter x : w) {
    n += values[x].size();
  }
  Letters out;
  out.reserve(n);
  for (Letter x : w) {
    out.insert(out.end(), values[x].begin(), values[x].end());
  }
  return out;
}

// Replaces every variable by its assigned word. No reduction is applied.
inline Word substitute(Word const& w, Substitution const& s) {
  if (!(w.alphabet() == s.domain())) {
    throw AlphabetMismatch("word '" + w.to_string()
                           + "' is not over the substitution's domain");
  }
  Letters out;
  for (Letter x : w.letters()) {
    auto const& v = s[x].letters();
    out.insert(out.end(), v.begin(), v.end());
  }
  return Word(s.target(), std::move(out));
}

}  // namespace monoidlab
