#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monoidlab/error.hpp"
#include "monoidlab/identity.hpp"
#include "monoidlab/rewrite.hpp"
#include "monoidlab/word.hpp"

namespace monoidlab {

using Element = std::size_t;

// A finite monoid materialized from a confluent rewrite system. Elements are
// normal forms in shortlex order, so element 0 is the identity.
class FiniteMonoid {
 public:
  FiniteMonoid(RewriteSystem source, std::vector<Letters> elements)
      : source_(std::move(source)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end(),
              [](Letters const& a, Letters const& b) { return shortlex_less(a, b); });
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      index_.emplace(elements_[i], i);
    }
    auto const n = elements_.size();
    table_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Letters w = elements_[i];
        w.insert(w.end(), elements_[j].begin(), elements_[j].end());
        auto it = index_.find(source_.normal_form(std::move(w)));
        if (it == index_.end()) {
          throw InvalidArgument("element set is not closed under multiplication");
        }
        table_[i * n + j] = it->second;
      }
    }
  }

  RewriteSystem const& source() const noexcept { return source_; }
  std::size_t          size() const noexcept { return elements_.size(); }
  Element              identity() const noexcept { return 0; }

  Word element(Element i) const { return Word(source_.generators(), elements_.at(i)); }

  std::vector<Word> elements() const {
    std::vector<Word> out;
    for (std::size_t i = 0; i < size(); ++i) {
      out.push_back(element(i));
    }
    return out;
  }

  Element product(Element a, Element b) const { return table_[a * size() + b]; }

  // Element represented by an arbitrary word over the generators.
  Element evaluate(std::span<Letter const> w) const {
    Element x = identity();
    for (Letter g : w) {
      x = product(x, generator(g));
    }
    return x;
  }

  Element generator(Letter g) const {
    return index_.at(source_.normal_form(Letters{g}));
  }

  std::optional<Element> index_of(Word const& w) const {
    auto nf = source_.normal_form(w);
    auto it = index_.find(nf.letters());
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  // Resolves word text (e.g. `f g`) to an element.
  Element parse_element(std::string_view text) const {
    auto e = index_of(Word::parse(source_.generators(), text));
    if (!e) {
      throw InvalidArgument("'" + std::string(text) + "' is not an element");
    }
    return *e;
  }

  std::string table_to_string() const {
    std::vector<std::string> names;
    std::size_t              width = 1;
    for (std::size_t i = 0; i < size(); ++i) {
      names.push_back(element(i).to_string());
      width = std::max(width, names.back().size());
    }
    auto pad = [width](std::string s) {
      s.resize(width, ' ');
      return s;
    };
    std::string out = pad("") + " |";
    for (auto const& n : names) {
      out += "  " + pad(n);
    }
    out += '\n' + std::string(width + 2 + size() * (width + 2), '-') + '\n';
    for (std::size_t i = 0; i < size(); ++i) {
      out += pad(names[i]) + " |";
      for (std::size_t j = 0; j < size(); ++j) {
        out += "  " + pad(names[product(i, j)]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  RewriteSystem                                        source_;
  std::vector<Letters>                                 elements_;
  std::unordered_map<Letters, std::size_t, LettersHash> index_;
  std::vector<Element>                                 table_;
};

inline constexpr std::size_t default_element_budget = 10000;

// Breadth-first closure of {1} under right multiplication by generators.
inline FiniteMonoid build_finite(RewriteSystem const& rs,
                                 std::size_t          budget = default_element_budget) {
  require_confluent(rs);
  std::unordered_map<Letters, bool, LettersHash> seen{{Letters{}, true}};
  std::vector<Letters>                           queue{Letters{}};
  auto const n = static_cast<Letter>(rs.generators().size());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Letter g = 0; g < n; ++g) {
      Letters w = queue[head];
      w.push_back(g);
      auto nf = rs.normal_form(std::move(w));
      if (seen.emplace(nf, true).second) {
        if (queue.size() == budget) {
          throw BudgetExceeded("monoid has more than " + std::to_string(budget)
                                   + " elements (possibly infinite)",
                               budget);
        }
        queue.push_back(std::move(nf));
      }
    }
  }
  return FiniteMonoid(rs, std::move(queue));
}

inline std::vector<Element> idempotents(FiniteMonoid const& m) {
  std::vector<Element> out;
  for (Element x = 0; x < m.size(); ++x) {
    if (m.product(x, x) == x) {
      out.push_back(x);
    }
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////////
// Homomorphisms
////////////////////////////////////////////////////////////////////////////////

// Generator images determine the map; validity means every defining relation
// of the source holds in the target.
class Homomorphism {
 public:
  Homomorphism(RewriteSystem source, FiniteMonoid target, std::vector<Element> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

  RewriteSystem const&        source() const noexcept { return source_; }
  FiniteMonoid const&         target() const noexcept { return target_; }
  std::vector<Element> const& generator_images() const noexcept { return images_; }

  Element image(std::span<Letter const> w) const {
    Element x = target_.identity();
    for (Letter g : w) {
      x = target_.product(x, images_[g]);
    }
    return x;
  }

  Element image(Word const& w) const {
    if (!(w.alphabet() == source_.generators())) {
      throw AlphabetMismatch("word '" + w.to_string() + "' is not over the source generators");
    }
    return image(w.letters());
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t g = 0; g < images_.size(); ++g) {
      if (g != 0) {
        out += ',';
      }
      out += source_.generators().symbol(static_cast<Letter>(g)) + "="
             + target_.element(images_[g]).to_string();
    }
    return out;
  }

 private:
  RewriteSystem        source_;
  FiniteMonoid         target_;
  std::vector<Element> images_;
};

inline Homomorphism make_hom(RewriteSystem const& source, std::vector<Element> gmap,
                             FiniteMonoid const& target) {
  if (gmap.size() != source.generators().size()) {
    throw InvalidArgument("generator map must assign every source generator");
  }
  for (auto e : gmap) {
    if (e >= target.size()) {
      throw InvalidArgument("generator image out of range");
    }
  }
  Homomorphism h(source, target, std::move(gmap));
  for (auto const& rel : source.presentation().relations()) {
    auto l = h.image(rel.lhs);
    auto r = h.image(rel.rhs);
    if (l != r) {
      throw RelationViolated("relation " + rel.lhs.to_string() + " = " + rel.rhs.to_string()
                             + " maps to " + target.element(l).to_string()
                             + " != " + target.element(r).to_string());
    }
  }
  return h;
}

// `e=f,b=g`: each source generator to a word naming a target element.
inline std::vector<Element> parse_generator_map(std::string_view     text,
                                                RewriteSystem const& source,
                                                FiniteMonoid const&  target) {
  auto const&                         gens = source.generators();
  std::vector<std::optional<Element>> out(gens.size());
  std::size_t                         start = 0;
  while (true) {
    auto end  = text.find(',', start);
    auto part = detail::trim(
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    auto eq   = part.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'gen=element' in '" + std::string(part) + "'");
    }
    auto name = detail::trim(part.substr(0, eq));
    auto g    = gens.index_of(name);
    if (!g) {
      throw ParseError("unknown source generator '" + std::string(name) + "'");
    }
    if (out[*g]) {
      throw ParseError("generator '" + std::string(name) + "' mapped twice");
    }
    try {
      out[*g] = target.parse_element(part.substr(eq + 1));
    } catch (InvalidArgument const& e) {
      throw ParseError(e.what());
    }
    if (end == std::string_view::npos) {
      break;
    }
    start = end + 1;
  }
  std::vector<Element> result;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i]) {
      throw ParseError("generator '" + gens.symbol(static_cast<Letter>(i)) + "' is not mapped");
    }
    result.push_back(*out[i]);
  }
  return result;
}

////////////////////////////////////////////////////////////////////////////////
// Identities in finite monoids
////////////////////////////////////////////////////////////////////////////////

struct FiniteCheck {
  bool holds;
  // Lexicographically least failing assignment (first variable most
  // significant), one element per variable.
  std::optional<std::vector<Element>> counterexample;

  explicit operator bool() const noexcept { return holds; }
};

// Exhaustive over all |M|^k assignments, the identity element included.
inline FiniteCheck holds_in_finite(FiniteMonoid const& m, Identity const& id) {
  auto const  k = id.vars().size();
  auto const  n = m.size();
  auto        eval = [&](Word const& w, std::vector<Element> const& a) {
    Element x = m.identity();
    for (Letter v : w.letters()) {
      x = m.product(x, a[v]);
    }
    return x;
  };
  std::vector<Element> a(k, 0);
  while (true) {
    if (eval(id.lhs(), a) != eval(id.rhs(), a)) {
      return {false, a};
    }
    std::size_t i = k;
    while (i > 0 && ++a[i - 1] == n) {
      a[i - 1] = 0;
      --i;
    }
    if (i == 0) {
      return {true, std::nullopt};
    }
  }
}

}  // namespace monoidlab
