#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoidlab/error.hpp"
#include "monoidlab/finite_monoid.hpp"
#include "monoidlab/rewrite.hpp"
#include "monoidlab/word.hpp"

namespace monoidlab {

// Kernel classes of a homomorphism onto a finite monoid, restricted to
// irreducible source words up to a length bound. A class is a subsemigroup
// exactly when its image is idempotent.

struct KernelClass {
  Element           image;
  bool              idempotent;
  std::vector<Word> members;  // shortlex order
};

inline std::vector<KernelClass> classify(Homomorphism const& h, std::size_t max_len) {
  require_confluent(h.source());
  auto const&              target = h.target();
  std::vector<KernelClass> by_image(target.size());
  for (Element q = 0; q < target.size(); ++q) {
    by_image[q].image      = q;
    by_image[q].idempotent = target.product(q, q) == q;
  }
  for (auto& w : irreducible_words(h.source(), max_len)) {
    auto q = h.image(w);
    by_image[q].members.emplace_back(h.source().generators(), std::move(w));
  }
  std::vector<KernelClass> out;
  for (auto& c : by_image) {
    if (!c.members.empty()) {
      out.push_back(std::move(c));
    }
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////////
// Class descriptors
////////////////////////////////////////////////////////////////////////////////

// Either an explicit finite list of words, or the family
// [prefix] (p q)^k [suffix] for k >= min_k.
struct ClassPattern {
  std::vector<Letters>  words;
  bool                  parametric = false;
  std::optional<Letter> prefix;
  Letter                p = 0;
  Letter                q = 0;
  std::optional<Letter> suffix;
  std::size_t           min_k = 0;

  std::vector<Letters> instances(std::size_t max_len) const {
    if (!parametric) {
      std::vector<Letters> out;
      for (auto const& w : words) {
        if (w.size() <= max_len) {
          out.push_back(w);
        }
      }
      return out;
    }
    std::vector<Letters> out;
    std::size_t const    fixed = (prefix ? 1 : 0) + (suffix ? 1 : 0);
    for (std::size_t k = min_k; fixed + 2 * k <= max_len; ++k) {
      Letters w;
      if (prefix) {
        w.push_back(*prefix);
      }
      for (std::size_t i = 0; i < k; ++i) {
        w.push_back(p);
        w.push_back(q);
      }
      if (suffix) {
        w.push_back(*suffix);
      }
      out.push_back(std::move(w));
    }
    return out;
  }
};

struct ClassDescriptor {
  Element      image;
  ClassPattern pattern;
  std::string  text;
};

// One descriptor per line:
//
//   class <element>: singleton <word>
//   class <element>: list <word>, <word>, ...
//   class <element>: pattern [x] (p q)^k [y] k>=0      (or k>0)
//
// <element> is a word naming a target element; pattern letters are source
// generators.
inline ClassDescriptor parse_class_descriptor(std::string_view line, Homomorphism const& h) {
  auto const& gens = h.source().generators();
  line             = detail::trim(line);
  if (line.substr(0, 6) != "class ") {
    throw ParseError("descriptor must start with 'class'");
  }
  auto colon = line.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("descriptor is missing ':'");
  }
  ClassDescriptor d;
  d.text = std::string(line);
  try {
    d.image = h.target().parse_element(line.substr(6, colon - 6));
  } catch (Error const& e) {
    throw ParseError(std::string("bad class element: ") + e.what());
  }
  auto body  = detail::trim(line.substr(colon + 1));
  auto space = body.find(' ');
  auto kind  = body.substr(0, space);
  auto rest  = space == std::string_view::npos ? std::string_view{}
                                               : detail::trim(body.substr(space + 1));

  if (kind == "singleton") {
    d.pattern.words.push_back(Word::parse(gens, rest).letters());
  } else if (kind == "list") {
    std::size_t start = 0;
    while (true) {
      auto end = rest.find(',', start);
      d.pattern.words.push_back(
          Word::parse(gens, rest.substr(start, end == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : end - start))
              .letters());
      if (end == std::string_view::npos) {
        break;
      }
      start = end + 1;
    }
  } else if (kind == "pattern") {
    static std::regex const re(
        R"(^(?:([A-Za-z0-9]+)\s+)?\(\s*([A-Za-z0-9]+)\s+([A-Za-z0-9]+)\s*\)\^k(?:\s+([A-Za-z0-9]+))?\s*,?\s*(?:k\s*(>=|>)\s*0)?$)");
    std::string const s(rest);
    std::smatch       m;
    if (!std::regex_match(s, m, re)) {
      throw ParseError("malformed pattern '" + s + "'");
    }
    auto letter = [&](std::string const& name) {
      auto x = gens.index_of(name);
      if (!x) {
        throw ParseError("unknown generator '" + name + "' in pattern");
      }
      return *x;
    };
    d.pattern.parametric = true;
    if (m[1].matched) {
      d.pattern.prefix = letter(m[1]);
    }
    d.pattern.p = letter(m[2]);
    d.pattern.q = letter(m[3]);
    if (m[4].matched) {
      d.pattern.suffix = letter(m[4]);
    }
    d.pattern.min_k = m[5].matched && m[5] == ">" ? 1 : 0;
  } else {
    throw ParseError("unknown descriptor kind '" + std::string(kind) + "'");
  }
  return d;
}

inline std::vector<ClassDescriptor> parse_class_descriptors(std::string_view    text,
                                                            Homomorphism const& h) {
  std::vector<ClassDescriptor> out;
  std::size_t                  line_no = 0;
  std::size_t                  pos     = 0;
  while (pos <= text.size()) {
    auto end  = text.find('\n', pos);
    auto line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                               : end - pos);
    pos       = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (detail::trim(line).empty()) {
      continue;
    }
    try {
      out.push_back(parse_class_descriptor(line, h));
    } catch (ParseError const& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

struct DescriptorMatch {
  bool                     matched;
  std::vector<std::string> mismatches;

  explicit operator bool() const noexcept { return matched; }
};

// Up to max_len, every class must equal the union of the instances of the
// descriptors naming its image, and every described image must be a class.
inline DescriptorMatch match_class_descriptors(Homomorphism const&                 h,
                                               std::size_t                         max_len,
                                               std::vector<ClassDescriptor> const& descriptors) {
  auto const&                             gens = h.source().generators();
  std::map<Element, std::set<Letters>>    actual;
  std::map<Element, std::set<Letters>>    expected;
  for (auto const& c : classify(h, max_len)) {
    for (auto const& w : c.members) {
      actual[c.image].insert(w.letters());
    }
  }
  for (auto const& d : descriptors) {
    auto& e = expected[d.image];
    for (auto& w : d.pattern.instances(max_len)) {
      e.insert(std::move(w));
    }
  }
  DescriptorMatch result{true, {}};
  auto            name = [&](Element q) { return h.target().element(q).to_string(); };
  for (auto const& [q, members] : actual) {
    if (!expected.contains(q)) {
      result.matched = false;
      result.mismatches.push_back("class " + name(q) + " has no descriptor");
    }
  }
  for (auto const& [q, instances] : expected) {
    auto const& members = actual[q];
    for (auto const& w : instances) {
      if (!members.contains(w)) {
        result.matched = false;
        result.mismatches.push_back("class " + name(q) + ": described word "
                                    + to_string(gens, w) + " is not a member");
      }
    }
    for (auto const& w : members) {
      if (!instances.contains(w)) {
        result.matched = false;
        result.mismatches.push_back("class " + name(q) + ": member " + to_string(gens, w)
                                    + " is not described");
      }
    }
  }
  return result;
}

////////////////////////////////////////////////////////////////////////////////
// Commutativity of subsemigroup classes
////////////////////////////////////////////////////////////////////////////////

struct CommutativityVerdict {
  Element                             image;
  bool                                commutative;
  std::size_t                         bound;
  std::size_t                         members;
  std::uint64_t                       pairs_checked;
  std::optional<std::pair<Word, Word>> counterexample;  // u v != v u
};

// Checks uv = vu for all pairs of class members of length <= max_len, in
// shortlex pair order. Bounded evidence only: the classes are infinite in
// general.
inline CommutativityVerdict class_commutative(Homomorphism const& h, Element q,
                                              std::size_t max_len) {
  auto const& target = h.target();
  if (q >= target.size() || target.product(q, q) != q) {
    throw InvalidArgument("class commutativity is only defined for idempotent images");
  }
  require_confluent(h.source());
  auto const&          rs = h.source();
  std::vector<Letters> members;
  for (auto& w : irreducible_words(rs, max_len)) {
    if (h.image(w) == q) {
      members.push_back(std::move(w));
    }
  }
  CommutativityVerdict out{q, true, max_len, members.size(), 0, std::nullopt};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      ++out.pairs_checked;
      auto const& u  = members[i];
      auto const& v  = members[j];
      Letters     uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      Letters vu = v;
      vu.insert(vu.end(), u.begin(), u.end());
      if (rs.normal_form(std::move(uv)) != rs.normal_form(std::move(vu))) {
        out.commutative    = false;
        out.counterexample = std::make_pair(Word(rs.generators(), u), Word(rs.generators(), v));
        return out;
      }
    }
  }
  return out;
}

enum class MalcevStatus { pass, fail };

struct MalcevReport {
  std::string                       homomorphism;  // `e=f,b=g`
  std::size_t                       bound;
  std::vector<KernelClass>          classes;
  std::vector<CommutativityVerdict> idempotent_classes;
  std::vector<Element>              unchecked;  // non-idempotent images: not subsemigroups
  MalcevStatus                      status;
  std::optional<CommutativityVerdict> failure;

  bool passed() const noexcept { return status == MalcevStatus::pass; }
};

// Evidence for membership in Com o Fin: a valid homomorphism onto the finite
// target whose idempotent kernel classes are commutative up to the bound.
inline MalcevReport malcev_com_fin_evidence(RewriteSystem const& source, FiniteMonoid const& target,
                                            std::vector<Element> gmap, std::size_t max_len) {
  auto         h = make_hom(source, std::move(gmap), target);
  MalcevReport report{h.to_string(), max_len, classify(h, max_len), {}, {},
                      MalcevStatus::pass, std::nullopt};
  for (auto const& c : report.classes) {
    if (!c.idempotent) {
      report.unchecked.push_back(c.image);
    }
  }
  for (auto q : idempotents(target)) {
    auto v = class_commutative(h, q, max_len);
    if (!v.commutative && !report.failure) {
      report.status  = MalcevStatus::fail;
      report.failure = v;
    }
    report.idempotent_classes.push_back(std::move(v));
  }
  return report;
}

}  // namespace monoidlab
