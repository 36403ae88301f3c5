#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monoidlab/error.hpp"
#include "monoidlab/presentation.hpp"
#include "monoidlab/word.hpp"

namespace monoidlab {

// lhs -> rhs with lhs strictly greater than rhs in shortlex order.
struct RewriteRule {
  Letters lhs;
  Letters rhs;

  friend bool operator==(RewriteRule const&, RewriteRule const&) = default;
};

// An occurrence of rule `rule`'s left-hand side starting at `position`.
struct Redex {
  std::size_t position;
  std::size_t rule;

  friend bool operator==(Redex const&, Redex const&) = default;
};

namespace detail {

  inline bool occurs_at(std::span<Letter const> w, std::size_t pos,
                        std::span<Letter const> pattern) {
    return pos + pattern.size() <= w.size()
           && std::equal(pattern.begin(), pattern.end(), w.begin() + pos);
  }

  inline void sort_rules(std::vector<RewriteRule>& rules) {
    std::stable_sort(rules.begin(), rules.end(),
                     [](RewriteRule const& a, RewriteRule const& b) {
                       return shortlex_less(a.lhs, b.lhs);
                     });
  }

  // Leftmost-redex, lowest-rule-index-first reduction against an arbitrary
  // rule list. Used directly during completion, before a RewriteSystem exists.
  inline Letters reduce_with(std::span<RewriteRule const> rules, Letters w,
                             std::optional<std::size_t> skip = std::nullopt) {
    std::size_t max_lhs = 0;
    for (auto const& r : rules) {
      max_lhs = std::max(max_lhs, r.lhs.size());
    }
    std::size_t pos = 0;
    while (pos < w.size()) {
      bool applied = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        if (skip && *skip == i) {
          continue;
        }
        auto const& r = rules[i];
        if (occurs_at(w, pos, r.lhs)) {
          w.erase(w.begin() + pos, w.begin() + pos + r.lhs.size());
          w.insert(w.begin() + pos, r.rhs.begin(), r.rhs.end());
          pos     = pos + 1 >= max_lhs ? pos + 1 - max_lhs : 0;
          applied = true;
          break;
        }
      }
      if (!applied) {
        ++pos;
      }
    }
    return w;
  }

}  // namespace detail

////////////////////////////////////////////////////////////////////////////////
// RewriteSystem
////////////////////////////////////////////////////////////////////////////////

class RewriteSystem {
 public:
  RewriteSystem() = default;

  RewriteSystem(Presentation             presentation,
                std::vector<RewriteRule> rules,
                std::vector<std::string> warnings = {})
      : presentation_(std::move(presentation)),
        rules_(std::move(rules)),
        warnings_(std::move(warnings)) {
    auto const n = presentation_.generators().size();
    for (auto const& r : rules_) {
      if (r.lhs.empty()) {
        throw InvalidArgument("rewrite rule with empty left-hand side");
      }
      for (auto const* side : {&r.lhs, &r.rhs}) {
        for (Letter x : *side) {
          if (x >= n) {
            throw InvalidArgument("rewrite rule letter out of range");
          }
        }
      }
      if (!shortlex_less(r.rhs, r.lhs)) {
        throw InvalidArgument("rule " + to_string(presentation_.generators(), r.lhs)
                              + " -> " + to_string(presentation_.generators(), r.rhs)
                              + " does not decrease in shortlex order");
      }
    }
    detail::sort_rules(rules_);
    by_first_letter_.assign(n, {});
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      by_first_letter_[rules_[i].lhs.front()].push_back(i);
      max_lhs_ = std::max(max_lhs_, rules_[i].lhs.size());
    }
  }

  Presentation const&             presentation() const noexcept { return presentation_; }
  Alphabet const&                 generators() const noexcept { return presentation_.generators(); }
  std::vector<RewriteRule> const& rules() const noexcept { return rules_; }
  std::vector<std::string> const& warnings() const noexcept { return warnings_; }
  std::size_t                     max_lhs_length() const noexcept { return max_lhs_; }

  Word lhs(std::size_t i) const { return Word(generators(), rules_.at(i).lhs); }
  Word rhs(std::size_t i) const { return Word(generators(), rules_.at(i).rhs); }

  // Lowest-index rule whose lhs occurs at `pos`.
  std::optional<std::size_t> rule_at(std::span<Letter const> w, std::size_t pos) const {
    if (pos >= w.size()) {
      return std::nullopt;
    }
    for (auto i : by_first_letter_[w[pos]]) {
      if (detail::occurs_at(w, pos, rules_[i].lhs)) {
        return i;
      }
    }
    return std::nullopt;
  }

  // Every redex, ordered by position then rule index.
  std::vector<Redex> redexes(std::span<Letter const> w) const {
    std::vector<Redex> out;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      for (auto i : by_first_letter_[w[pos]]) {
        if (detail::occurs_at(w, pos, rules_[i].lhs)) {
          out.push_back({pos, i});
        }
      }
    }
    return out;
  }

  Letters rewrite(std::span<Letter const> w, Redex r) const {
    auto const& rule = rules_.at(r.rule);
    if (!detail::occurs_at(w, r.position, rule.lhs)) {
      throw InvalidArgument("no redex of the given rule at the given position");
    }
    Letters out(w.begin(), w.begin() + r.position);
    out.insert(out.end(), rule.rhs.begin(), rule.rhs.end());
    out.insert(out.end(), w.begin() + r.position + rule.lhs.size(), w.end());
    return out;
  }

  bool is_irreducible(std::span<Letter const> w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      if (rule_at(w, pos)) {
        return false;
      }
    }
    return true;
  }

  // True if some rule lhs is a suffix of w. For a word whose proper prefix is
  // irreducible, this is the same as w being reducible.
  bool has_suffix_redex(std::span<Letter const> w) const {
    for (auto const& r : rules_) {
      if (r.lhs.size() <= w.size()
          && std::equal(r.lhs.begin(), r.lhs.end(), w.end() - r.lhs.size())) {
        return true;
      }
    }
    return false;
  }

  // Rewrites the leftmost redex (lowest rule index on ties) until none is
  // left. Terminates since each step strictly decreases shortlex order.
  Letters normal_form(Letters w) const {
    std::size_t pos = 0;
    while (pos < w.size()) {
      if (auto i = rule_at(w, pos)) {
        auto const& r = rules_[*i];
        if (r.lhs.size() == r.rhs.size()) {
          std::copy(r.rhs.begin(), r.rhs.end(), w.begin() + pos);
        } else {
          w.erase(w.begin() + pos, w.begin() + pos + (r.lhs.size() - r.rhs.size()));
          std::copy(r.rhs.begin(), r.rhs.end(), w.begin() + pos);
        }
        // A new redex must overlap the replaced segment.
        pos = pos + 1 >= max_lhs_ ? pos + 1 - max_lhs_ : 0;
      } else {
        ++pos;
      }
    }
    return w;
  }

  Word normal_form(Word const& w) const {
    if (!(w.alphabet() == generators())) {
      throw AlphabetMismatch("word '" + w.to_string()
                             + "' is not over the rewrite system's generators");
    }
    return Word(generators(), normal_form(w.letters()));
  }

  std::string rules_to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      out += lhs(i).to_string() + " -> " + rhs(i).to_string() + '\n';
    }
    return out;
  }

 private:
  Presentation                          presentation_;
  std::vector<RewriteRule>              rules_;
  std::vector<std::string>              warnings_;
  std::vector<std::vector<std::size_t>> by_first_letter_;
  std::size_t                           max_lhs_ = 0;
};

inline Word normal_form(RewriteSystem const& rs, Word const& w) {
  return rs.normal_form(w);
}

// Orients a relation into a rule, or returns nothing when both sides agree.
inline std::optional<RewriteRule> orient_pair(Letters u, Letters v) {
  auto c = shortlex_compare(u, v);
  if (c == 0) {
    return std::nullopt;
  }
  if (c < 0) {
    std::swap(u, v);
  }
  return RewriteRule{std::move(u), std::move(v)};
}

// Each relation becomes a rule from its shortlex-larger side. Trivial
// relations u = u are dropped and recorded as warnings.
inline RewriteSystem orient(Presentation const& p) {
  std::vector<RewriteRule> rules;
  std::vector<std::string> warnings;
  for (auto const& rel : p.relations()) {
    if (auto r = orient_pair(rel.lhs.letters(), rel.rhs.letters())) {
      rules.push_back(std::move(*r));
    } else {
      warnings.push_back("dropped trivial relation " + rel.lhs.to_string() + " = "
                         + rel.rhs.to_string());
    }
  }
  return RewriteSystem(p, std::move(rules), std::move(warnings));
}

////////////////////////////////////////////////////////////////////////////////
// Critical pairs and confluence
////////////////////////////////////////////////////////////////////////////////

struct CriticalPair {
  Word        peak;
  Word        left;   // peak rewritten by `left_rule`
  Word        right;  // peak rewritten by `right_rule`
  bool        resolved;
  std::size_t left_rule;
  std::size_t right_rule;
};

namespace detail {

  struct RawPair {
    Letters     peak, left, right;
    std::size_t left_rule, right_rule;
  };

  // Overlaps (a proper suffix of lhs_i is a prefix of lhs_j) and inclusions
  // (lhs_j is a factor of lhs_i, i != j), in rule-index order.
  inline std::vector<RawPair> raw_critical_pairs(std::span<RewriteRule const> rules) {
    std::vector<RawPair> out;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto const& a = rules[i];
      for (std::size_t j = 0; j < rules.size(); ++j) {
        auto const& b = rules[j];
        auto const  max_k = std::min(a.lhs.size(), b.lhs.size());
        for (std::size_t k = 1; k < max_k; ++k) {
          if (!std::equal(a.lhs.end() - k, a.lhs.end(), b.lhs.begin())) {
            continue;
          }
          RawPair p;
          p.left_rule  = i;
          p.right_rule = j;
          p.peak       = a.lhs;
          p.peak.insert(p.peak.end(), b.lhs.begin() + k, b.lhs.end());
          p.left = a.rhs;
          p.left.insert(p.left.end(), b.lhs.begin() + k, b.lhs.end());
          p.right.assign(a.lhs.begin(), a.lhs.end() - k);
          p.right.insert(p.right.end(), b.rhs.begin(), b.rhs.end());
          out.push_back(std::move(p));
        }
        if (i == j || b.lhs.size() > a.lhs.size()) {
          continue;
        }
        for (std::size_t pos = 0; pos + b.lhs.size() <= a.lhs.size(); ++pos) {
          if (!occurs_at(a.lhs, pos, b.lhs)) {
            continue;
          }
          RawPair p;
          p.left_rule  = i;
          p.right_rule = j;
          p.peak       = a.lhs;
          p.left       = a.rhs;
          p.right.assign(a.lhs.begin(), a.lhs.begin() + pos);
          p.right.insert(p.right.end(), b.rhs.begin(), b.rhs.end());
          p.right.insert(p.right.end(), a.lhs.begin() + pos + b.lhs.size(), a.lhs.end());
          out.push_back(std::move(p));
        }
      }
    }
    return out;
  }

}  // namespace detail

inline std::vector<CriticalPair> critical_pairs(RewriteSystem const& rs) {
  std::vector<CriticalPair> out;
  auto const&               gens = rs.generators();
  for (auto& p : detail::raw_critical_pairs(rs.rules())) {
    bool resolved = rs.normal_form(p.left) == rs.normal_form(p.right);
    out.push_back({Word(gens, std::move(p.peak)), Word(gens, std::move(p.left)),
                   Word(gens, std::move(p.right)), resolved, p.left_rule,
                   p.right_rule});
  }
  return out;
}

struct ConfluenceResult {
  bool                        confluent;
  std::optional<CriticalPair> first_unresolved;

  explicit operator bool() const noexcept { return confluent; }
};

// Rules are terminating, so local confluence here means unique normal forms.
inline ConfluenceResult is_locally_confluent(RewriteSystem const& rs) {
  for (auto& p : critical_pairs(rs)) {
    if (!p.resolved) {
      return {false, std::move(p)};
    }
  }
  return {true, std::nullopt};
}

inline void require_confluent(RewriteSystem const& rs) {
  if (auto c = is_locally_confluent(rs); !c) {
    auto const& p = *c.first_unresolved;
    throw NonConfluent("rewrite system is not confluent: critical pair at "
                       + p.peak.to_string() + " gives " + p.left.to_string() + " and "
                       + p.right.to_string());
  }
}

// Irreducible words of length at most max_len, in shortlex order, as raw
// letters. The caller is responsible for confluence.
inline std::vector<Letters> irreducible_words(RewriteSystem const& rs,
                                              std::size_t          max_len) {
  std::vector<Letters> out{Letters{}};
  std::size_t          level_begin = 0;
  auto const           n           = static_cast<Letter>(rs.generators().size());
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t const level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter x = 0; x < n; ++x) {
        Letters w = out[i];
        w.push_back(x);
        if (!rs.has_suffix_redex(w)) {
          out.push_back(std::move(w));
        }
      }
    }
    if (out.size() == level_end) {
      break;
    }
    level_begin = level_end;
  }
  return out;
}

inline std::vector<Word> enumerate_normal_forms(RewriteSystem const& rs,
                                                std::size_t          max_len) {
  require_confluent(rs);
  std::vector<Word> out;
  for (auto& w : irreducible_words(rs, max_len)) {
    out.emplace_back(rs.generators(), std::move(w));
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////////
// Knuth-Bendix completion
////////////////////////////////////////////////////////////////////////////////

struct CompletionBudget {
  std::size_t max_rules      = 1000;
  std::size_t max_iterations = 100;
};

enum class CompletionStatus { complete, partial };

struct CompletionResult {
  RewriteSystem    system;
  CompletionStatus status;
  std::size_t      iterations;
  std::string      note;

  bool complete() const noexcept { return status == CompletionStatus::complete; }
};

namespace detail {

  // Makes every lhs irreducible with respect to the other rules and every
  // rhs fully reduced. Rules whose lhs becomes reducible are turned back into
  // equations and re-oriented.
  inline void interreduce(std::vector<RewriteRule>& rules) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        auto l = reduce_with(rules, rules[i].lhs, i);
        if (l != rules[i].lhs) {
          auto r = reduce_with(rules, rules[i].rhs, i);
          rules.erase(rules.begin() + i);
          l = reduce_with(rules, std::move(l));
          r = reduce_with(rules, std::move(r));
          if (auto rule = orient_pair(std::move(l), std::move(r))) {
            rules.push_back(std::move(*rule));
          }
          changed = true;
          break;
        }
        auto r = reduce_with(rules, rules[i].rhs);
        if (r != rules[i].rhs) {
          rules[i].rhs = std::move(r);
          changed      = true;
        }
      }
    }
    sort_rules(rules);
  }

}  // namespace detail

// Orients the relations, then repeatedly turns unresolved critical pairs
// into new rules (with interreduction) until the system is confluent or the
// budget runs out.
inline CompletionResult knuth_bendix(Presentation const& p, CompletionBudget budget = {}) {
  auto                     oriented = orient(p);
  std::vector<RewriteRule> rules    = oriented.rules();
  detail::interreduce(rules);

  std::size_t iterations = 0;
  while (true) {
    std::vector<RewriteRule> added;
    for (auto& cp : detail::raw_critical_pairs(rules)) {
      auto l = detail::reduce_with(rules, std::move(cp.left));
      auto r = detail::reduce_with(rules, std::move(cp.right));
      if (auto rule = orient_pair(std::move(l), std::move(r))) {
        added.push_back(std::move(*rule));
      }
    }
    if (added.empty()) {
      return {RewriteSystem(p, std::move(rules), oriented.warnings()),
              CompletionStatus::complete, iterations, "confluent"};
    }
    if (iterations == budget.max_iterations) {
      return {RewriteSystem(p, std::move(rules), oriented.warnings()),
              CompletionStatus::partial, iterations,
              "iteration budget of " + std::to_string(budget.max_iterations)
                  + " exhausted"};
    }
    ++iterations;
    for (auto& r : added) {
      // Earlier additions in this round may already resolve later pairs.
      auto l  = detail::reduce_with(rules, std::move(r.lhs));
      auto rr = detail::reduce_with(rules, std::move(r.rhs));
      if (auto rule = orient_pair(std::move(l), std::move(rr))) {
        rules.push_back(std::move(*rule));
      }
    }
    detail::interreduce(rules);
    if (rules.size() > budget.max_rules) {
      return {RewriteSystem(p, std::move(rules), oriented.warnings()),
              CompletionStatus::partial, iterations,
              "rule budget of " + std::to_string(budget.max_rules) + " exceeded"};
    }
  }
}

}  // namespace monoidlab
