#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monoidlab/error.hpp"
#include "monoidlab/rewrite.hpp"
#include "monoidlab/word.hpp"

namespace monoidlab {

struct LettersHash {
  std::size_t operator()(Letters const& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter x : w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

////////////////////////////////////////////////////////////////////////////////
// Identity
////////////////////////////////////////////////////////////////////////////////

// u = v over a variable alphabet.
class Identity {
 public:
  Identity(Word lhs, Word rhs) : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
    require_same_alphabet(lhs_, rhs_);
  }

  // `x x y x = x y x x`; variables are declared in order of first appearance.
  static Identity parse(std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos) {
      throw ParseError("identity must have the form 'u = v'");
    }
    std::vector<std::string> names;
    for (auto side : {text.substr(0, eq), text.substr(eq + 1)}) {
      for (auto tok : detail::split_ws(side)) {
        if (tok != "1" && std::find(names.begin(), names.end(), tok) == names.end()) {
          names.emplace_back(tok);
        }
      }
    }
    Alphabet vars;
    try {
      vars = Alphabet(AlphabetKind::variables, std::move(names));
    } catch (InvalidArgument const& e) {
      throw ParseError(e.what());
    }
    return parse(vars, text);
  }

  static Identity parse(Alphabet const& vars, std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos || text.find('=', eq + 1) != std::string_view::npos) {
      throw ParseError("identity must have the form 'u = v'");
    }
    return Identity(Word::parse(vars, text.substr(0, eq)),
                    Word::parse(vars, text.substr(eq + 1)));
  }

  Alphabet const& vars() const noexcept { return lhs_.alphabet(); }
  Word const&     lhs() const noexcept { return lhs_; }
  Word const&     rhs() const noexcept { return rhs_; }
  bool            is_trivial() const noexcept { return lhs_.letters() == rhs_.letters(); }

  std::string to_string() const { return lhs_.to_string() + " = " + rhs_.to_string(); }

 private:
  Word lhs_;
  Word rhs_;
};

inline void require_substitution_fits(RewriteSystem const& rs, Identity const& id,
                                      Substitution const& s) {
  if (!(s.domain() == id.vars())) {
    throw AlphabetMismatch("substitution domain differs from the identity's variables");
  }
  if (!(s.target() == rs.generators())) {
    throw AlphabetMismatch("substitution target differs from the rewrite system's generators");
  }
}

// Normal forms of both sides under `s`.
inline std::pair<Word, Word> evaluate(RewriteSystem const& rs, Identity const& id,
                                      Substitution const& s) {
  require_substitution_fits(rs, id, s);
  return {rs.normal_form(substitute(id.lhs(), s)), rs.normal_form(substitute(id.rhs(), s))};
}

////////////////////////////////////////////////////////////////////////////////
// Witness search
////////////////////////////////////////////////////////////////////////////////

// Enumerates substitutions whose values are irreducible words of length at
// most `max_sub_len`. Order: by grade (the length of the longest value, so a
// larger bound only appends substitutions), then odometer order within a
// grade with the first variable turning fastest and values in shortlex order.
// Read-only after construction; safe to share between threads.
class WitnessSearch {
 public:
  struct Outcome {
    std::optional<std::vector<Letters>> witness;
    std::uint64_t                       searched = 0;
  };

  WitnessSearch(RewriteSystem const& rs, std::size_t max_sub_len)
      : rs_(&rs), bound_(max_sub_len) {
    require_confluent(rs);
    values_ = irreducible_words(rs, max_sub_len);
    grade_end_.assign(max_sub_len + 1, 0);
    for (std::size_t g = 0; g <= max_sub_len; ++g) {
      grade_end_[g] = static_cast<std::size_t>(
          std::count_if(values_.begin(), values_.end(),
                        [g](Letters const& v) { return v.size() <= g; }));
    }
  }

  RewriteSystem const&        system() const noexcept { return *rs_; }
  std::size_t                 bound() const noexcept { return bound_; }
  std::vector<Letters> const& values() const noexcept { return values_; }

  // True if the two sides have different normal forms under `values`.
  bool refutes(std::span<Letter const> lhs, std::span<Letter const> rhs,
               std::span<Letters const> values) const {
    return rs_->normal_form(substitute_letters(lhs, values))
           != rs_->normal_form(substitute_letters(rhs, values));
  }

  Outcome search(std::span<Letter const> lhs, std::span<Letter const> rhs,
                 std::size_t nvars) const {
    Outcome                  out;
    std::vector<std::size_t> digits(nvars, 0);
    std::vector<Letters>     assignment(nvars);
    for (std::size_t g = 0; g <= bound_; ++g) {
      std::size_t const hi = grade_end_[g];
      std::size_t const lo = g == 0 ? 0 : grade_end_[g - 1];
      if (g > 0 && (hi == lo || nvars == 0)) {
        continue;
      }
      std::fill(digits.begin(), digits.end(), 0);
      while (true) {
        bool in_grade = g == 0;
        for (auto d : digits) {
          in_grade = in_grade || d >= lo;
        }
        if (in_grade) {
          ++out.searched;
          for (std::size_t i = 0; i < nvars; ++i) {
            assignment[i] = values_[digits[i]];
          }
          if (refutes(lhs, rhs, assignment)) {
            out.witness = std::move(assignment);
            return out;
          }
        }
        std::size_t i = 0;
        while (i < nvars && ++digits[i] == hi) {
          digits[i] = 0;
          ++i;
        }
        if (i == nvars) {
          break;
        }
      }
    }
    return out;
  }

 private:
  RewriteSystem const*     rs_;
  std::size_t              bound_;
  std::vector<Letters>     values_;
  std::vector<std::size_t> grade_end_;
};

inline std::optional<Substitution> find_witness(RewriteSystem const& rs, Identity const& id,
                                                std::size_t max_sub_len) {
  WitnessSearch search(rs, max_sub_len);
  auto          out = search.search(id.lhs().letters(), id.rhs().letters(), id.vars().size());
  if (!out.witness) {
    return std::nullopt;
  }
  return Substitution::from_letters(id.vars(), rs.generators(), *out.witness);
}

struct Verdict {
  enum class Status { fails, no_witness_up_to };

  Status                      status;
  std::optional<Substitution> witness;
  std::size_t                 bound;
  std::uint64_t               searched;

  bool fails() const noexcept { return status == Status::fails; }

  std::string to_string() const {
    if (fails()) {
      return "FAILS " + witness->to_string();
    }
    return "NO-WITNESS-UP-TO " + std::to_string(bound);
  }
};

// Bounded semi-decision: a Fails verdict is a proof that the identity does
// not hold, NoWitnessUpTo is only evidence that it does.
inline Verdict check_identity(RewriteSystem const& rs, Identity const& id,
                              std::size_t max_sub_len) {
  WitnessSearch search(rs, max_sub_len);
  auto          out = search.search(id.lhs().letters(), id.rhs().letters(), id.vars().size());
  if (out.witness) {
    return {Verdict::Status::fails,
            Substitution::from_letters(id.vars(), rs.generators(), *out.witness),
            max_sub_len, out.searched};
  }
  return {Verdict::Status::no_witness_up_to, std::nullopt, max_sub_len, out.searched};
}

// Validity in (N, +, 0) is exactly balancedness.
inline bool holds_in_naturals(Identity const& id) {
  return is_balanced(id.lhs(), id.rhs());
}

////////////////////////////////////////////////////////////////////////////////
// Balanced candidates
////////////////////////////////////////////////////////////////////////////////

// |w|! / prod(count!) ; throws if the value does not fit in 64 bits.
inline std::uint64_t multinomial(ParikhVector const& p) {
  unsigned __int128 result = 1;
  std::uint64_t     n      = 0;
  for (auto c : p.counts()) {
    for (std::uint64_t k = 1; k <= c; ++k) {
      ++n;
      result = result * n / k;  // exact: running value is C(n, k) * previous
      if (result > std::numeric_limits<std::uint64_t>::max()) {
        throw InvalidArgument("multinomial coefficient overflows 64 bits");
      }
    }
  }
  return static_cast<std::uint64_t>(result);
}

// Streams every rearrangement of a word in lexicographic (hence shortlex)
// order, without materializing the set.
class BalancedCandidates {
 public:
  explicit BalancedCandidates(Word const& target)
      : alphabet_(target.alphabet()), current_(target.letters()),
        count_(multinomial(parikh(target))) {
    std::sort(current_.begin(), current_.end());
  }

  std::uint64_t count() const noexcept { return count_; }

  // Raw letters of the next candidate, or false when exhausted.
  bool next(Letters& out) {
    if (done_) {
      return false;
    }
    if (started_ && !std::next_permutation(current_.begin(), current_.end())) {
      done_ = true;
      return false;
    }
    started_ = true;
    out      = current_;
    return true;
  }

  std::optional<Word> next() {
    Letters w;
    if (!next(w)) {
      return std::nullopt;
    }
    return Word(alphabet_, std::move(w));
  }

 private:
  Alphabet      alphabet_;
  Letters       current_;
  std::uint64_t count_;
  bool          started_ = false;
  bool          done_    = false;
};

inline BalancedCandidates balanced_candidates(Word const& target) {
  return BalancedCandidates(target);
}

////////////////////////////////////////////////////////////////////////////////
// Isoterm checks
////////////////////////////////////////////////////////////////////////////////

struct Refutation {
  Word         candidate;
  Substitution witness;
};

enum class IsotermStatus { isoterm, inconclusive };

struct IsotermReport {
  Word          target;
  std::size_t   bound = 0;
  std::uint64_t candidates_total = 0;  // balanced rearrangements other than the target
  std::uint64_t refuted_count    = 0;
  // Refutations in candidate order; at most SearchOptions::record_limit kept.
  std::vector<Refutation> refuted;
  std::vector<Word>       unresolved;
  IsotermStatus           status = IsotermStatus::inconclusive;

  // Unbalanced candidates are excluded: no identity u = v with different
  // Parikh vectors holds in a monoid that contains a copy of (N, +).
  static constexpr std::string_view restriction = "balanced candidates only";

  bool is_isoterm() const noexcept { return status == IsotermStatus::isoterm; }
};

struct SearchOptions {
  std::size_t jobs         = 1;
  std::size_t record_limit = std::numeric_limits<std::size_t>::max();
};

namespace detail {

  // Runs `make_refuter()` once per worker; each refuter maps a candidate to
  // the witness values refuting target = candidate, or nothing.
  template <typename MakeRefuter>
  IsotermReport run_isoterm(RewriteSystem const& rs, Word const& target,
                            std::size_t bound, SearchOptions const& opts,
                            MakeRefuter&& make_refuter) {
    constexpr std::size_t batch_size = 1024;

    struct Batch {
      std::uint64_t                                       first_index = 0;
      std::uint64_t                                       refuted     = 0;
      std::vector<std::pair<Letters, std::vector<Letters>>> kept;
      std::vector<Letters>                                unresolved;
    };

    BalancedCandidates stream(target);
    std::uint64_t      next_index = 0;
    std::mutex         mtx;
    std::vector<Batch> done;
    std::exception_ptr error;

    auto worker = [&] {
      try {
        auto refute = make_refuter();
        while (true) {
          Batch                batch;
          std::vector<Letters> work;
          {
            std::lock_guard lock(mtx);
            if (error) {
              return;
            }
            batch.first_index = next_index;
            Letters w;
            while (work.size() < batch_size && stream.next(w)) {
              if (w != target.letters()) {
                work.push_back(std::move(w));
              }
            }
            next_index += work.size();
          }
          if (work.empty()) {
            return;
          }
          for (std::size_t i = 0; i < work.size(); ++i) {
            if (auto witness = refute(work[i])) {
              ++batch.refuted;
              if (batch.first_index + i < opts.record_limit) {
                batch.kept.emplace_back(std::move(work[i]), std::move(*witness));
              }
            } else {
              batch.unresolved.push_back(std::move(work[i]));
            }
          }
          std::lock_guard lock(mtx);
          done.push_back(std::move(batch));
        }
      } catch (...) {
        std::lock_guard lock(mtx);
        if (!error) {
          error = std::current_exception();
        }
      }
    };

    std::size_t const jobs = std::max<std::size_t>(1, opts.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t i = 0; i < jobs; ++i) {
        pool.emplace_back(worker);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    if (error) {
      std::rethrow_exception(error);
    }

    std::sort(done.begin(), done.end(), [](Batch const& a, Batch const& b) {
      return a.first_index < b.first_index;
    });
    IsotermReport report;
    report.target           = target;
    report.bound            = bound;
    report.candidates_total = stream.count() - 1;
    for (auto& b : done) {
      report.refuted_count += b.refuted;
      for (auto& [cand, values] : b.kept) {
        report.refuted.push_back(
            {Word(target.alphabet(), std::move(cand)),
             Substitution::from_letters(target.alphabet(), rs.generators(), values)});
      }
      for (auto& w : b.unresolved) {
        report.unresolved.emplace_back(target.alphabet(), std::move(w));
      }
    }
    report.status = report.unresolved.empty() ? IsotermStatus::isoterm
                                              : IsotermStatus::inconclusive;
    return report;
  }

}  // namespace detail

// Checks target = candidate for every balanced rearrangement of target with
// a bounded witness search. Each reported witness is the least one in
// WitnessSearch order.
inline IsotermReport isoterm_check(RewriteSystem const& rs, Word const& target,
                                   std::size_t max_sub_len, SearchOptions const& opts = {}) {
  WitnessSearch search(rs, max_sub_len);
  auto const    nvars = target.alphabet().size();
  return detail::run_isoterm(rs, target, max_sub_len, opts, [&] {
    return [&](Letters const& cand) {
      return search.search(target.letters(), cand, nvars).witness;
    };
  });
}

namespace detail {

  // Per-worker refuter for Z_n = w. Tries, in order: sending x1 to the
  // identity (which turns Z_n into Z_{n-1} on the remaining variables and
  // recurses when w does not reduce to it), sending x1 to the first generator
  // and every other variable to the second, then the general search.
  class ZiminRefuter {
   public:
    explicit ZiminRefuter(WitnessSearch const& search)
        : search_(&search), memo_(32) {}

    std::optional<std::vector<Letters>> operator()(Letters const& cand) {
      auto n = static_cast<std::size_t>(1 + *std::max_element(cand.begin(), cand.end()));
      return refute(n, cand);
    }

    std::optional<std::vector<Letters>> refute(std::size_t n, Letters const& cand) {
      auto const& z = zimin(n);
      if (cand == z) {
        return std::nullopt;
      }
      if (n >= 2) {
        Letters reduced;
        for (Letter x : cand) {
          if (x != 0) {
            reduced.push_back(x - 1);
          }
        }
        if (reduced != zimin(n - 1)) {
          auto& memo = memo_[n - 1];
          auto  it   = memo.find(reduced);
          if (it == memo.end()) {
            it = memo.emplace(reduced, refute(n - 1, reduced)).first;
          }
          if (it->second) {
            std::vector<Letters> values{Letters{}};
            values.insert(values.end(), it->second->begin(), it->second->end());
            if (search_->refutes(z, cand, values)) {
              return values;
            }
          }
        }
      }
      if (search_->system().generators().size() >= 2 && search_->bound() >= 1) {
        std::vector<Letters> values(n, Letters{1});
        values[0] = Letters{0};
        if (search_->refutes(z, cand, values)) {
          return values;
        }
      }
      return search_->search(z, cand, n).witness;
    }

   private:
    Letters const& zimin(std::size_t n) {
      if (zimin_.size() <= n) {
        zimin_.resize(n + 1);
      }
      if (zimin_[n].empty()) {
        zimin_[n] = zimin_letters(n);
      }
      return zimin_[n];
    }

    WitnessSearch const* search_;
    std::vector<std::unordered_map<Letters, std::optional<std::vector<Letters>>, LettersHash>>
                         memo_;
    std::vector<Letters> zimin_;
  };

}  // namespace detail

// Same contract as isoterm_check(rs, zimin(n), ...), except that witnesses
// come from the canonical substitutions when those already refute.
inline IsotermReport zimin_isoterm_check(RewriteSystem const& rs, std::size_t n,
                                         std::size_t          max_sub_len,
                                         SearchOptions const& opts = {}) {
  auto          target = zimin(n);
  WitnessSearch search(rs, max_sub_len);
  return detail::run_isoterm(rs, target, max_sub_len, opts,
                             [&] { return detail::ZiminRefuter(search); });
}

////////////////////////////////////////////////////////////////////////////////
// Free pairs
////////////////////////////////////////////////////////////////////////////////

struct FreePairResult {
  bool          free;
  std::uint64_t products;  // number of {u,v}-sequences compared
  // On failure: the two colliding sequences (as `u v u`) and their value.
  std::optional<std::pair<std::string, std::string>> collision;
  std::optional<Word>                                value;
};

// Checks that all {u,v}-sequences of length 1..max_len have pairwise distinct
// values. Sequences are visited in shortlex order with u < v, so a reported
// collision pairs the earliest sequence with that value and the first later
// one hitting it.
inline FreePairResult free_pair_check(RewriteSystem const& rs, Word const& u, Word const& v,
                                      std::size_t max_len) {
  if (u.empty() || v.empty()) {
    throw InvalidArgument("free pair elements must be nonempty words");
  }
  if (!(u.alphabet() == rs.generators()) || !(v.alphabet() == rs.generators())) {
    throw AlphabetMismatch("free pair words must be over the rewrite system's generators");
  }
  if (u.letters() == v.letters()) {
    throw InvalidArgument("free pair elements must be distinct words");
  }
  if (max_len > 30) {
    throw InvalidArgument("free pair length bound too large");
  }
  auto sequence_name = [](std::uint64_t bits, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
      if (i != 0) {
        s += ' ';
      }
      s += ((bits >> (len - 1 - i)) & 1U) != 0 ? 'v' : 'u';
    }
    return s;
  };

  std::unordered_map<Letters, std::pair<std::uint64_t, std::size_t>, LettersHash> seen;
  FreePairResult result{true, 0, std::nullopt, std::nullopt};
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      Letters w;
      for (std::size_t i = 0; i < len; ++i) {
        auto const& part = ((bits >> (len - 1 - i)) & 1U) != 0 ? v : u;
        w.insert(w.end(), part.letters().begin(), part.letters().end());
      }
      ++result.products;
      auto nf                = rs.normal_form(std::move(w));
      auto [it, inserted]    = seen.emplace(nf, std::make_pair(bits, len));
      if (!inserted) {
        result.free      = false;
        result.collision = {sequence_name(it->second.first, it->second.second),
                            sequence_name(bits, len)};
        result.value     = Word(rs.generators(), std::move(nf));
        return result;
      }
    }
  }
  return result;
}

}  // namespace monoidlab
