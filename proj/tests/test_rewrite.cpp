#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "monoidlab/presentation.hpp"
#include "monoidlab/rewrite.hpp"
#include "oracles.hpp"

using namespace monoidlab;

using namespace oracle;

namespace {

Word w(RewriteSystem const& rs, std::string_view text) {
  return Word::parse(rs.generators(), text);
}

}  // namespace

////////////////////////////////////////////////////////////////////////////////
// Presentations
////////////////////////////////////////////////////////////////////////////////

TEST(ParsePresentation, PresetFile) {
  auto p = read_presentation_file(MONOIDLAB_DATA_DIR "/presentations/k-inf.txt");
  EXPECT_EQ(p.generators().symbols(), (std::vector<std::string>{"e", "b"}));
  ASSERT_EQ(p.relations().size(), 2u);
  EXPECT_EQ(p.relations()[0].lhs.to_string(), "e e");
  EXPECT_EQ(p.relations()[0].rhs.to_string(), "e");
  EXPECT_EQ(p.relations()[1].lhs.to_string(), "b b");
  EXPECT_TRUE(p.relations()[1].rhs.empty());
  EXPECT_EQ(p.to_text(), preset("k-inf").to_text());
}

TEST(ParsePresentation, GeneratorsOnly) {
  auto p = parse_presentation("generators: x\n");
  EXPECT_EQ(p.generators().size(), 1u);
  EXPECT_TRUE(p.relations().empty());
}

TEST(ParsePresentation, UndeclaredGeneratorReportsLine) {
  try {
    parse_presentation("# header\ngenerators: e b\n\nrelation: e z = e\n");
    FAIL() << "expected ParseError";
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("'z'"), std::string::npos);
  }
}

TEST(ParsePresentation, SyntaxErrors) {
  auto line_of = [](std::string const& text) -> std::size_t {
    try {
      parse_presentation(text);
    } catch (ParseError const& e) {
      return e.line();
    }
    return 999;
  };
  EXPECT_EQ(line_of("generators: e e\n"), 1u);
  EXPECT_EQ(line_of("relation: e = e\n"), 1u);
  EXPECT_EQ(line_of("generators: e\nrelation: e e\n"), 2u);
  EXPECT_EQ(line_of("generators: e\nrelation: e = e = e\n"), 2u);
  EXPECT_EQ(line_of("generators: e\ngenerators: f\n"), 2u);
  EXPECT_EQ(line_of("generators: e\nrule: e = 1\n"), 2u);
  EXPECT_EQ(line_of("generators: e\nnonsense\n"), 2u);
  EXPECT_THROW(parse_presentation("# nothing\n"), ParseError);
}

TEST(Presets, AllParse) {
  for (auto const& name : preset_names()) {
    EXPECT_NO_THROW(preset(name)) << name;
  }
  EXPECT_THROW(preset("s2"), InvalidArgument);
}

////////////////////////////////////////////////////////////////////////////////
// Orientation and normal forms
////////////////////////////////////////////////////////////////////////////////

TEST(Orient, KInf) {
  auto rs = orient(preset("k-inf"));
  ASSERT_EQ(rs.rules().size(), 2u);
  EXPECT_EQ(rs.rules_to_string(), "e e -> e\nb b -> 1\n");
}

TEST(Orient, T) {
  auto rs = orient(preset("t"));
  EXPECT_EQ(rs.rules_to_string(), "f f -> f\ng g -> 1\nf g f -> f\n");
}

TEST(Orient, TrivialRelationDropped) {
  auto rs = orient(parse_presentation("generators: x\nrelation: x = x\n"));
  EXPECT_TRUE(rs.rules().empty());
  ASSERT_EQ(rs.warnings().size(), 1u);
}

TEST(Orient, RightToLeftWhenRightIsLarger) {
  auto rs = orient(parse_presentation("generators: a b\nrelation: a = b a\nrelation: a b = b a\n"));
  EXPECT_EQ(rs.rules_to_string(), "b a -> a\nb a -> a b\n");
}

TEST(RewriteSystem, RejectsIncreasingRules) {
  auto p = preset("k-inf");
  EXPECT_THROW(RewriteSystem(p, {{Letters{0}, Letters{0, 0}}}), InvalidArgument);
  EXPECT_THROW(RewriteSystem(p, {{Letters{}, Letters{}}}), InvalidArgument);
  EXPECT_THROW(RewriteSystem(p, {{Letters{0, 5}, Letters{}}}), InvalidArgument);
}

TEST(NormalForm, Examples) {
  auto k = orient(preset("k-inf"));
  EXPECT_EQ(normal_form(k, w(k, "e e")).to_string(), "e");
  EXPECT_EQ(normal_form(k, w(k, "b b")).to_string(), "1");
  EXPECT_EQ(normal_form(k, w(k, "e b b e")).to_string(), "e");
  auto d = orient(preset("d-inf"));
  EXPECT_EQ(normal_form(d, w(d, "a b a b a a b a b a b a b")).to_string(), "b a b");
  EXPECT_EQ(normal_form(d, w(d, "a b a b a b b a a")).to_string(), "a b a b a");
}

TEST(NormalForm, MatchesExhaustiveOracle) {
  for (auto const& name : all_presets) {
    auto rs     = orient(preset(name));
    auto oracle = string_rules(rs);
    for (auto const& u : all_words(rs.generators().size(), 7)) {
      auto nfs = oracle.irreducible_descendants(chars(rs, u));
      ASSERT_EQ(nfs.size(), 1u) << name;
      ASSERT_EQ(chars(rs, rs.normal_form(u)), *nfs.begin()) << name;
    }
  }
}

TEST(NormalForm, RejectsForeignWord) {
  auto k = orient(preset("k-inf"));
  auto j = orient(preset("j-inf"));
  EXPECT_THROW(k.normal_form(w(j, "e f")), AlphabetMismatch);
}

TEST(NormalForm, LeftmostStrategyOnNonConfluentSystem) {
  // With a c -> a and c b -> b on "a c b", the leftmost redex is "a c".
  auto p = parse_presentation("generators: a b c\n");
  RewriteSystem rs(p, {{Letters{0, 2}, Letters{0}}, {Letters{2, 1}, Letters{1}}});
  EXPECT_EQ(rs.normal_form(Letters{0, 2, 1}), (Letters{0, 1}));
}

////////////////////////////////////////////////////////////////////////////////
// Critical pairs and confluence
////////////////////////////////////////////////////////////////////////////////

TEST(CriticalPairs, KInf) {
  auto rs    = orient(preset("k-inf"));
  auto pairs = critical_pairs(rs);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].peak.to_string(), "e e e");
  EXPECT_EQ(pairs[1].peak.to_string(), "b b b");
  for (auto const& p : pairs) {
    EXPECT_TRUE(p.resolved);
    EXPECT_EQ(p.left_rule, p.right_rule);
  }
}

// Oracle: every word that is covered by two overlapping redex occurrences,
// one starting at 0 and one ending at the end, with the rule pair.
TEST(CriticalPairs, MatchOverlapEnumerationOracle) {
  for (auto const& name : all_presets) {
    auto rs     = orient(preset(name));
    auto oracle = string_rules(rs);
    std::set<std::pair<std::string, std::pair<std::size_t, std::size_t>>> expected;
    std::size_t max_peak = 0;
    for (auto const& r : rs.rules()) {
      max_peak = std::max(max_peak, 2 * r.lhs.size() - 1);
    }
    for (auto const& u : all_words(rs.generators().size(), max_peak)) {
      auto s = chars(rs, u);
      for (std::size_t i = 0; i < oracle.rules.size(); ++i) {
        auto const& li = oracle.rules[i].first;
        if (s.rfind(li, 0) != 0) {
          continue;
        }
        for (std::size_t j = 0; j < oracle.rules.size(); ++j) {
          auto const& lj = oracle.rules[j].first;
          for (std::size_t pos = 0; pos + lj.size() <= s.size(); ++pos) {
            if (s.compare(pos, lj.size(), lj) != 0 || (i == j && pos == 0)) {
              continue;
            }
            bool overlap   = pos > 0 && pos < li.size() && pos + lj.size() == s.size()
                           && s.size() > li.size();
            bool inclusion = s.size() == li.size() && i != j;
            if (overlap || inclusion) {
              expected.insert({s, {i, j}});
            }
          }
        }
      }
    }
    std::set<std::pair<std::string, std::pair<std::size_t, std::size_t>>> actual;
    for (auto const& p : critical_pairs(rs)) {
      actual.insert({chars(rs, p.peak.letters()), {p.left_rule, p.right_rule}});
      auto nfs = oracle.irreducible_descendants(chars(rs, p.peak.letters()));
      EXPECT_EQ(p.resolved, nfs.size() == 1) << name;
    }
    EXPECT_EQ(actual, expected) << name;
  }
}

TEST(CriticalPairs, EmptyRuleSet) {
  EXPECT_TRUE(critical_pairs(orient(parse_presentation("generators: x y\n"))).empty());
}

TEST(Confluence, Presets) {
  for (auto const& name : all_presets) {
    auto c = is_locally_confluent(orient(preset(name)));
    EXPECT_TRUE(c.confluent) << name;
    EXPECT_FALSE(c.first_unresolved);
  }
}

TEST(Confluence, ArtificialNonConfluent) {
  auto          p = parse_presentation("generators: a b\n");
  RewriteSystem rs(p, {{Letters{0, 1}, Letters{0}}, {Letters{0, 1}, Letters{1}}});
  auto          c = is_locally_confluent(rs);
  ASSERT_FALSE(c.confluent);
  EXPECT_EQ(c.first_unresolved->peak.to_string(), "a b");
  EXPECT_THROW(enumerate_normal_forms(rs, 2), NonConfluent);
}

////////////////////////////////////////////////////////////////////////////////
// Enumeration
////////////////////////////////////////////////////////////////////////////////

TEST(EnumerateNormalForms, KInfUpToThree) {
  auto rs  = orient(preset("k-inf"));
  auto nfs = enumerate_normal_forms(rs, 3);
  std::vector<std::string> got;
  for (auto const& u : nfs) {
    got.push_back(u.to_string());
  }
  EXPECT_EQ(got, (std::vector<std::string>{"1", "e", "b", "e b", "b e", "e b e", "b e b"}));
}

TEST(EnumerateNormalForms, MaxLenZero) {
  for (auto const& name : all_presets) {
    auto nfs = enumerate_normal_forms(orient(preset(name)), 0);
    ASSERT_EQ(nfs.size(), 1u);
    EXPECT_TRUE(nfs[0].empty());
  }
}

TEST(EnumerateNormalForms, DInfCount) {
  EXPECT_EQ(enumerate_normal_forms(orient(preset("d-inf")), 5).size(), 11u);
}

TEST(EnumerateNormalForms, MatchesFilterOracle) {
  for (auto const& name : all_presets) {
    auto                 rs     = orient(preset(name));
    auto                 oracle = string_rules(rs);
    std::vector<Letters> expected;
    for (auto const& u : all_words(rs.generators().size(), 9)) {
      if (oracle.irreducible(chars(rs, u))) {
        expected.push_back(u);
      }
    }
    std::vector<Letters> actual;
    for (auto const& u : enumerate_normal_forms(rs, 9)) {
      actual.push_back(u.letters());
    }
    EXPECT_EQ(actual, expected) << name;
  }
}

TEST(EnumerateNormalForms, FinitePresetStopsEarly) {
  EXPECT_EQ(enumerate_normal_forms(orient(preset("t")), 20).size(), 6u);
}

////////////////////////////////////////////////////////////////////////////////
// Completion
////////////////////////////////////////////////////////////////////////////////

TEST(KnuthBendix, PresetsAlreadyComplete) {
  auto k = knuth_bendix(preset("k-inf"));
  EXPECT_TRUE(k.complete());
  EXPECT_EQ(k.system.rules(), orient(preset("k-inf")).rules());
  auto t = knuth_bendix(preset("t"));
  EXPECT_TRUE(t.complete());
  EXPECT_EQ(t.system.rules().size(), 3u);
  auto free = knuth_bendix(parse_presentation("generators: x\n"));
  EXPECT_TRUE(free.complete());
  EXPECT_TRUE(free.system.rules().empty());
}

TEST(KnuthBendix, CompletesSymmetricGroup) {
  auto p = read_presentation_file(MONOIDLAB_DATA_DIR "/presentations/s3.txt");
  EXPECT_FALSE(is_locally_confluent(orient(p)).confluent);
  auto result = knuth_bendix(p);
  ASSERT_TRUE(result.complete());
  EXPECT_TRUE(is_locally_confluent(result.system).confluent);
  for (auto const& rel : p.relations()) {
    EXPECT_EQ(result.system.normal_form(rel.lhs), result.system.normal_form(rel.rhs));
  }
  EXPECT_EQ(enumerate_normal_forms(result.system, 10).size(), 6u);
  // Interreduced: no lhs is reducible by another rule.
  auto const& rules = result.system.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (i != j) {
        auto const& a = rules[i].lhs;
        auto const& b = rules[j].lhs;
        EXPECT_TRUE(std::search(a.begin(), a.end(), b.begin(), b.end()) == a.end());
      }
    }
    EXPECT_TRUE(result.system.is_irreducible(rules[i].rhs));
  }
}

TEST(KnuthBendix, BudgetGivesPartial) {
  // The positive braid monoid on three strands has no finite shortlex
  // completion.
  auto p      = parse_presentation("generators: a b\nrelation: a b a = b a b\n");
  auto result = knuth_bendix(p, {.max_rules = 10, .max_iterations = 50});
  EXPECT_FALSE(result.complete());
  auto iters = knuth_bendix(p, {.max_rules = 1000, .max_iterations = 3});
  EXPECT_FALSE(iters.complete());
  EXPECT_EQ(iters.iterations, 3u);
}

////////////////////////////////////////////////////////////////////////////////
// Invariants over the presets
////////////////////////////////////////////////////////////////////////////////

TEST(RewriteProperties, NormalFormIsIdempotent) {
  for (auto const& name : all_presets) {
    auto rs = orient(preset(name));
    for (auto const& u : all_words(rs.generators().size(), 12)) {
      auto once = rs.normal_form(u);
      ASSERT_EQ(rs.normal_form(once), once) << name;
      ASSERT_TRUE(rs.is_irreducible(once));
    }
  }
}

TEST(RewriteProperties, CongruenceCompatibility) {
  for (auto const& name : all_presets) {
    auto rs    = orient(preset(name));
    auto words = all_words(rs.generators().size(), 6);
    for (auto const& u : words) {
      auto nu = rs.normal_form(u);
      for (auto const& v : words) {
        Letters uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        Letters nuv = nu;
        auto    nv  = rs.normal_form(v);
        nuv.insert(nuv.end(), nv.begin(), nv.end());
        ASSERT_EQ(rs.normal_form(uv), rs.normal_form(nuv)) << name;
      }
    }
  }
}

TEST(RewriteProperties, AlternatingNormalForms) {
  for (auto const& name : {"j-inf", "d-inf", "k-inf"}) {
    auto rs = orient(preset(name));
    for (auto const& u : all_words(2, 10)) {
      bool alternating = true;
      for (std::size_t i = 1; i < u.size(); ++i) {
        alternating = alternating && u[i] != u[i - 1];
      }
      ASSERT_EQ(rs.is_irreducible(u), alternating) << name;
    }
    auto nfs = enumerate_normal_forms(rs, 16);
    for (std::size_t len = 0; len <= 16; ++len) {
      auto n = std::count_if(nfs.begin(), nfs.end(), [&](Word const& x) { return x.size() == len; });
      ASSERT_EQ(n, len == 0 ? 1 : 2) << name << " " << len;
    }
  }
}

TEST(RewriteProperties, RelationsHaveEqualNormalForms) {
  for (auto const& name : preset_names()) {
    auto p  = preset(name);
    auto rs = orient(p);
    for (auto const& rel : p.relations()) {
      EXPECT_EQ(rs.normal_form(rel.lhs), rs.normal_form(rel.rhs)) << name;
    }
  }
}

TEST(RewriteProperties, EveryStrategyReachesTheSameNormalForm) {
  std::mt19937 rng(2018);
  for (auto const& name : all_presets) {
    auto rs = orient(preset(name));
    for (auto const& u : all_words(rs.generators().size(), 8)) {
      auto expected = rs.normal_form(u);
      auto run      = [&](auto pick) {
        Letters cur = u;
        while (true) {
          auto rx = rs.redexes(cur);
          if (rx.empty()) {
            return cur;
          }
          cur = rs.rewrite(cur, pick(rx));
        }
      };
      auto leftmost  = run([](auto const& rx) { return rx.front(); });
      auto rightmost = run([](auto const& rx) { return rx.back(); });
      auto random    = run([&](auto const& rx) {
        return rx[std::uniform_int_distribution<std::size_t>(0, rx.size() - 1)(rng)];
      });
      ASSERT_EQ(leftmost, expected) << name;
      ASSERT_EQ(rightmost, expected) << name;
      ASSERT_EQ(random, expected) << name;
    }
  }
}
