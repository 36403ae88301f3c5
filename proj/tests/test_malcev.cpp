#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monoidlab/malcev.hpp"
#include "monoidlab/presentation.hpp"
#include "oracles.hpp"

using namespace monoidlab;
using namespace oracle;

namespace {

RewriteSystem const& k_rs() {
  static RewriteSystem const rs = orient(preset("k-inf"));
  return rs;
}

RewriteSystem const& d_rs() {
  static RewriteSystem const rs = orient(preset("d-inf"));
  return rs;
}

FiniteMonoid const& t_monoid() {
  static FiniteMonoid const m = build_finite(orient(preset("t")));
  return m;
}

FiniteMonoid const& c2_monoid() {
  static FiniteMonoid const m = build_finite(orient(preset("c2")));
  return m;
}

FiniteMonoid const& trivial_monoid() {
  static FiniteMonoid const m = build_finite(orient(parse_presentation("generators:\n")));
  return m;
}

Homomorphism const& k_to_t() {
  static Homomorphism const h =
      make_hom(k_rs(), parse_generator_map("e=f,b=g", k_rs(), t_monoid()), t_monoid());
  return h;
}

Homomorphism const& d_to_c2() {
  static Homomorphism const h =
      make_hom(d_rs(), parse_generator_map("a=c,b=c", d_rs(), c2_monoid()), c2_monoid());
  return h;
}

std::string read_file(std::string const& path) {
  std::ifstream      in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ClassDescriptor> k_descriptors() {
  return parse_class_descriptors(read_file(MONOIDLAB_DATA_DIR "/descriptors/k-inf-t.txt"),
                                 k_to_t());
}

KernelClass const& class_of(std::vector<KernelClass> const& classes, FiniteMonoid const& m,
                            std::string_view element) {
  auto q = m.parse_element(element);
  for (auto const& c : classes) {
    if (c.image == q) {
      return c;
    }
  }
  throw std::runtime_error("no such class");
}

std::vector<std::string> texts(std::vector<Word> const& ws) {
  std::vector<std::string> out;
  for (auto const& w : ws) {
    out.push_back(w.to_string());
  }
  return out;
}

}  // namespace

////////////////////////////////////////////////////////////////////////////////
// Classification
////////////////////////////////////////////////////////////////////////////////

TEST(Classify, KInfOntoTAtFour) {
  auto classes = classify(k_to_t(), 4);
  ASSERT_EQ(classes.size(), 6u);
  auto const& f = class_of(classes, t_monoid(), "f");
  EXPECT_EQ(texts(f.members), (std::vector<std::string>{"e", "e b e"}));
  EXPECT_TRUE(f.idempotent);
  auto const& g = class_of(classes, t_monoid(), "g");
  EXPECT_EQ(texts(g.members), (std::vector<std::string>{"b"}));
  EXPECT_FALSE(g.idempotent);
  auto const& gfg = class_of(classes, t_monoid(), "g f g");
  EXPECT_EQ(texts(gfg.members), (std::vector<std::string>{"b e b"}));
  EXPECT_EQ(texts(class_of(classes, t_monoid(), "1").members), (std::vector<std::string>{"1"}));
}

TEST(Classify, IdentityOnTGivesSingletons) {
  auto        t_rs = orient(preset("t"));
  auto const& t    = t_monoid();
  auto        h    = make_hom(t_rs, {t.generator(0), t.generator(1)}, t);
  for (std::size_t bound : {0u, 3u, 9u}) {
    auto classes = classify(h, bound);
    EXPECT_EQ(classes.size(), std::min<std::size_t>(6, 1 + 2 * bound + (bound >= 3 ? 1 : 0)));
    for (auto const& c : classes) {
      EXPECT_EQ(c.members.size(), 1u);
    }
  }
  EXPECT_EQ(classify(h, 9).size(), 6u);
}

////////////////////////////////////////////////////////////////////////////////
// Descriptors
////////////////////////////////////////////////////////////////////////////////

TEST(Descriptors, KInfOntoTMatchesAtTwelve) {
  auto descriptors = k_descriptors();
  ASSERT_EQ(descriptors.size(), 6u);
  auto m = match_class_descriptors(k_to_t(), 12, descriptors);
  EXPECT_TRUE(m.matched);
  EXPECT_TRUE(m.mismatches.empty());
}

TEST(Descriptors, MisDeclaredClassFails) {
  auto text = read_file(MONOIDLAB_DATA_DIR "/descriptors/k-inf-t.txt");
  auto pos  = text.find("class f: pattern (e b)^k e k>=0");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 31, "class f: pattern (b e)^k e k>=0");
  auto m = match_class_descriptors(k_to_t(), 12, parse_class_descriptors(text, k_to_t()));
  EXPECT_FALSE(m.matched);
  bool mentions_bee = false;
  for (auto const& s : m.mismatches) {
    mentions_bee = mentions_bee || s.find("b e e") != std::string::npos;
  }
  EXPECT_TRUE(mentions_bee);
}

TEST(Descriptors, MissingClassFails) {
  auto d = k_descriptors();
  d.erase(d.begin() + 1);
  auto m = match_class_descriptors(k_to_t(), 6, d);
  EXPECT_FALSE(m.matched);
  EXPECT_EQ(m.mismatches, (std::vector<std::string>{"class g has no descriptor"}));
}

TEST(Descriptors, DInfOntoC2Alternating) {
  auto d = parse_class_descriptors(
      "class 1: pattern (a b)^k k>=0\n"
      "class 1: pattern (b a)^k k>0\n"
      "class c: pattern (a b)^k a k>=0\n"
      "class c: pattern (b a)^k b k>=0\n",
      d_to_c2());
  EXPECT_TRUE(match_class_descriptors(d_to_c2(), 10, d).matched);
}

TEST(Descriptors, ListAndPrefixForms) {
  auto d = parse_class_descriptors(
      "class 1: singleton 1\n"
      "class g: list b\n"
      "class f: pattern e (b e)^k k>=0\n"
      "class g f: pattern (b e)^k k>0\n"
      "class f g: pattern (e b)^k k>0\n"
      "class g f g: pattern b (e b)^k k>0\n",
      k_to_t());
  EXPECT_TRUE(match_class_descriptors(k_to_t(), 12, d).matched);
  auto list = parse_class_descriptor("class f: list e, e b e", k_to_t());
  EXPECT_EQ(list.pattern.instances(10).size(), 2u);
  EXPECT_EQ(list.pattern.instances(2).size(), 1u);
}

TEST(Descriptors, Malformed) {
  auto line_of = [](std::string const& text) -> std::size_t {
    try {
      parse_class_descriptors(text, k_to_t());
    } catch (ParseError const& e) {
      return e.line();
    }
    return 999;
  };
  EXPECT_EQ(line_of("# c\nclass f: pattern (e b)^k e k>=1\n"), 2u);
  EXPECT_EQ(line_of("class f: pattern (e b e)^k\n"), 1u);
  EXPECT_EQ(line_of("class f: pattern (e z)^k\n"), 1u);
  EXPECT_EQ(line_of("class q: singleton e\n"), 1u);
  EXPECT_EQ(line_of("class f singleton e\n"), 1u);
  EXPECT_EQ(line_of("klass f: singleton e\n"), 1u);
  EXPECT_EQ(line_of("class f: regex e*\n"), 1u);
  EXPECT_EQ(line_of("\nclass f: singleton e z\n"), 2u);
}

////////////////////////////////////////////////////////////////////////////////
// Commutativity and evidence
////////////////////////////////////////////////////////////////////////////////

TEST(ClassCommutative, Examples) {
  auto const& t = t_monoid();
  auto        f = class_commutative(k_to_t(), t.parse_element("f"), 10);
  EXPECT_TRUE(f.commutative);
  EXPECT_EQ(f.members, 5u);
  EXPECT_EQ(f.pairs_checked, 10u);
  auto one = class_commutative(k_to_t(), t.identity(), 10);
  EXPECT_TRUE(one.commutative);
  EXPECT_EQ(one.members, 1u);
  EXPECT_EQ(one.pairs_checked, 0u);
  EXPECT_EQ(k_rs().normal_form(Word::parse(k_rs().generators(), "e e b e")).to_string(), "e b e");
  EXPECT_EQ(k_rs().normal_form(Word::parse(k_rs().generators(), "e b e e")).to_string(), "e b e");
}

TEST(ClassCommutative, IdentityHomOnT) {
  auto        t_rs = orient(preset("t"));
  auto const& t    = t_monoid();
  auto        h    = make_hom(t_rs, {t.generator(0), t.generator(1)}, t);
  for (auto q : idempotents(t)) {
    EXPECT_TRUE(class_commutative(h, q, 8).commutative);
  }
}

TEST(ClassCommutative, RejectsNonIdempotent) {
  EXPECT_THROW(class_commutative(k_to_t(), t_monoid().parse_element("g"), 4), InvalidArgument);
  EXPECT_THROW(class_commutative(k_to_t(), 17, 4), InvalidArgument);
}

TEST(MalcevEvidence, KInfOntoT) {
  auto r = malcev_com_fin_evidence(k_rs(), t_monoid(), {1, 2}, 10);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.homomorphism, "e=f,b=g");
  EXPECT_EQ(r.idempotent_classes.size(), 5u);
  EXPECT_EQ(r.unchecked, (std::vector<Element>{2}));
  std::map<std::string, std::size_t> sizes;
  for (auto const& v : r.idempotent_classes) {
    EXPECT_TRUE(v.commutative);
    EXPECT_EQ(v.bound, 10u);
    sizes[t_monoid().element(v.image).to_string()] = v.members;
  }
  EXPECT_EQ(sizes, (std::map<std::string, std::size_t>{
                       {"1", 1}, {"f", 5}, {"f g", 5}, {"g f", 5}, {"g f g", 4}}));
}

TEST(MalcevEvidence, DInfOntoC2) {
  auto r = malcev_com_fin_evidence(d_rs(), c2_monoid(), {1, 1}, 10);
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.idempotent_classes.size(), 1u);
  EXPECT_EQ(r.idempotent_classes[0].members, 11u);
  EXPECT_EQ(r.unchecked, (std::vector<Element>{1}));
}

TEST(MalcevEvidence, FreeMonoidOntoTrivialFails) {
  auto free = orient(parse_presentation("generators: x y\n"));
  auto r    = malcev_com_fin_evidence(free, trivial_monoid(), {0, 0}, 4);
  ASSERT_FALSE(r.passed());
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.failure->counterexample->first.to_string(), "x");
  EXPECT_EQ(r.failure->counterexample->second.to_string(), "y");
}

TEST(MalcevEvidence, InvalidHomPropagates) {
  EXPECT_THROW(malcev_com_fin_evidence(k_rs(), t_monoid(), {2, 2}, 4), RelationViolated);
}

////////////////////////////////////////////////////////////////////////////////
// Properties
////////////////////////////////////////////////////////////////////////////////

TEST(MalcevProperties, IdempotentClassesAreClosed) {
  for (auto const* h : {&k_to_t(), &d_to_c2()}) {
    for (auto const& c : classify(*h, 8)) {
      if (!c.idempotent) {
        continue;
      }
      for (auto const& u : c.members) {
        for (auto const& v : c.members) {
          auto uv = h->source().normal_form(concat(u, v));
          ASSERT_EQ(h->image(uv), c.image);
        }
      }
    }
  }
}

TEST(MalcevProperties, ClassesPartitionWithPatternCounts) {
  auto const& t = t_monoid();
  for (std::size_t L = 0; L <= 12; ++L) {
    auto                               classes = classify(k_to_t(), L);
    std::set<Letters>                  seen;
    std::map<std::string, std::size_t> sizes;
    for (auto const& c : classes) {
      for (auto const& w : c.members) {
        ASSERT_TRUE(seen.insert(w.letters()).second);
        ASSERT_EQ(k_to_t().image(w), c.image);
      }
      sizes[t.element(c.image).to_string()] = c.members.size();
    }
    ASSERT_EQ(seen.size(), 1 + 2 * L);
    auto get = [&](std::string const& k) { return sizes.contains(k) ? sizes[k] : 0; };
    // (eb)^k e: 2k+1 <= L; (eb)^k, (be)^k with k>0: 2k <= L;
    // (be)^k b with k>0: 2k+1 <= L.
    std::size_t const odd_from0 = L == 0 ? 0 : (L - 1) / 2 + 1;
    std::size_t const even_pos  = L / 2;
    std::size_t const odd_pos   = L == 0 ? 0 : (L - 1) / 2;
    EXPECT_EQ(get("1"), 1u);
    EXPECT_EQ(get("g"), L >= 1 ? 1u : 0u);
    EXPECT_EQ(get("f"), odd_from0) << L;
    EXPECT_EQ(get("f g"), even_pos) << L;
    EXPECT_EQ(get("g f"), even_pos) << L;
    EXPECT_EQ(get("g f g"), odd_pos) << L;
  }
}

TEST(MalcevProperties, PassIsStableUnderLargerBounds) {
  for (std::size_t L = 0; L <= 12; ++L) {
    EXPECT_TRUE(malcev_com_fin_evidence(k_rs(), t_monoid(), {1, 2}, L).passed()) << L;
    EXPECT_TRUE(malcev_com_fin_evidence(d_rs(), c2_monoid(), {1, 1}, L).passed()) << L;
  }
}

TEST(MalcevProperties, FailuresReVerify) {
  auto free = orient(parse_presentation("generators: x y\n"));
  std::vector<std::pair<RewriteSystem, MalcevReport>> cases;
  cases.emplace_back(k_rs(), malcev_com_fin_evidence(k_rs(), trivial_monoid(), {0, 0}, 6));
  cases.emplace_back(free, malcev_com_fin_evidence(free, trivial_monoid(), {0, 0}, 4));
  cases.emplace_back(free, malcev_com_fin_evidence(free, c2_monoid(), {1, 1}, 4));
  for (auto const& [rs, r] : cases) {
    ASSERT_FALSE(r.passed());
    auto const& [u, v] = *r.failure->counterexample;
    Letters uv         = concat(u, v).letters();
    Letters vu         = concat(v, u).letters();
    EXPECT_NE(unique_normal_form(rs, uv), unique_normal_form(rs, vu));
  }
  auto const& k = cases[0].second;
  EXPECT_EQ(k.failure->image, 0u);
  EXPECT_EQ(k.failure->counterexample->first.to_string(), "e");
  EXPECT_EQ(k.failure->counterexample->second.to_string(), "b");
  auto c2 = cases[2].second;
  auto h  = make_hom(free, {1, 1}, c2_monoid());
  EXPECT_EQ(h.image(c2.failure->counterexample->first), c2.failure->image);
  EXPECT_EQ(h.image(c2.failure->counterexample->second), c2.failure->image);
  EXPECT_EQ(c2_monoid().product(c2.failure->image, c2.failure->image), c2.failure->image);
}
