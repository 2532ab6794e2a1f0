#include <gtest/gtest.h>

#include "common.hpp"
#include "oracle.hpp"
#include "wldl/error.hpp"
#include "wldl/omega.hpp"
#include "wldl/random.hpp"
#include "wldl/translate.hpp"

using namespace wldl;
using namespace testing_support;

namespace {

const Alphabet kAb("ab");

LassoWord L(const char* text) { return LassoWord::parse(text); }

}  // namespace

TEST(Lasso, Parse) {
  EXPECT_EQ(L(":a"), LassoWord("", "a"));
  EXPECT_EQ(L("ab:ba"), LassoWord("ab", "ba"));
  EXPECT_EQ(L("ab:ba").to_string(), "ab:ba");
  EXPECT_THROW(L("ab"), UsageError);
  EXPECT_THROW(L("a:"), UsageError);
  const LassoWord w("ab", "c");
  EXPECT_EQ(w.positions(), 3u);
  EXPECT_EQ(w.next(2), 2u);
  EXPECT_EQ(w.letter(10), 'c');
}

TEST(Lasso, Canonical) {
  EXPECT_EQ(LassoWord("ab", "abab").canonical(), LassoWord("a", "ba").canonical());
  EXPECT_EQ(LassoWord("ab", "abab").canonical(), LassoWord("", "ab"));
  EXPECT_EQ(LassoWord("b", "aa").canonical(), LassoWord("b", "a"));
}

TEST(Lasso, CanonicalFormsDecideEquality) {
  RandomAst gen(2000, kAb, kBoolean);
  int equal_pairs = 0;
  for (int i = 0; i < 500; ++i) {
    const LassoWord a = gen.lasso(4, 3);
    LassoWord b = gen.lasso(4, 3);
    if (i % 2 == 0) {
      const std::size_t k = gen.engine()() % 4;
      Word stem = a.stem, loop = a.loop;
      for (std::size_t j = 0; j < k; ++j) {
        stem += loop[0];
        loop = loop.substr(1) + loop[0];
      }
      Word powered;
      for (std::size_t j = 0, m = 1 + gen.engine()() % 3; j < m; ++j) powered += loop;
      b = LassoWord(stem, powered);
    }
    const bool same = oracle::same_prefix(a, b);
    if (same) ++equal_pairs;
    ASSERT_EQ(a.canonical() == b.canonical(), same) << a.to_string() << " vs " << b.to_string();
    ASSERT_TRUE(oracle::same_prefix(a, a.canonical()));
  }
  EXPECT_GE(equal_pairs, 250);
}

TEST(SatLdlo, Examples) {
  const Ast loop_a = parse(Sort::LdlOmega, "<a^w>true", kBoolean);
  EXPECT_TRUE(sat_ldlo(loop_a, L(":a"), kAb));
  EXPECT_FALSE(sat_ldlo(loop_a, L("b:a"), kAb));
  EXPECT_FALSE(sat_ldlo(loop_a, L("a:b"), kAb));
  EXPECT_TRUE(sat_ldlo(loop_a, L("a:ab"), kAb));
  EXPECT_TRUE(sat_ldlo(parse(Sort::LdlOmega, "true", kBoolean), L("ab:b"), kAb));
  EXPECT_TRUE(sat_ldlo(parse(Sort::LdlOmega, "<a>true", kBoolean), L("ab:b"), kAb));
  EXPECT_FALSE(sat_ldlo(parse(Sort::LdlOmega, "!true", kBoolean), L("ab:b"), kAb));
  EXPECT_FALSE(sat_ldlo(parse(Sort::LdlOmega, "<a^w>a", kBoolean), L(":a"), kAb));
}

TEST(LdloToNba, Examples) {
  const Nba n = ldlo_to_nba(parse(Sort::LdlOmega, "<a^w>true", kBoolean), kAb);
  EXPECT_TRUE(nba_accepts(n, L(":a")));
  EXPECT_FALSE(nba_accepts(n, L("a:b")));
  EXPECT_TRUE(nba_accepts(n, L("a:ab")));
  const Nba none = ldlo_to_nba(parse(Sort::LdlOmega, "!true", kBoolean), kAb);
  RandomAst gen(2100, kAb, kBoolean);
  for (int i = 0; i < 30; ++i) EXPECT_FALSE(nba_accepts(none, gen.lasso(3, 3)));
}

TEST(LdloToNba, MatchesOracleOnNegationLightFormulas) {
  RandomAst gen(2200, kAb, kBoolean);
  gen.set_negation_light(true);
  for (int i = 0; i < 100; ++i) {
    const Ast xi = gen.generate(Sort::LdlOmega, 4);
    for (int j = 0; j < 4; ++j) {
      const LassoWord w = gen.lasso(3, 3);
      ASSERT_EQ(sat_ldlo(xi, w, kAb), oracle::sat_ldlo(xi, w)) << print(xi, Sort::LdlOmega) << " on " << w.to_string();
    }
  }
}

TEST(LdloToNba, MatchesOracleWithComplementation) {
  RandomAst gen(2300, kAb, kBoolean);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const Ast xi = gen.generate(Sort::LdlOmega, 3);
    for (int j = 0; j < 4; ++j) {
      const LassoWord w = gen.lasso(3, 3);
      ASSERT_EQ(sat_ldlo(xi, w, kAb), oracle::sat_ldlo(xi, w)) << print(xi, Sort::LdlOmega) << " on " << w.to_string();
      ++checked;
    }
  }
  EXPECT_EQ(checked, 240);
}

TEST(NbaComplement, BudgetIsEnforced) {
  const Nba n = ldlo_to_nba(parse(Sort::LdlOmega, "<(a + b)^w>true & <(a;b)^w>true", kBoolean), kAb);
  EXPECT_THROW(nba_complement(n, 3), StateBudgetExceeded);
}

TEST(EvalWldlo, Examples) {
  const Ast z = parse(Sort::WLdlOmega, "<a^w> [true]", kMinPlus);
  EXPECT_EQ(eval_wldlo(z, L(":a"), kMinPlus, kAb), kMinPlus.one());
  EXPECT_EQ(eval_wldlo(z, L("b:a"), kMinPlus, kAb), kMinPlus.zero());
  const Ast k = parse(Sort::WLdlOmega, "3 (+) <a^w> [true]", kMinPlus);
  EXPECT_EQ(eval_wldlo(k, L(":a"), kMinPlus, kAb), kMinPlus.one());
  EXPECT_EQ(eval_wldlo(k, L(":b"), kMinPlus, kAb), W(kMinPlus, "3"));
  EXPECT_TRUE(eval_wldlo(parse(Sort::WLdlOmega, "<a^w> 2", kMinPlus), L(":a"), kMinPlus, kAb).is_zero());
  EXPECT_THROW(eval_wldlo(z, L(":a"), kNat, kAb), UnsupportedOmegaSemiring);
  EXPECT_THROW(eval_wldlo(parse(Sort::WLdlOmega, "<(2?)^w> [true]", kMinPlus), L(":a"), kMinPlus, kAb),
               ImproperIteration);
  const Ast costly = parse(Sort::WLdlOmega, "<(a . (1 (x) [true])? (+) b . (0 (x) [true])?)^w> [true]", kMinPlus);
  EXPECT_EQ(eval_wldlo(costly, L("aab:b"), kMinPlus, kAb), W(kMinPlus, "1"));
  EXPECT_EQ(eval_wldlo(costly, L("b:ab"), kMinPlus, kAb), kMinPlus.one());
  EXPECT_EQ(eval_wldlo(costly, L(":a"), kMinPlus, kAb), kMinPlus.zero());
  const Ast exact = parse(Sort::WLdlOmega, "<(a . (1 (x) [!a & !b])? (+) b . (0 (x) [!a & !b])?)^w> [true]", kMinPlus);
  for (const char* w : {"aab:b", "b:ab", ":a", "ab:ba"})
    EXPECT_EQ(eval_wldlo(exact, L(w), kMinPlus, kAb), oracle::eval_wldlo(exact, L(w), kMinPlus)) << w;
}

TEST(EvalWldlo, BooleanClassicalMatchesSat) {
  RandomAst gen(2400, kAb, kBoolean);
  gen.set_negation_light(true);
  for (int i = 0; i < 100; ++i) {
    const Ast xi = gen.generate(Sort::LdlOmega, 4);
    const LassoWord w = gen.lasso(3, 3);
    ASSERT_EQ(eval_wldlo(ast::embed(xi), w, kBoolean, kAb), indicator(kBoolean, sat_ldlo(xi, w, kAb)));
  }
}

TEST(EvalWldlo, MatchesOracle) {
  for (Semiring s : {kBoolean, kMinPlus}) {
    RandomAst gen(2500 + static_cast<int>(s.kind()), kAb, s);
    gen.set_negation_light(true);
    for (int i = 0; i < 100; ++i) {
      const Ast z = gen.generate(Sort::WLdlOmega, 4);
      for (int j = 0; j < 3; ++j) {
        const LassoWord w = gen.lasso(3, 3);
        ASSERT_EQ(eval_wldlo(z, w, s, kAb), oracle::eval_wldlo(z, w, s))
            << print(z, Sort::WLdlOmega) << " on " << w.to_string();
      }
    }
  }
}

TEST(WldloToWba, Examples) {
  const Ast xi = parse(Sort::LdlOmega, "<a^w>true", kMinPlus);
  const Wba c = wldlo_to_wba(ast::embed(xi), kMinPlus, kAb);
  for (std::size_t l = 0; l < kAb.size(); ++l)
    for (State q = 0; q < c.graph.size(); ++q)
      for (const auto& [r, w] : c.graph.row(l, q)) EXPECT_TRUE(w.is_zero() || w.is_one());
  const Ast z = parse(Sort::WLdlOmega, "<a^w> [true]", kMinPlus);
  const Wba a = wldlo_to_wba(z, kMinPlus, kAb);
  RandomAst gen(2600, kAb, kMinPlus);
  for (int i = 0; i < 50; ++i) {
    const LassoWord w = gen.lasso(3, 3);
    EXPECT_EQ(wba_eval(a, w), eval_wldlo(z, w, kMinPlus, kAb)) << w.to_string();
  }
  const Ast z2 = parse(Sort::WLdlOmega, "<b^w> [true]", kMinPlus);
  const Wba b = wldlo_to_wba(z2, kMinPlus, kAb);
  const Wba u = wldlo_to_wba(ast::oplus(z, z2), kMinPlus, kAb);
  EXPECT_EQ(u.graph.size(), a.graph.size() + b.graph.size());
  EXPECT_THROW(wldlo_to_wba(z, kNat, kAb), NotIdempotent);
}

TEST(WldloToWba, MatchesEvaluator) {
  for (Semiring s : {kBoolean, kMinPlus}) {
    RandomAst gen(2700 + static_cast<int>(s.kind()), kAb, s);
    gen.set_negation_light(true);
    for (int i = 0; i < 60; ++i) {
      const Ast z = gen.generate(Sort::WLdlOmega, 3);
      const Wba a = wldlo_to_wba(z, s, kAb);
      for (int j = 0; j < 3; ++j) {
        const LassoWord w = gen.lasso(3, 3);
        ASSERT_EQ(wba_eval(a, w), eval_wldlo(z, w, s, kAb)) << print(z, Sort::WLdlOmega) << " on " << w.to_string();
      }
    }
  }
}

TEST(EvalGreo, Examples) {
  const Ast e = parse(Sort::GreOmega, "(1 a)^w", kBoolean);
  EXPECT_EQ(eval_greo(e, L(":a"), kBoolean, kAb), kBoolean.one());
  EXPECT_EQ(eval_greo(e, L("a:b"), kBoolean, kAb), kBoolean.zero());
  EXPECT_EQ(eval_greo(parse(Sort::GreOmega, "(2 a)^w", kMinPlus), L(":a"), kMinPlus, kAb), kMinPlus.zero());
  EXPECT_EQ(eval_greo(parse(Sort::GreOmega, "1 b . (0 a)^w", kMinPlus), L("b:a"), kMinPlus, kAb), W(kMinPlus, "1"));
  EXPECT_EQ(oracle::eval_greo(parse(Sort::GreOmega, "1 b . (0 a)^w", kMinPlus), L("b:a"), kMinPlus), W(kMinPlus, "1"));
  EXPECT_THROW(eval_greo(e, L(":a"), kNat, kAb), UnsupportedOmegaSemiring);
}

TEST(EvalGreo, MatchesOracle) {
  for (Semiring s : {kBoolean, kMinPlus}) {
    RandomAst gen(2800 + static_cast<int>(s.kind()), kAb, s);
    for (int i = 0; i < 100; ++i) {
      const Ast e = gen.generate(Sort::GreOmega, 4);
      const Wba a = greo_to_wba(e, s, kAb);
      for (int j = 0; j < 3; ++j) {
        const LassoWord w = gen.lasso(3, 3);
        const Weight v = oracle::eval_greo(e, w, s);
        ASSERT_EQ(eval_greo(e, w, s, kAb), v) << print(e, Sort::GreOmega) << " on " << w.to_string();
        ASSERT_EQ(wba_eval(a, w), v) << print(e, Sort::GreOmega) << " on " << w.to_string();
      }
    }
  }
}
