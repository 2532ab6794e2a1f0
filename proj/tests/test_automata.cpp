#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "oracle.hpp"
#include "wldl/error.hpp"
#include "wldl/finite_semantics.hpp"
#include "wldl/nfa.hpp"
#include "wldl/random.hpp"
#include "wldl/translate.hpp"
#include "wldl/wfa.hpp"

using namespace wldl;
using namespace testing_support;

namespace {

const Alphabet kAb("ab");

Wfa single_letter(Semiring s, const Alphabet& alphabet, char letter, const std::string& k) {
  Wfa a(s, alphabet, 1);
  a.set_initial(0, s.one());
  a.set_final(0, s.one());
  a.add_transition(0, static_cast<std::size_t>(alphabet.index(letter)), 0, s.parse(k));
  return a;
}

Wfa random_wfa(Semiring s, std::mt19937_64& rng, bool proper) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const char* lits[] = {"0", "0", "1", "2", "3"};
  auto weight = [&] { return s.parse(lits[pick(5)]); };
  const std::size_t n = 1 + pick(3);
  Wfa a(s, kAb, n);
  for (State q = 0; q < n; ++q) {
    a.set_initial(q, weight());
    a.set_final(q, weight());
    for (std::size_t l = 0; l < 2; ++l)
      for (State r = 0; r < n; ++r) a.add_transition(q, l, r, weight());
  }
  if (proper) {
    Wfa b(s, kAb, n + 1);
    b.set_initial(n, s.one());
    for (State q = 0; q < n; ++q) {
      b.set_final(q, a.final(q));
      for (std::size_t l = 0; l < 2; ++l) {
        b.add_transition(n, l, q, weight());
        for (const auto& [r, w] : a.row(l, q)) b.add_transition(q, l, r, w);
      }
    }
    return b;
  }
  return a;
}

Weight cauchy_value(const Wfa& a, const Wfa& b, const Word& w) {
  Weight out = a.semiring().zero();
  for (std::size_t k = 0; k <= w.size(); ++k) out += wfa_eval(a, w.substr(0, k)) * wfa_eval(b, w.substr(k));
  return out;
}

Weight plus_value(const Wfa& a, const Word& w) {
  Weight out = wfa_eval(a, w);
  for (std::size_t k = 1; k < w.size(); ++k) out += wfa_eval(a, w.substr(0, k)) * plus_value(a, w.substr(k));
  return out;
}

}  // namespace

TEST(Wfa, EvalExamples) {
  const Wfa a = single_letter(kNat, Alphabet("a"), 'a', "2");
  EXPECT_EQ(wfa_eval(a, "aaa"), W(kNat, "8"));
  EXPECT_EQ(wfa_eval(a, ""), kNat.one());
  EXPECT_THROW(wfa_eval(a, "b"), UsageError);
  const Wfa e = gre_to_wfa(parse(Sort::Gre, "2 a . 3 b"), kNat, kAb);
  EXPECT_EQ(wfa_eval(e, "ab"), W(kNat, "6"));
  const Wfa two_a = gre_to_wfa(parse(Sort::Gre, "2 a"), kNat, kAb);
  EXPECT_EQ(wfa_eval(two_a, "a"), W(kNat, "2"));
  EXPECT_TRUE(wfa_eval(two_a, "").is_zero());
  EXPECT_TRUE(wfa_eval(two_a, "aa").is_zero());
  const Wfa two_eps = gre_to_wfa(parse(Sort::Gre, "2 eps"), kNat, kAb);
  EXPECT_EQ(wfa_eval(two_eps, ""), W(kNat, "2"));
  EXPECT_TRUE(wfa_eval(two_eps, "a").is_zero());
}

TEST(Wfa, ClosureExamples) {
  const Alphabet a("a");
  const Wfa two = gre_to_wfa(parse(Sort::Gre, "2 a", kNat, "a"), kNat, a);
  const Wfa three = gre_to_wfa(parse(Sort::Gre, "3 a", kNat, "a"), kNat, a);
  EXPECT_EQ(wfa_eval(wfa_sum(two, three), "a"), W(kNat, "5"));
  EXPECT_EQ(wfa_eval(wfa_hadamard(two, three), "a"), W(kNat, "6"));
  EXPECT_EQ(wfa_eval(wfa_plus(two), "aa"), W(kNat, "4"));
  EXPECT_TRUE(wfa_eval(wfa_plus(two), "").is_zero());
  EXPECT_THROW(wfa_plus(single_letter(kNat, a, 'a', "2")), ImproperPlus);
}

TEST(Wfa, ClosuresArePointwiseOnRandomPairs) {
  const auto words = words_up_to(kAb, 5);
  for (Semiring s : {kRat, kNat, kMinPlus}) {
    std::mt19937_64 rng(500 + static_cast<int>(s.kind()));
    for (int i = 0; i < 100; ++i) {
      const Wfa a = random_wfa(s, rng, false), b = random_wfa(s, rng, false), p = random_wfa(s, rng, true);
      const Wfa sum = wfa_sum(a, b), had = wfa_hadamard(a, b), cau = wfa_cauchy(a, b), pl = wfa_plus(p);
      for (const Word& w : words) {
        ASSERT_EQ(wfa_eval(sum, w), wfa_eval(a, w) + wfa_eval(b, w));
        ASSERT_EQ(wfa_eval(had, w), wfa_eval(a, w) * wfa_eval(b, w));
        ASSERT_EQ(wfa_eval(cau, w), cauchy_value(a, b, w));
        ASSERT_EQ(wfa_eval(pl, w), w.empty() ? s.zero() : plus_value(p, w));
      }
    }
  }
}

TEST(Wfa, GreCompilationMatchesOracle) {
  const auto words = words_up_to(kAb, 5);
  for (Semiring s : {kNat, kRat, kMinPlus}) {
    RandomAst gen(600 + static_cast<int>(s.kind()), kAb, s);
    for (int i = 0; i < 100; ++i) {
      const Ast e = gen.generate(Sort::Gre, 4);
      const Wfa a = gre_to_wfa(e, s, kAb);
      for (const Word& w : words) ASSERT_EQ(wfa_eval(a, w), oracle::eval_gre(e, w, s)) << print(e, Sort::Gre);
    }
  }
}

TEST(Wfa, JsonRoundTrip) {
  RandomAst gen(700, kAb, kRat);
  const auto words = words_up_to(kAb, 4);
  for (int i = 0; i < 50; ++i) {
    const Wfa a = gre_to_wfa(gen.generate(Sort::Gre, 4), kRat, kAb);
    const Wfa b = wfa_from_json(wfa_to_json(a));
    EXPECT_EQ(b.size(), a.size());
    EXPECT_EQ(b.semiring(), kRat);
    EXPECT_EQ(b.alphabet(), kAb);
    for (const Word& w : words) ASSERT_EQ(wfa_eval(a, w), wfa_eval(b, w));
  }
  EXPECT_THROW(wfa_from_json("{\"semiring\": \"nat\"}"), Error);
}

TEST(Nfa, Determinize) {
  const Nfa n = nfa_concat(nfa_letters(kAb, [](char c) { return c == 'a'; }), nfa_universal(kAb));
  const Dfa d = minimize(determinize(n));
  std::size_t live = 0;
  for (State q = 0; q < d.size(); ++q) {
    bool sink = !d.accepting[q];
    for (State r : d.next[q]) sink = sink && r == q;
    if (!sink) ++live;
  }
  EXPECT_EQ(live, 2u);
  EXPECT_TRUE(accepts(d, "ab"));
  EXPECT_FALSE(accepts(d, "ba"));
  EXPECT_FALSE(accepts(d, ""));
}

TEST(Nfa, ComplementAndProduct) {
  const Alphabet a("a");
  const Nfa star = to_nfa(determinize(nfa_universal(a)));
  const Dfa comp = complement(determinize(star));
  EXPECT_FALSE(accepts(comp, "a"));
  EXPECT_FALSE(accepts(comp, ""));
  const Nfa a_then_any = nfa_concat(nfa_letters(kAb, [](char c) { return c == 'a'; }), nfa_universal(kAb));
  EXPECT_TRUE(accepts(nfa_product(a_then_any, nfa_universal(kAb)), "ab"));
  EXPECT_FALSE(accepts(nfa_product(a_then_any, nfa_universal(kAb)), "b"));
}

TEST(Nfa, BudgetIsEnforced) {
  // (a+b)* a (a+b)^6 needs 2^7 subset states.
  Nfa n = nfa_letters(kAb, [](char c) { return c == 'a'; });
  for (int i = 0; i < 6; ++i) n = nfa_concat(n, nfa_letters(kAb, [](char) { return true; }));
  n = nfa_concat(nfa_universal(kAb), n);
  EXPECT_THROW(determinize(n, 16), StateBudgetExceeded);
  EXPECT_NO_THROW(determinize(n, 1 << 10));
}

TEST(ZeroOneRe, Examples) {
  const Dfa just_a = determinize(nfa_letters(kAb, [](char c) { return c == 'a'; }));
  const Ast e = dfa_to_zero_one_re(just_a, kNat);
  EXPECT_TRUE(is_hadamard_free(e));
  EXPECT_EQ(eval_gre(e, "a", kNat), kNat.one());
  EXPECT_TRUE(eval_gre(e, "aa", kNat).is_zero());
  EXPECT_TRUE(eval_gre(e, "", kNat).is_zero());

  const Dfa star = determinize(nfa_universal(Alphabet("a")));
  const Ast s = dfa_to_zero_one_re(star, kNat);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(eval_gre(s, Word(n, 'a'), kNat), kNat.one());

  const Ast none = dfa_to_zero_one_re(determinize(nfa_empty(kAb)), kNat);
  for (const Word& w : words_up_to(kAb, 3)) EXPECT_TRUE(eval_gre(none, w, kNat).is_zero());
}

TEST(ZeroOneRe, MatchesMembership) {
  const auto words = words_up_to(kAb, 6);
  RandomAst gen(800, kAb, kNat);
  for (int i = 0; i < 60; ++i) {
    const Ast psi = gen.generate(Sort::Ldl, 3);
    const Dfa d = minimize(determinize(ldl_to_nfa(psi, kAb)));
    const Ast e = dfa_to_zero_one_re(d, kNat);
    ASSERT_TRUE(is_hadamard_free(e));
    for (const Word& w : words) ASSERT_EQ(eval_gre(e, w, kNat), indicator(kNat, accepts(d, w))) << w;
  }
}

TEST(Equivalence, Examples) {
  const Wfa two = gre_to_wfa(parse(Sort::Gre, "2 a", kRat), kRat, kAb);
  const Wfa ones = gre_to_wfa(parse(Sort::Gre, "1 a + 1 a", kRat), kRat, kAb);
  const Wfa three = gre_to_wfa(parse(Sort::Gre, "3 a", kRat), kRat, kAb);
  EXPECT_TRUE(wfa_equiv_field(two, two).equivalent);
  EXPECT_TRUE(wfa_equiv_field(two, ones).equivalent);
  const EquivResult r = wfa_equiv_field(two, three);
  EXPECT_FALSE(r.equivalent);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, "a");
  const Wfa nat_two = gre_to_wfa(parse(Sort::Gre, "2 a", kNat), kNat, kAb);
  EXPECT_THROW(wfa_equiv_field(nat_two, nat_two), NotAField);
}

TEST(Equivalence, SoundOnRandomPairsAndWithinBasisBound) {
  const auto words = words_up_to(kAb, 8);
  std::mt19937_64 rng(900);
  RandomAst gen(901, kAb, kRat);
  const std::size_t trips_before = equiv_bound_trips();
  int equal_count = 0;
  for (int i = 0; i < 150; ++i) {
    const Ast e1 = gen.generate(Sort::Gre, 3);
    const Ast e2 = rng() % 3 == 0 ? e1 : (rng() % 2 ? ast::sum(e1, ast::eps(kRat.zero())) : gen.generate(Sort::Gre, 3));
    const Wfa a = gre_to_wfa(e1, kRat, kAb), b = gre_to_wfa(e2, kRat, kAb);
    const EquivResult r = wfa_equiv_field(a, b);
    EXPECT_LE(r.basis_size, r.dimension_bound);
    EXPECT_EQ(r.dimension_bound, a.size() + b.size());
    if (r.equivalent) {
      ++equal_count;
      for (const Word& w : words) ASSERT_EQ(wfa_eval(a, w), wfa_eval(b, w)) << w;
    } else {
      ASSERT_TRUE(r.witness.has_value());
      ASSERT_NE(wfa_eval(a, *r.witness), wfa_eval(b, *r.witness));
      for (const Word& w : words) {
        if (w == *r.witness) break;
        ASSERT_EQ(wfa_eval(a, w), wfa_eval(b, w)) << "witness not shortlex-minimal";
      }
    }
  }
  EXPECT_GT(equal_count, 30);
  EXPECT_EQ(equiv_bound_trips(), trips_before);
}
