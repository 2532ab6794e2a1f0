#include <gtest/gtest.h>

#include <cctype>

#include "common.hpp"
#include "wldl/error.hpp"
#include "wldl/finite_semantics.hpp"
#include "wldl/random.hpp"
#include "wldl/syntax.hpp"

using namespace wldl;
using namespace testing_support;

TEST(Parse, TestThenLast) {
  const Ast f = parse(Sort::WLdl, "<(2 (x) [a])?> last");
  const Alphabet ab("ab");
  const Ast expected = ast::diamond(
      ast::test(ast::otimes(ast::constant(W(kNat, "2")), ast::embed(ast::atom('a')))),
      ast::embed(expand_last(ab)));
  EXPECT_TRUE(equal(f, expected)) << print(f, Sort::WLdl);
}

TEST(Parse, PlusOfLetter) {
  const Ast e = parse(Sort::Gre, "(1 a)^+", kNat, "a");
  EXPECT_TRUE(equal(e, ast::plus(ast::letter(W(kNat, "1"), 'a'))));
  EXPECT_EQ(print(e, Sort::Gre), "(1 a)^+");
}

TEST(Parse, ImproperIterationIsSyntacticallyFine) {
  const Ast f = parse(Sort::WLdl, "<(2?)^+> [true]");
  EXPECT_EQ(f->op, Op::Diamond);
  EXPECT_EQ(f->kid(0)->op, Op::Iter);
}

TEST(Print, Examples) {
  EXPECT_EQ(print(ast::constant(W(kMinPlus, "2")), Sort::WLdl), "2");
  EXPECT_EQ(print(ast::weighted_true(), Sort::WLdl), "[true]");
  EXPECT_EQ(print(ast::eps(W(kNat, "2")), Sort::Gre), "2 eps");
}

TEST(Parse, Precedence) {
  const Ast f = parse(Sort::WLdl, "1 (+) 2 (x) 3");
  ASSERT_EQ(f->op, Op::OPlus);
  EXPECT_EQ(f->kid(1)->op, Op::OTimes);
  const Ast e = parse(Sort::Gre, "1 a + 2 b (.) 3 b . 1 a");
  ASSERT_EQ(e->op, Op::Sum);
  ASSERT_EQ(e->kid(1)->op, Op::Hadamard);
  EXPECT_EQ(e->kid(1)->kid(1)->op, Op::Cauchy);
  const Ast u = parse(Sort::Ltl, "a U b U a");
  ASSERT_EQ(u->op, Op::Until);
  EXPECT_EQ(u->kid(1)->op, Op::Until);
}

TEST(Parse, Errors) {
  try {
    parse(Sort::WLdl, "<(2 (x) [a])?>\n  (+)");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GE(e.column(), 1u);
  }
  EXPECT_THROW(parse(Sort::Ldl, "<c>true"), ParseError);
  EXPECT_THROW(parse(Sort::WLdl, "1/2 (x) [a]", kNat), ParseError);
  EXPECT_THROW(parse(Sort::WLdl, "<a^w>[true]"), ParseError);
  EXPECT_THROW(parse(Sort::Gre, "(1 a)^w"), ParseError);
}

TEST(Parse, DoubleNegationIsIdentified) {
  EXPECT_TRUE(equal(parse(Sort::Ldl, "!!a"), ast::atom('a')));
  EXPECT_TRUE(equal(parse(Sort::Ldl, "!(!(<a>true))"), parse(Sort::Ldl, "<a>true")));
}

TEST(ExpandLast, Shape) {
  EXPECT_TRUE(equal(expand_last(Alphabet("a")), ast::diamond(ast::step(ast::tt()), ast::neg(ast::atom('a')))));
  EXPECT_TRUE(equal(expand_last(Alphabet("ab")),
                    ast::diamond(ast::step(ast::tt()), ast::conj(ast::neg(ast::atom('a')), ast::neg(ast::atom('b'))))));
  EXPECT_TRUE(sat_ldl(expand_last(Alphabet("ab")), "a"));
  EXPECT_FALSE(sat_ldl(expand_last(Alphabet("ab")), "ab"));
  EXPECT_FALSE(sat_ldl(expand_last(Alphabet("ab")), ""));
}

TEST(Rltl, StepFormulas) {
  EXPECT_TRUE(is_ltl_step(parse(Sort::WLtl, "2 (x) [a] (+) 3 (x) [b]")));
  EXPECT_TRUE(is_ltl_step(parse(Sort::WLtl, "2")));
  EXPECT_TRUE(is_ltl_step(parse(Sort::WLtl, "[a U b]")));
  EXPECT_FALSE(is_ltl_step(parse(Sort::WLtl, "G* 2")));
  EXPECT_FALSE(is_ltl_step(parse(Sort::WLtl, "X 2")));
}

TEST(Rltl, Fragment) {
  EXPECT_TRUE(is_rltl(parse(Sort::WLtl, "G* 2")));
  EXPECT_FALSE(is_rltl(parse(Sort::WLtl, "G* G* 2")));
  EXPECT_FALSE(is_rltl(parse(Sort::WLtl, "(G* 2) U [a]")));
  EXPECT_TRUE(is_rltl(parse(Sort::WLtl, "(2 (x) [a]) U (G* 3)")));
  const Ast off = rltl_offender(parse(Sort::WLtl, "G* G* 2"));
  ASSERT_TRUE(off);
  EXPECT_EQ(print(off, Sort::WLtl), "G* 2");
}

TEST(Rltl, VacuousWithoutBoxOrUntil) {
  RandomAst gen(7, Alphabet("ab"), kNat);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    const Ast f = gen.generate(Sort::WLtl, 4);
    if (any_node(f, [](const Node& n) { return n.op == Op::BoxTimes || n.op == Op::Until; })) continue;
    EXPECT_TRUE(is_rltl(f)) << print(f, Sort::WLtl);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(FormulaFile, HeaderAndComments) {
  const FormulaFile f = read_formula_text("# comment\nalphabet: b a\n\n<a>true\n");
  ASSERT_TRUE(f.alphabet.has_value());
  EXPECT_EQ(f.alphabet->letters(), "ab");
  EXPECT_TRUE(equal(parse(Sort::Ldl, f.text), parse(Sort::Ldl, "<a>true")));
  EXPECT_FALSE(read_formula_text("<a>true").alphabet.has_value());
  EXPECT_EQ(letters_in_text("<(2 (x) [c])?> last (+) [true]"), "c");
}

class RoundTrip : public ::testing::TestWithParam<Sort> {};

TEST_P(RoundTrip, ParseOfPrintIsIdentity) {
  const Sort sort = GetParam();
  const Semiring s = is_omega_sort(sort) ? kMinPlus : kRat;
  RandomAst gen(100 + static_cast<int>(sort), Alphabet("abc"), s);
  for (int i = 0; i < 1000; ++i) {
    const Ast t = gen.generate(sort, 1 + i % 6);
    const std::string text = print(t, sort);
    Ast back;
    ASSERT_NO_THROW(back = wldl::parse(sort, text, Alphabet("abc"), s)) << text;
    ASSERT_TRUE(equal(t, back)) << text << "\n" << print(back, sort);
    ASSERT_FALSE(any_node(back, [](const Node& n) { return n.op == Op::Not && n.kid(0)->op == Op::Not; }));
  }
}

INSTANTIATE_TEST_SUITE_P(AllSorts, RoundTrip,
                         ::testing::Values(Sort::Prop, Sort::Ldl, Sort::LdlPath, Sort::LdlOmega, Sort::LdlOmegaPath,
                                           Sort::WLdl, Sort::WPath, Sort::WLdlOmega, Sort::WPathOmega, Sort::Gre,
                                           Sort::GreOmega, Sort::Ltl, Sort::WLtl),
                         [](const auto& info) {
                           std::string n(sort_name(info.param));
                           for (auto& c : n)
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           return n;
                         });
