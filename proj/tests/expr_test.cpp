#include "lot/expr.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "lot/expr_set.hpp"
#include "test_util.hpp"

namespace lot {
namespace {

TEST(Parse, NegatedImplication) {
    Expr e = parse_expr("¬A → ¬B");  // ¬A → ¬B
    ASSERT_TRUE(e.is(Expr::Kind::Implies));
    ASSERT_TRUE(e.lhs().is(Expr::Kind::Not));
    EXPECT_EQ(e.lhs().operand().symbol(), "A");
    ASSERT_TRUE(e.rhs().is(Expr::Kind::Not));
    EXPECT_EQ(e.rhs().operand().symbol(), "B");
}

TEST(Parse, ConjunctionBindsTighterThanImplication) {
    Expr e = parse_expr("A -> B & C");
    ASSERT_TRUE(e.is(Expr::Kind::Implies));
    EXPECT_EQ(e.lhs().symbol(), "A");
    ASSERT_TRUE(e.rhs().is(Expr::Kind::And));
    EXPECT_EQ(e.rhs().lhs().symbol(), "B");
    EXPECT_EQ(e.rhs().rhs().symbol(), "C");
}

TEST(Parse, NegationBindsTighterThanConjunction) {
    Expr e = parse_expr("¬A ∧ B → C");  // ¬A ∧ B → C
    ASSERT_TRUE(e.is(Expr::Kind::Implies));
    ASSERT_TRUE(e.lhs().is(Expr::Kind::And));
    EXPECT_TRUE(e.lhs().lhs().is(Expr::Kind::Not));
    EXPECT_EQ(e.lhs().rhs().symbol(), "B");
}

TEST(Parse, ImplicationIsRightAssociative) {
    Expr e = parse_expr("A → B → C");
    ASSERT_TRUE(e.is(Expr::Kind::Implies));
    EXPECT_EQ(e.lhs().symbol(), "A");
    ASSERT_TRUE(e.rhs().is(Expr::Kind::Implies));
    EXPECT_EQ(e.rhs().lhs().symbol(), "B");
    EXPECT_EQ(e.rhs().rhs().symbol(), "C");
}

TEST(Parse, ConjunctionIsLeftAssociative) {
    Expr e = parse_expr("A & B & C");
    ASSERT_TRUE(e.is(Expr::Kind::And));
    ASSERT_TRUE(e.lhs().is(Expr::Kind::And));
    EXPECT_EQ(e.lhs().lhs().symbol(), "A");
    EXPECT_EQ(e.lhs().rhs().symbol(), "B");
    EXPECT_EQ(e.rhs().symbol(), "C");
}

TEST(Parse, AsciiAndKeywordSpellings) {
    EXPECT_EQ(parse_expr("not A -> B and C"), parse_expr("¬A → B ∧ C"));
    EXPECT_EQ(parse_expr("~A -> B & C"), parse_expr("¬A → B ∧ C"));
    EXPECT_EQ(parse_expr("NOT A -> B AND C"), parse_expr("¬A → B ∧ C"));
}

TEST(Parse, Parentheses) {
    Expr e = parse_expr("(A → B) → C");
    ASSERT_TRUE(e.is(Expr::Kind::Implies));
    EXPECT_TRUE(e.lhs().is(Expr::Kind::Implies));
    EXPECT_EQ(e.rhs().symbol(), "C");

    EXPECT_EQ(parse_expr("¬(A ∧ B)").kind(), Expr::Kind::Not);
}

TEST(Parse, SyntaxErrorsCarryByteOffsets) {
    try {
        parse_expr("A →");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& err) {
        EXPECT_EQ(err.byte_offset(), 5u);  // after "A " + 3-byte arrow
        EXPECT_FALSE(err.expected().empty());
    }

    try {
        parse_expr("A B");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& err) {
        EXPECT_EQ(err.byte_offset(), 2u);
    }

    try {
        parse_expr("(A → B");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& err) {
        EXPECT_EQ(err.byte_offset(), 0u);  // points at the unbalanced '('
    }

    EXPECT_THROW(parse_expr(""), SyntaxError);
    EXPECT_THROW(parse_expr("A @ B"), SyntaxError);
    EXPECT_THROW(parse_expr("A → → B"), SyntaxError);
}

TEST(Parse, DepthLimit) {
    std::string text;
    for (int i = 0; i < 31; ++i) text += "¬";
    text += "A";  // depth 32
    EXPECT_NO_THROW(parse_expr(text));
    EXPECT_THROW(parse_expr("¬" + text), SyntaxError);  // depth 33
    EXPECT_NO_THROW(parse_expr("¬" + text, 64));
}

TEST(Render, CanonicalForms) {
    EXPECT_EQ(render_expr(parse_expr("~A -> ~B")), "¬A → ¬B");
    EXPECT_EQ(render_expr(parse_expr("A -> (B -> C)")), "A → B → C");
    EXPECT_EQ(render_expr(parse_expr("(A -> B) -> C")), "(A → B) → C");
    EXPECT_EQ(render_expr(parse_expr("A & B -> C")), "A ∧ B → C");
    EXPECT_EQ(render_expr(parse_expr("not (A and B)")), "¬(A ∧ B)");
    EXPECT_EQ(render_expr(parse_expr("~~A")), "¬¬A");
    EXPECT_EQ(render_expr(parse_expr("A & (B & C)")), "A ∧ (B ∧ C)");
    EXPECT_EQ(render_expr(parse_expr("(A & B) & C")), "A ∧ B ∧ C");
}

TEST(Render, RoundTripsRandomExpressions) {
    std::mt19937 rng(7);
    for (int i = 0; i < 2000; ++i) {
        Expr e = testutil::random_expr(rng, 6);
        Expr back = parse_expr(render_expr(e));
        EXPECT_EQ(back, e) << render_expr(e);
        EXPECT_EQ(render_expr(back), render_expr(e));
    }
}

TEST(Normalize, EliminatesDoubleNegation) {
    EXPECT_EQ(normalize(parse_expr("¬¬(¬¬A → B)")),
              parse_expr("A → B"));
    EXPECT_EQ(normalize(parse_expr("~~~A")), parse_expr("~A"));
    EXPECT_EQ(normalize(parse_expr("~~~~A & ~~B")), parse_expr("A & B"));
}

TEST(Normalize, IsIdempotent) {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        Expr e = testutil::random_expr(rng, 6);
        Expr once = normalize(e);
        EXPECT_EQ(normalize(once), once) << render_expr(e);
    }
}

TEST(Normalize, NeverIntroducesNegations) {
    // normalized output contains no ¬¬ anywhere
    std::mt19937 rng(13);
    for (int i = 0; i < 1000; ++i) {
        std::string text = render_expr(normalize(testutil::random_expr(rng, 6)));
        EXPECT_EQ(text.find("¬¬"), std::string::npos) << text;
    }
}

TEST(Symbols, Validation) {
    EXPECT_TRUE(is_valid_symbol("A"));
    EXPECT_TRUE(is_valid_symbol("A1"));
    EXPECT_TRUE(is_valid_symbol("long_name"));
    EXPECT_TRUE(is_valid_symbol("_x"));
    EXPECT_FALSE(is_valid_symbol(""));
    EXPECT_FALSE(is_valid_symbol("a b"));
    EXPECT_FALSE(is_valid_symbol("1A"));
    EXPECT_FALSE(is_valid_symbol("not"));
    EXPECT_FALSE(is_valid_symbol("AND"));
    EXPECT_FALSE(is_valid_symbol("A→B"));
    EXPECT_THROW(PropSymbol(""), std::invalid_argument);
    EXPECT_THROW(Expr::atom("a b"), std::invalid_argument);
    EXPECT_EQ(PropSymbol("A").name(), "A");
}

TEST(ExprSet, DeduplicatesOnCanonicalForm) {
    ExprSet s;
    EXPECT_TRUE(s.insert(parse_expr("A -> B")));
    EXPECT_FALSE(s.insert(parse_expr("A → B")));
    EXPECT_EQ(s.size(), 1u);
    EXPECT_TRUE(s.contains(parse_expr("(A) -> (B)")));
}

TEST(ExprSet, OrdersByRenderedBytes) {
    // ¬ is a two-byte glyph (0xC2 0xAC), so it sorts after every ASCII name.
    ExprSet s{parse_expr("¬A → ¬C"), parse_expr("B → A"),
              parse_expr("C → B"), parse_expr("C → A")};
    std::vector<std::string> want = {"B → A", "C → A", "C → B",
                                     "¬A → ¬C"};
    EXPECT_EQ(s.rendered(), want);
}

TEST(ExprSet, EqualityIsOrderIndependent) {
    ExprSet a{parse_expr("A -> B"), parse_expr("B -> C")};
    ExprSet b{parse_expr("B -> C"), parse_expr("A -> B")};
    EXPECT_EQ(a, b);
    b.insert(parse_expr("C -> A"));
    EXPECT_NE(a, b);
}

}  // namespace
}  // namespace lot
