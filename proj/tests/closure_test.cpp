#include "lot/laws.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "lot/entail.hpp"
#include "test_util.hpp"

namespace lot {
namespace {

Expr P(const char* text) { return parse_expr(text); }

TEST(Laws, ContrapositiveBasics) {
    EXPECT_EQ(*contrapositive(P("A -> B")), P("~B -> ~A"));
    // double negations introduced by the flip are collapsed
    EXPECT_EQ(*contrapositive(P("~A -> ~B")), P("B -> A"));
    EXPECT_EQ(*contrapositive(P("~A -> B")), P("~B -> A"));
    // the input is normalized first
    EXPECT_EQ(*contrapositive(P("~~A -> B")), P("~B -> ~A"));
    EXPECT_EQ(*contrapositive(P("~~(A -> B)")), P("~B -> ~A"));
    // not an implication
    EXPECT_FALSE(contrapositive(P("A")).has_value());
    EXPECT_FALSE(contrapositive(P("A & B")).has_value());
    EXPECT_FALSE(contrapositive(P("~A")).has_value());
}

TEST(Laws, ContrapositiveIsAnInvolution) {
    std::mt19937 rng(17);
    for (int i = 0; i < 500; ++i) {
        Expr e = Expr::implication(testutil::random_expr(rng, 4), testutil::random_expr(rng, 4));
        auto once = contrapositive(e);
        ASSERT_TRUE(once.has_value());
        auto twice = contrapositive(*once);
        ASSERT_TRUE(twice.has_value());
        EXPECT_EQ(*twice, normalize(e)) << render_expr(e);
    }
}

TEST(Laws, ContrapositivePreservesMeaning) {
    std::mt19937 rng(19);
    for (int i = 0; i < 500; ++i) {
        Expr e = Expr::implication(testutil::random_expr(rng, 3), testutil::random_expr(rng, 3));
        auto c = contrapositive(e);
        ASSERT_TRUE(c.has_value());
        ExprSet just_e{e};
        ExprSet just_c{*c};
        EXPECT_TRUE(entails(just_e, *c)) << render_expr(e);
        EXPECT_TRUE(entails(just_c, e)) << render_expr(e);
    }
}

TEST(Laws, TransitiveStepBasics) {
    EXPECT_EQ(*transitive_step(P("A -> B"), P("B -> C")), P("A -> C"));
    EXPECT_EQ(*transitive_step(P("~A -> ~B"), P("~B -> ~C")), P("~A -> ~C"));
    // middle terms must match syntactically after normalization
    EXPECT_EQ(*transitive_step(P("A -> ~~B"), P("B -> C")), P("A -> C"));
    EXPECT_FALSE(transitive_step(P("A -> B"), P("C -> D")).has_value());
    EXPECT_FALSE(transitive_step(P("A"), P("A -> B")).has_value());
    EXPECT_FALSE(transitive_step(P("A -> B"), P("B")).has_value());
    // chains through a compound middle term
    EXPECT_EQ(*transitive_step(P("A -> B & C"), P("B & C -> D")), P("A -> D"));
}

TEST(Laws, TransitiveStepIsSound) {
    std::mt19937 rng(23);
    int hits = 0;
    for (int i = 0; i < 3000 && hits < 500; ++i) {
        Expr middle = testutil::random_literal(rng, 4);
        Expr e1 = Expr::implication(testutil::random_literal(rng, 4), middle);
        Expr e2 = Expr::implication(middle, testutil::random_literal(rng, 4));
        auto r = transitive_step(e1, e2);
        ASSERT_TRUE(r.has_value());
        ++hits;
        ExprSet both{e1, e2};
        EXPECT_TRUE(entails(both, *r)) << render_expr(e1) << " ; " << render_expr(e2);
    }
    EXPECT_GE(hits, 500);
}

TEST(Closure, WorkedExample) {
    // closure({¬A→¬B, ¬B→¬C}) under all three laws
    ExprSet premises{P("~A -> ~B"), P("~B -> ~C")};
    ExprSet closed = closure(premises);

    ExprSet want{P("~A -> ~B"), P("~B -> ~C"), P("~A -> ~C"),
                 P("B -> A"),   P("C -> B"),   P("C -> A")};
    EXPECT_EQ(closed, want);

    ExprSet novel = novel_expressions(closed, premises);
    ExprSet want_novel{P("~A -> ~C"), P("B -> A"), P("C -> B"), P("C -> A")};
    EXPECT_EQ(novel, want_novel);
}

TEST(Closure, TransitivityOnly) {
    ExprSet premises{P("~A -> ~B"), P("~B -> ~C")};
    ExprSet closed = closure(premises, LawSet{true, false, true});
    ExprSet novel = novel_expressions(closed, premises);
    EXPECT_EQ(novel, (ExprSet{P("~A -> ~C")}));
}

TEST(Closure, ContrapositionOnly) {
    ExprSet premises{P("A -> B")};
    ExprSet closed = closure(premises, LawSet{true, true, false});
    EXPECT_EQ(closed, (ExprSet{P("A -> B"), P("~B -> ~A")}));

    // with double negation disabled the flipped form keeps its ¬¬
    ExprSet raw = closure(ExprSet{P("~A -> B")}, LawSet{false, true, false});
    EXPECT_EQ(raw, (ExprSet{P("~A -> B"), P("~B -> ~~A")}));
    // and with it enabled the ¬¬ collapses
    ExprSet collapsed = closure(ExprSet{P("~A -> B")}, LawSet{true, true, false});
    EXPECT_EQ(collapsed, (ExprSet{P("~A -> B"), P("~B -> A")}));
}

TEST(Closure, DoubleNegationNormalizesPremisesOnEntry) {
    ExprSet closed = closure(ExprSet{P("~~A -> B")}, LawSet{true, false, true});
    EXPECT_EQ(closed, (ExprSet{P("A -> B")}));
    // disabled: premises stay verbatim
    ExprSet kept = closure(ExprSet{P("~~A -> B")}, LawSet{false, false, true});
    EXPECT_EQ(kept, (ExprSet{P("~~A -> B")}));
}

TEST(Closure, RequiresAtLeastOneLaw) {
    EXPECT_THROW(closure(ExprSet{P("A -> B")}, LawSet::none()), std::invalid_argument);
}

TEST(Closure, AlwaysContainsPremisesAndReachesFixpoint) {
    std::mt19937 rng(29);
    for (int i = 0; i < 300; ++i) {
        ExprSet premises = testutil::random_implication_set(rng, 8, 6);
        ExprSet closed = closure(premises);
        for (const Expr& p : premises) EXPECT_TRUE(closed.contains(normalize(p)));
        // applying closure again adds nothing
        EXPECT_EQ(closure(closed), closed);
    }
}

TEST(Closure, DeterministicAcrossPremiseOrder) {
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        std::vector<Expr> exprs = testutil::random_implication_set(rng, 10, 6).to_vector();
        ExprSet forward;
        for (const Expr& e : exprs) forward.insert(e);
        ExprSet backward;
        for (auto it = exprs.rbegin(); it != exprs.rend(); ++it) backward.insert(*it);
        std::shuffle(exprs.begin(), exprs.end(), rng);
        ExprSet shuffled;
        for (const Expr& e : exprs) shuffled.insert(e);

        ExprSet a = closure(forward);
        EXPECT_EQ(a, closure(backward));
        EXPECT_EQ(a, closure(shuffled));
    }
}

TEST(Closure, SelfImplicationsDoNotDiverge) {
    ExprSet premises{P("A -> B"), P("B -> A")};
    ExprSet closed = closure(premises);
    // A→A and B→B land in the closure but are filtered from the novel set
    EXPECT_TRUE(closed.contains(P("A -> A")));
    ExprSet novel = novel_expressions(closed, premises);
    EXPECT_EQ(novel, (ExprSet{P("~A -> ~B"), P("~B -> ~A")}));
}

TEST(Closure, NovelOfClosureWithItselfIsEmpty) {
    ExprSet premises{P("~A -> ~B"), P("~B -> ~C")};
    ExprSet closed = closure(premises);
    EXPECT_TRUE(novel_expressions(closed, closed).empty());
}

TEST(Closure, NovelRequiresSubset) {
    ExprSet closed = closure(ExprSet{P("A -> B")});
    EXPECT_THROW(novel_expressions(closed, ExprSet{P("C -> D")}), std::invalid_argument);
}

TEST(Closure, MemberLimit) {
    // a long chain's transitive closure grows quadratically past a low cap
    ExprSet premises;
    for (char c = 'A'; c + 1 <= 'Z'; ++c) {
        std::string text;
        text += c;
        text += " -> ";
        text += static_cast<char>(c + 1);
        premises.insert(P(text.c_str()));
    }
    ClosureLimits limits;
    limits.max_exprs = 40;
    try {
        closure(premises, LawSet::all(), limits);
        FAIL() << "expected LimitExceeded";
    } catch (const LimitExceeded& err) {
        EXPECT_EQ(err.partial().size(), 40u);
        for (const Expr& p : premises) EXPECT_TRUE(err.partial().contains(p));
    }
}

TEST(Closure, RoundLimit) {
    ExprSet premises;
    for (char c = 'A'; c + 1 <= 'L'; ++c) {
        std::string text;
        text += c;
        text += " -> ";
        text += static_cast<char>(c + 1);
        premises.insert(P(text.c_str()));
    }
    ClosureLimits limits;
    limits.max_rounds = 1;
    EXPECT_THROW(closure(premises, LawSet{true, false, true}, limits), LimitExceeded);
}

TEST(Closure, EverythingDerivedIsEntailed) {
    // dual-route soundness: the rewrite engine never produces an expression
    // the truth-table oracle rejects
    std::mt19937 rng(37);
    for (int i = 0; i < 300; ++i) {
        ExprSet premises = testutil::random_implication_set(rng, 12, 8);
        ExprSet closed = closure(premises);
        for (const Expr& e : novel_expressions(closed, premises))
            EXPECT_TRUE(entails(premises, e))
                << "unsound derivation: " << render_expr(e);
    }
}

TEST(Entail, TruthTableBasics) {
    ExprSet premises{P("A -> B"), P("B -> C")};
    EXPECT_TRUE(entails(premises, P("A -> C")));
    EXPECT_TRUE(entails(premises, P("~C -> ~A")));
    EXPECT_FALSE(entails(premises, P("C -> A")));
    EXPECT_FALSE(entails(premises, P("A")));
    EXPECT_TRUE(entails(ExprSet{}, P("A -> A")));
    EXPECT_FALSE(entails(ExprSet{}, P("A")));
    // contradictory premises entail anything
    EXPECT_TRUE(entails(ExprSet{P("A"), P("~A")}, P("B")));
}

TEST(Entail, ConjunctionSemantics) {
    EXPECT_TRUE(entails(ExprSet{P("A & B")}, P("A")));
    EXPECT_TRUE(entails(ExprSet{P("A"), P("B")}, P("A & B")));
    EXPECT_FALSE(entails(ExprSet{P("A")}, P("A & B")));
    EXPECT_TRUE(entails(ExprSet{P("A -> B & C"), P("A")}, P("C")));
}

TEST(Entail, AtomBound) {
    ExprSet premises;
    std::string conj = "A0";
    for (int i = 1; i < 17; ++i) conj += " & A" + std::to_string(i);
    premises.insert(P(conj.c_str()));
    EXPECT_THROW(entails(premises, P("A0")), TooManyAtoms);
    try {
        entails(premises, P("A0"));
    } catch (const TooManyAtoms& err) {
        EXPECT_EQ(err.count(), 17u);
    }
    // exactly 16 atoms is still allowed
    ExprSet sixteen;
    std::string conj16 = "A0";
    for (int i = 1; i < 16; ++i) conj16 += " & A" + std::to_string(i);
    sixteen.insert(P(conj16.c_str()));
    EXPECT_TRUE(entails(sixteen, P("A7")));
}

}  // namespace
}  // namespace lot
