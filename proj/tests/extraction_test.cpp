#include "lot/extraction.hpp"

#include <gtest/gtest.h>

#include "lot/prompts.hpp"

namespace lot {
namespace {

TEST(ExtractionPrompt, FamilyVariants) {
    std::string multi = build_extraction_prompt(DatasetFamily::MultiChoice, "ctx");
    std::string binary = build_extraction_prompt(DatasetFamily::BinaryEntail, "ctx");

    EXPECT_EQ(multi.rfind("Please use uppercase English letters such as A, B, C", 0), 0u);
    EXPECT_EQ(binary.rfind("Please use uppercase English letters such as A, B, C", 0), 0u);
    // the two templates differ in documented phrasing deltas
    EXPECT_NE(multi, binary);
    EXPECT_NE(multi.find("between propositions seriously."), std::string::npos);
    EXPECT_EQ(binary.find("seriously"), std::string::npos);
    EXPECT_NE(binary.find("can be expressed as ¬A."), std::string::npos);
    EXPECT_NE(multi.find("can be expressed as A."), std::string::npos);
    // context is carried at the end
    EXPECT_NE(multi.find("Context:\nctx"), std::string::npos);

    EXPECT_THROW(build_extraction_prompt(DatasetFamily::MultiChoice, ""),
                 std::invalid_argument);
}

TEST(ExtractionPrompt, ByteStable) {
    std::string a = build_extraction_prompt(DatasetFamily::BinaryEntail, "same input");
    std::string b = build_extraction_prompt(DatasetFamily::BinaryEntail, "same input");
    EXPECT_EQ(a, b);
}

TEST(ParseExtraction, LineSeparatedOutput) {
    ExtractionResult r = parse_extraction_output(
        "A: a person reads a book\nB: person gains knowledge\nC: become smarter\n"
        "A→B\nB→C");
    EXPECT_EQ(r.symbols.size(), 3u);
    EXPECT_EQ(r.symbols.describe("A"), "a person reads a book");
    EXPECT_EQ(r.symbols.describe("C"), "become smarter");
    EXPECT_EQ(r.exprs, (ExprSet{parse_expr("A -> B"), parse_expr("B -> C")}));
    EXPECT_TRUE(r.warnings.empty());
}

TEST(ParseExtraction, CommaSeparatedOutput) {
    // the worked example's compact one-line format
    ExtractionResult r = parse_extraction_output(
        "A: a person reads a book, B: person gains knowledge, C: become smarter\n"
        "A→B, B→C");
    EXPECT_EQ(r.symbols.size(), 3u);
    EXPECT_EQ(r.symbols.describe("B"), "person gains knowledge");
    EXPECT_EQ(r.exprs, (ExprSet{parse_expr("A -> B"), parse_expr("B -> C")}));
}

TEST(ParseExtraction, EmptyInputThrows) {
    try {
        parse_extraction_output("");
        FAIL() << "expected EmptyExtraction";
    } catch (const EmptyExtraction& err) {
        EXPECT_TRUE(err.partial().symbols.empty());
        EXPECT_TRUE(err.partial().exprs.empty());
    }
}

TEST(ParseExtraction, UndeclaredSymbolsDropTheExpression) {
    try {
        parse_extraction_output("A: x\nQ→Z");
        FAIL() << "expected EmptyExtraction";
    } catch (const EmptyExtraction& err) {
        EXPECT_EQ(err.partial().symbols.size(), 1u);
        EXPECT_TRUE(err.partial().symbols.contains("A"));
        EXPECT_TRUE(err.partial().exprs.empty());
        // exactly one warning: the one dropped expression
        ASSERT_EQ(err.partial().warnings.size(), 1u);
        EXPECT_NE(err.partial().warnings[0].find("Q"), std::string::npos);
        EXPECT_NE(err.partial().warnings[0].find("Z"), std::string::npos);
    }
}

TEST(ParseExtraction, PartiallyDeclaredExpressionSurvives) {
    ExtractionResult r = parse_extraction_output("A: x\nB: y\nA→B\nA→Q");
    EXPECT_EQ(r.exprs, (ExprSet{parse_expr("A -> B")}));
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("undeclared"), std::string::npos);
}

TEST(ParseExtraction, UnparseableLinesWarn) {
    ExtractionResult r = parse_extraction_output(
        "Here are the propositions I found.\nA: x\nB: y\nA→B");
    EXPECT_EQ(r.exprs.size(), 1u);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("skipped unparseable line"), std::string::npos);
}

TEST(ParseExtraction, HeaderLinesWithPayloadAreRouted) {
    ExtractionResult r = parse_extraction_output(
        "Propositions: A: x, B: y\nExpressions: A→B");
    EXPECT_TRUE(r.symbols.contains("A"));
    EXPECT_TRUE(r.symbols.contains("B"));
    EXPECT_FALSE(r.symbols.contains("Propositions"));
    EXPECT_FALSE(r.symbols.contains("Expressions"));
    EXPECT_EQ(r.exprs, (ExprSet{parse_expr("A -> B")}));
}

TEST(ParseExtraction, EnumerationPrefixesAreStripped) {
    ExtractionResult r =
        parse_extraction_output("1. A: x\n2. B: y\n- A→B\n3) B→A");
    EXPECT_EQ(r.symbols.size(), 2u);
    EXPECT_EQ(r.exprs, (ExprSet{parse_expr("A -> B"), parse_expr("B -> A")}));
}

TEST(ParseExtraction, AsciiSpellingsAndNormalization) {
    ExtractionResult r = parse_extraction_output("A: x\nB: y\n~~A -> B\nnot B -> not A");
    // double negation collapses on entry; duplicates collapse in the set
    EXPECT_EQ(r.exprs, (ExprSet{parse_expr("A -> B"), parse_expr("~B -> ~A")}));
}

TEST(ParseExtraction, DuplicateSymbolKeepsFirstAndWarns) {
    ExtractionResult r = parse_extraction_output("A: first\nA: second\nB: y\nA→B");
    EXPECT_EQ(r.symbols.describe("A"), "first");
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("duplicate"), std::string::npos);
}

TEST(ParseExtraction, NegativeMarkerDescriptionsKeptWithWarning) {
    ExtractionResult r = parse_extraction_output("A: not bored\nB: y\nA→B");
    EXPECT_EQ(r.symbols.describe("A"), "not bored");
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("negative marker"), std::string::npos);
}

TEST(ParseExtraction, TotalOnGarbage) {
    // arbitrary junk must never crash — worst case EmptyExtraction
    const char* junk[] = {
        "))((", "→→→", ": :", "A:", "1:2:3", ",,,,",
        "A: \n", "\n\n\n", "A→", "(((((((((((((((((((((((((((((((((((((((A",
    };
    for (const char* text : junk)
        EXPECT_THROW(parse_extraction_output(text), EmptyExtraction) << text;
}

TEST(ParseExtraction, BareNamesAreNotExpressions) {
    // single identifiers on their own lines are noise, not atoms-as-expressions
    try {
        parse_extraction_output("A: x\nA");
        FAIL() << "expected EmptyExtraction";
    } catch (const EmptyExtraction& err) {
        EXPECT_EQ(err.partial().symbols.size(), 1u);
        EXPECT_EQ(err.partial().warnings.size(), 1u);
    }
}

TEST(SymbolTable, OrderAndLookup) {
    SymbolTable t;
    EXPECT_TRUE(t.insert("B", "second"));
    EXPECT_TRUE(t.insert("A", "first"));
    EXPECT_FALSE(t.insert("B", "again"));
    EXPECT_EQ(t.size(), 2u);
    // declaration order preserved
    auto it = t.begin();
    EXPECT_EQ(it->first, "B");
    ++it;
    EXPECT_EQ(it->first, "A");
    EXPECT_EQ(t.describe("A"), "first");
    EXPECT_THROW(t.describe("Z"), UnknownSymbol);
    EXPECT_THROW(t.insert("bad name", "x"), std::invalid_argument);
    EXPECT_THROW(t.insert("C", ""), std::invalid_argument);
}

TEST(SelectionPrompt, Shape) {
    std::string p = build_selection_prompt("ctx here");
    EXPECT_EQ(p.rfind("Please select all sentences", 0), 0u);
    EXPECT_NE(p.find("\"if...then...\""), std::string::npos);
    EXPECT_NE(p.find("Context:\nctx here"), std::string::npos);
    EXPECT_THROW(build_selection_prompt(""), std::invalid_argument);
}

}  // namespace
}  // namespace lot
