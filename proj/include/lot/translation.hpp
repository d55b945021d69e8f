#pragma once

// Logic translation: verbalize deduced expressions and splice the sentences
// back into the original context.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lot/errors.hpp"
#include "lot/expr.hpp"
#include "lot/expr_set.hpp"
#include "lot/extraction.hpp"
#include "lot/prompts.hpp"

namespace lot {

// Translation prompt: fixed template, then the referenced propositions
// (declaration order), then the rendered expressions (canonical order).
inline std::string build_translation_prompt(const SymbolTable& table, const ExprSet& exprs) {
    if (exprs.empty())
        throw std::invalid_argument("translation prompt needs at least one expression");
    std::set<std::string> used = exprs.atoms();
    for (const std::string& symbol : used)
        if (!table.contains(symbol)) throw UnknownSymbol(symbol);

    std::string out = kTranslationPrompt;
    out += "\n\nPropositions:\n";
    for (const auto& [symbol, description] : table) {
        if (!used.count(symbol)) continue;
        out += symbol + ": " + description + "\n";
    }
    out += "\nExpressions:\n";
    for (const Expr& e : exprs) out += render_expr(e) + "\n";
    return out;
}

namespace detail {

inline std::string translate_rec(const SymbolTable& table, const Expr& e, bool top) {
    switch (e.kind()) {
        case Expr::Kind::Atom:
            return table.describe(e.symbol());
        case Expr::Kind::Not:
            return "it is not the case that " + translate_rec(table, e.operand(), false);
        case Expr::Kind::And:
            return translate_rec(table, e.lhs(), false) + " and " +
                   translate_rec(table, e.rhs(), false);
        case Expr::Kind::Implies:
            // capital "If" only at the outermost position
            return (top ? "If " : "if ") + translate_rec(table, e.lhs(), false) + ", then " +
                   translate_rec(table, e.rhs(), false);
    }
    return "";  // unreachable
}

}  // namespace detail

// Deterministic template fallback used when no LLM is available:
// "If {lhs}, then {rhs}" / "it is not the case that {desc}" / "{a} and {b}".
inline std::string template_translate(const SymbolTable& table, const Expr& e) {
    return detail::translate_rec(table, e, true);
}

// Split a paragraph into sentences (also accepts one sentence per line).
inline std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n') {
            std::string t = detail::trim(current);
            if (!t.empty()) out.push_back(t);
            current.clear();
            continue;
        }
        current += c;
        if ((c == '.' || c == '!' || c == '?') &&
            (i + 1 >= text.size() ||
             std::isspace(static_cast<unsigned char>(text[i + 1])))) {
            std::string t = detail::trim(current);
            if (!t.empty()) out.push_back(t);
            current.clear();
        }
    }
    std::string t = detail::trim(current);
    if (!t.empty()) out.push_back(t);
    return out;
}

// Append the sentences to the original context, continuing its "N." line
// numbering when present.  Prefix-preserving: the output starts with the
// byte-identical original.
inline std::string compose_augmented_context(const std::string& original,
                                             const std::vector<std::string>& sentences) {
    if (sentences.empty()) return original;

    // find the last non-empty line and read a leading "N." if there is one
    int next_number = 0;
    {
        std::size_t end = original.find_last_not_of(" \t\r\n");
        if (end != std::string::npos) {
            std::size_t line_start = original.rfind('\n', end);
            line_start = line_start == std::string::npos ? 0 : line_start + 1;
            std::string_view line(original.data() + line_start, end - line_start + 1);
            std::size_t d = 0;
            while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
            if (d > 0 && d < line.size() && line[d] == '.' && d + 1 < line.size() &&
                line[d + 1] == ' ')
                next_number = std::stoi(std::string(line.substr(0, d))) + 1;
        }
    }

    std::string out = original;
    if (!out.empty() && out.back() != '\n') out += '\n';
    bool first = true;
    for (const std::string& s : sentences) {
        if (!first) out += '\n';
        first = false;
        if (next_number > 0) {
            out += std::to_string(next_number) + ". ";
            ++next_number;
        }
        out += s;
    }
    return out;
}

}  // namespace lot
