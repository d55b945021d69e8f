#pragma once

// Logic extraction: parse untrusted LLM output into a proposition table
// plus a set of expressions.  Total — any text yields either a result or
// EmptyExtraction (carrying whatever survived), never a crash.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lot/errors.hpp"
#include "lot/expr.hpp"
#include "lot/expr_set.hpp"

namespace lot {

// Ordered proposition-symbol → description map (declaration order).
class SymbolTable {
public:
    // Returns false (keeping the first entry) on a duplicate symbol.
    bool insert(const std::string& symbol, const std::string& description) {
        if (!is_valid_symbol(symbol))
            throw std::invalid_argument("invalid proposition symbol '" + symbol + "'");
        if (description.empty())
            throw std::invalid_argument("empty description for symbol '" + symbol + "'");
        if (index_.count(symbol)) return false;
        index_[symbol] = entries_.size();
        entries_.emplace_back(symbol, description);
        return true;
    }

    bool contains(const std::string& symbol) const { return index_.count(symbol) > 0; }

    const std::string* find(const std::string& symbol) const {
        auto it = index_.find(symbol);
        if (it == index_.end()) return nullptr;
        return &entries_[it->second].second;
    }

    // Throws UnknownSymbol.
    const std::string& describe(const std::string& symbol) const {
        const std::string* desc = find(symbol);
        if (!desc) throw UnknownSymbol(symbol);
        return *desc;
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, std::size_t> index_;
};

struct ExtractionResult {
    SymbolTable symbols;
    ExprSet exprs;
    std::vector<std::string> warnings;
};

// Zero expressions survived parsing; carries the partial result so the
// pipeline can log it while falling back to the un-augmented prompt.
class EmptyExtraction : public Error {
public:
    explicit EmptyExtraction(ExtractionResult partial)
        : Error("extraction yielded no usable logical expressions"),
          partial_(std::move(partial)) {}

    const ExtractionResult& partial() const { return partial_; }

private:
    ExtractionResult partial_;
};

namespace detail {

inline std::string trim(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

// Strip "1. ", "2) ", "- ", "* " style enumeration prefixes.
inline std::string strip_enumeration(std::string line) {
    std::size_t i = 0;
    if (i < line.size() && (line[i] == '-' || line[i] == '*')) {
        ++i;
    } else {
        std::size_t d = i;
        while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
        if (d > i && d < line.size() && (line[d] == '.' || line[d] == ')'))
            i = d + 1;
        else
            return line;
    }
    while (i < line.size() && line[i] == ' ') ++i;
    return line.substr(i);
}

// "A: description" → (symbol, description); the colon may also be a
// full-width '：' as emitted for Chinese contexts.
inline bool split_symbol_entry(const std::string& text, std::string& symbol,
                               std::string& description) {
    std::size_t colon = text.find(':');
    std::size_t wide = text.find("：");
    if (wide != std::string::npos && (colon == std::string::npos || wide < colon)) {
        symbol = trim(text.substr(0, wide));
        description = trim(text.substr(wide + 3));
    } else if (colon != std::string::npos) {
        symbol = trim(text.substr(0, colon));
        description = trim(text.substr(colon + 1));
    } else {
        return false;
    }
    return is_valid_symbol(symbol);
}

// Split "A: x, B: y, C: z" at commas that start a new "Sym:" entry.
inline std::vector<std::string> split_symbol_segments(const std::string& line) {
    std::vector<std::string> segments;
    std::size_t start = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] != ',' && line[i] != ';') continue;
        std::size_t j = i + 1;
        while (j < line.size() && line[j] == ' ') ++j;
        std::size_t k = j;
        while (k < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[k])) || line[k] == '_'))
            ++k;
        if (k > j && k < line.size() && (line[k] == ':' || line.compare(k, 3, "：") == 0)) {
            std::string head = trim(line.substr(j, k - j));
            if (is_valid_symbol(head)) {
                segments.push_back(trim(line.substr(start, i - start)));
                start = j;
            }
        }
    }
    segments.push_back(trim(line.substr(start)));
    return segments;
}

inline std::optional<Expr> try_parse_expr(const std::string& text) {
    try {
        return parse_expr(text);
    } catch (const SyntaxError&) {
        return std::nullopt;
    }
}

inline bool starts_with_negative_marker(const std::string& description) {
    std::string lower = description;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower.rfind("not ", 0) == 0 || lower.rfind("no ", 0) == 0 ||
           lower.rfind("never ", 0) == 0 || lower == "not";
}

}  // namespace detail

// Parse extraction output: "A: description" lines (comma-separated entries
// allowed) fill the table, expression lines fill the set.  Unparseable
// lines and dropped expressions are reported in warnings.  Throws
// EmptyExtraction (with the partial result attached) when no expression
// survives.
inline ExtractionResult parse_extraction_output(const std::string& text) {
    ExtractionResult result;
    // candidate expressions, kept with their source spelling for warnings
    std::vector<std::pair<Expr, std::string>> candidates;

    auto add_candidate = [&](const Expr& e, const std::string& source) {
        candidates.emplace_back(normalize(e), detail::trim(source));
    };

    auto add_symbol = [&](const std::string& symbol, const std::string& description) {
        if (detail::starts_with_negative_marker(description))
            result.warnings.push_back("proposition " + symbol +
                                      " keeps a negative marker in its description: \"" +
                                      description + "\"");
        if (!result.symbols.insert(symbol, description))
            result.warnings.push_back("duplicate proposition symbol " + symbol +
                                      "; keeping the first description");
    };

    // expression list line: every comma segment must parse, at least one
    // with a top-level connective (a plain English clause fails this)
    auto try_expr_list = [&](const std::string& line) -> bool {
        std::vector<std::pair<Expr, std::string>> parsed;
        bool any_connective = false;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i < line.size() && line[i] != ',' && line[i] != ';') continue;
            std::string segment = detail::trim(line.substr(start, i - start));
            start = i + 1;
            if (segment.empty()) continue;
            auto e = detail::try_parse_expr(segment);
            if (!e) return false;
            if (!e->is(Expr::Kind::Atom)) any_connective = true;
            parsed.emplace_back(*e, segment);
        }
        if (parsed.empty() || !any_connective) return false;
        for (auto& [e, source] : parsed) add_candidate(e, source);
        return true;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = detail::trim(
            text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos));
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        if (line.empty()) continue;
        line = detail::strip_enumeration(line);
        if (line.empty()) continue;

        // whole line as expression(s)?
        if (auto e = detail::try_parse_expr(line)) {
            if (!e->is(Expr::Kind::Atom)) {
                add_candidate(*e, line);
                continue;
            }
            // a bare name alone on a line is noise, not an expression
        }
        if (try_expr_list(line)) continue;

        // proposition entries, possibly several per line
        bool handled = true;
        for (const std::string& segment : detail::split_symbol_segments(line)) {
            std::string symbol, description;
            if (!detail::split_symbol_entry(segment, symbol, description) ||
                description.empty()) {
                handled = false;
                continue;
            }
            // The extraction prompt asks for single-letter symbols, so a long
            // "symbol" with a structured payload is a header like
            // "Expressions: A→B" or "Propositions: A: x" — route the payload.
            if (symbol.size() > 2) {
                if (try_expr_list(description)) continue;
                std::string inner_symbol, inner_description;
                if (detail::split_symbol_entry(description, inner_symbol, inner_description) &&
                    !inner_description.empty() && inner_symbol.size() <= 2) {
                    add_symbol(inner_symbol, inner_description);
                    continue;
                }
            }
            add_symbol(symbol, description);
        }
        if (!handled)
            result.warnings.push_back("skipped unparseable line: \"" + line + "\"");
    }

    // drop expressions referencing undeclared symbols (one warning each)
    for (const auto& [e, source] : candidates) {
        bool ok = true;
        std::string missing;
        for (const std::string& atom : e.atoms()) {
            if (result.symbols.contains(atom)) continue;
            ok = false;
            if (!missing.empty()) missing += ", ";
            missing += atom;
        }
        if (ok) {
            result.exprs.insert(e);
        } else {
            result.warnings.push_back("dropped expression \"" + render_expr(e) +
                                      "\": undeclared symbols " + missing);
        }
    }

    if (result.exprs.empty()) throw EmptyExtraction(std::move(result));
    return result;
}

}  // namespace lot
