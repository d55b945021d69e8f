#pragma once

// Propositional expressions: atoms, negation, conjunction and implication.
//
// Grammar (loosest-binding first; '→' is right-associative, '∧' is
// left-associative, '¬' binds tightest):
//
//   implication := conjunction ( '→' implication )?
//   conjunction := unary ( '∧' unary )*
//   unary       := '¬' unary | atom | '(' implication ')'
//
// Accepted spellings: ¬ ~ not | → -> | ∧ & and.  The canonical renderer
// always emits the glyph forms with single spaces around binary connectives
// and the minimum parentheses the grammar requires, so parsing a rendered
// expression reproduces it exactly.

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lot/errors.hpp"

namespace lot {

inline constexpr int kDefaultMaxExprDepth = 32;

// ---------------------------------------------------------------------------
// proposition symbols

// A proposition name: identifier-shaped, no whitespace, no connective
// glyphs, and not one of the keyword spellings ("not"/"and" in any case).
inline bool is_valid_symbol(std::string_view name) {
    if (name.empty()) return false;
    auto is_word_start = [](unsigned char c) { return std::isalpha(c) || c == '_'; };
    auto is_word_char = [](unsigned char c) { return std::isalnum(c) || c == '_'; };
    if (!is_word_start(name.front())) return false;
    for (unsigned char c : name)
        if (!is_word_char(c)) return false;
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower != "not" && lower != "and";
}

// Validated proposition name.
class PropSymbol {
public:
    explicit PropSymbol(std::string name) : name_(std::move(name)) {
        if (!is_valid_symbol(name_))
            throw std::invalid_argument("invalid proposition symbol '" + name_ + "'");
    }

    const std::string& name() const { return name_; }
    friend bool operator==(const PropSymbol& a, const PropSymbol& b) = default;
    friend auto operator<=>(const PropSymbol& a, const PropSymbol& b) = default;

private:
    std::string name_;
};

// ---------------------------------------------------------------------------
// expression tree

class Expr {
public:
    enum class Kind { Atom, Not, And, Implies };

    static Expr atom(std::string name) {
        if (!is_valid_symbol(name))
            throw std::invalid_argument("invalid proposition symbol '" + name + "'");
        return Expr(std::make_shared<const Node>(Kind::Atom, std::move(name), std::vector<Expr>{}));
    }
    static Expr atom(const PropSymbol& symbol) { return atom(symbol.name()); }

    static Expr negation(Expr operand) {
        return Expr(std::make_shared<const Node>(Kind::Not, std::string{},
                                                 std::vector<Expr>{std::move(operand)}));
    }

    static Expr conjunction(Expr lhs, Expr rhs) {
        return Expr(std::make_shared<const Node>(
            Kind::And, std::string{}, std::vector<Expr>{std::move(lhs), std::move(rhs)}));
    }

    static Expr implication(Expr lhs, Expr rhs) {
        return Expr(std::make_shared<const Node>(
            Kind::Implies, std::string{}, std::vector<Expr>{std::move(lhs), std::move(rhs)}));
    }

    Kind kind() const { return node_->kind; }
    bool is(Kind k) const { return node_->kind == k; }

    // Atom only.
    const std::string& symbol() const { return node_->name; }
    // Not only.
    const Expr& operand() const { return node_->children[0]; }
    // And / Implies only.
    const Expr& lhs() const { return node_->children[0]; }
    const Expr& rhs() const { return node_->children[1]; }

    // Leaf depth: an atom has depth 1.
    int depth() const {
        int best = 0;
        for (const Expr& child : node_->children) best = std::max(best, child.depth());
        return best + 1;
    }

    void collect_atoms(std::set<std::string>& out) const {
        if (node_->kind == Kind::Atom) {
            out.insert(node_->name);
            return;
        }
        for (const Expr& child : node_->children) child.collect_atoms(out);
    }

    std::set<std::string> atoms() const {
        std::set<std::string> out;
        collect_atoms(out);
        return out;
    }

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.node_ == b.node_) return true;
        if (a.node_->kind != b.node_->kind) return false;
        if (a.node_->kind == Kind::Atom) return a.node_->name == b.node_->name;
        for (std::size_t i = 0; i < a.node_->children.size(); ++i)
            if (!(a.node_->children[i] == b.node_->children[i])) return false;
        return true;
    }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    struct Node {
        Node(Kind k, std::string n, std::vector<Expr> c)
            : kind(k), name(std::move(n)), children(std::move(c)) {}
        Kind kind;
        std::string name;          // Atom only
        std::vector<Expr> children;  // 1 for Not, 2 for And/Implies
    };

    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// rendering

namespace detail {

inline void render_to(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Atom:
            out += e.symbol();
            break;
        case Expr::Kind::Not: {
            out += "¬";  // ¬
            const Expr& inner = e.operand();
            bool parens = inner.is(Expr::Kind::And) || inner.is(Expr::Kind::Implies);
            if (parens) out += '(';
            render_to(inner, out);
            if (parens) out += ')';
            break;
        }
        case Expr::Kind::And: {
            // left-associative: parenthesize a right-hand ∧ and any →
            bool lparens = e.lhs().is(Expr::Kind::Implies);
            if (lparens) out += '(';
            render_to(e.lhs(), out);
            if (lparens) out += ')';
            out += " ∧ ";  // ∧
            bool rparens = e.rhs().is(Expr::Kind::And) || e.rhs().is(Expr::Kind::Implies);
            if (rparens) out += '(';
            render_to(e.rhs(), out);
            if (rparens) out += ')';
            break;
        }
        case Expr::Kind::Implies: {
            // right-associative: parenthesize a left-hand →
            bool lparens = e.lhs().is(Expr::Kind::Implies);
            if (lparens) out += '(';
            render_to(e.lhs(), out);
            if (lparens) out += ')';
            out += " → ";  // →
            render_to(e.rhs(), out);
            break;
        }
    }
}

}  // namespace detail

// Canonical text form: glyph connectives, single spaces around binary
// operators, minimal parentheses.  parse_expr(render_expr(e)) == e.
inline std::string render_expr(const Expr& e) {
    std::string out;
    detail::render_to(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

enum class TokKind { Atom, Not, And, Implies, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::string text;        // Atom name
    std::size_t offset = 0;  // byte offset into the input
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= text_.size()) return {TokKind::End, "", start};

        // multi-byte glyphs
        if (starts_with("¬")) return advance(TokKind::Not, 2, start);      // ¬
        if (starts_with("→")) return advance(TokKind::Implies, 3, start);  // →
        if (starts_with("∧")) return advance(TokKind::And, 3, start);      // ∧
        // ascii spellings
        if (starts_with("->")) return advance(TokKind::Implies, 2, start);
        char c = text_[pos_];
        if (c == '~') return advance(TokKind::Not, 1, start);
        if (c == '&') return advance(TokKind::And, 1, start);
        if (c == '(') return advance(TokKind::LParen, 1, start);
        if (c == ')') return advance(TokKind::RParen, 1, start);

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            std::string word(text_.substr(pos_, end - pos_));
            pos_ = end;
            std::string lower = word;
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            if (lower == "not") return {TokKind::Not, word, start};
            if (lower == "and") return {TokKind::And, word, start};
            return {TokKind::Atom, word, start};
        }

        throw SyntaxError("unexpected character", start,
                          {"atom", "'¬'", "'('"});
    }

private:
    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    }

    bool starts_with(std::string_view s) const {
        return text_.substr(pos_, s.size()) == s;
    }

    Token advance(TokKind kind, std::size_t len, std::size_t start) {
        pos_ += len;
        return {kind, "", start};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view text, int max_depth)
        : lexer_(text), max_depth_(max_depth) {
        lookahead_ = lexer_.next();
    }

    Expr parse() {
        Expr e = implication(0);
        if (lookahead_.kind != TokKind::End)
            throw SyntaxError("trailing input", lookahead_.offset, {"end of input"});
        return e;
    }

private:
    Expr implication(int depth) {
        guard(depth);
        Expr left = conjunction(depth + 1);
        if (lookahead_.kind == TokKind::Implies) {
            consume();
            Expr right = implication(depth + 1);  // right-associative
            return Expr::implication(std::move(left), std::move(right));
        }
        return left;
    }

    Expr conjunction(int depth) {
        guard(depth);
        Expr left = unary(depth + 1);
        while (lookahead_.kind == TokKind::And) {
            consume();
            Expr right = unary(depth + 1);
            left = Expr::conjunction(std::move(left), std::move(right));
        }
        return left;
    }

    Expr unary(int depth) {
        guard(depth);
        switch (lookahead_.kind) {
            case TokKind::Not: {
                consume();
                return Expr::negation(unary(depth + 1));
            }
            case TokKind::Atom: {
                std::string name = lookahead_.text;
                consume();
                return Expr::atom(std::move(name));
            }
            case TokKind::LParen: {
                std::size_t open = lookahead_.offset;
                consume();
                Expr inner = implication(depth + 1);
                if (lookahead_.kind != TokKind::RParen)
                    throw SyntaxError("unbalanced parenthesis opened", open, {"')'"});
                consume();
                return inner;
            }
            default:
                throw SyntaxError("unexpected token", lookahead_.offset,
                                  {"atom", "'¬'", "'('"});
        }
    }

    // The recursion counter rises faster than the tree depth (each binding
    // level adds a frame), so give it headroom and check the exact tree
    // depth after the parse.
    void guard(int depth) const {
        if (depth > 4 * max_depth_ + 16)
            throw SyntaxError("expression too deeply nested", lookahead_.offset);
    }

    void consume() { lookahead_ = lexer_.next(); }

    Lexer lexer_;
    Token lookahead_;
    int max_depth_;
};

}  // namespace detail

// Parse the single expression in `text`.  Throws SyntaxError on malformed
// input or when the resulting tree is deeper than `max_depth`.
inline Expr parse_expr(std::string_view text, int max_depth = kDefaultMaxExprDepth) {
    detail::Parser parser(text, max_depth);
    Expr e = parser.parse();
    if (e.depth() > max_depth)
        throw SyntaxError("expression deeper than limit " + std::to_string(max_depth), 0);
    return e;
}

// ---------------------------------------------------------------------------
// normalization

// Eliminate double negations everywhere: ¬¬p becomes p.  Never introduces
// a negation, so iterating it is pointless — one pass reaches the fixpoint.
inline Expr normalize(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Atom:
            return e;
        case Expr::Kind::Not: {
            Expr inner = normalize(e.operand());
            if (inner.is(Expr::Kind::Not)) return inner.operand();
            return Expr::negation(std::move(inner));
        }
        case Expr::Kind::And:
            return Expr::conjunction(normalize(e.lhs()), normalize(e.rhs()));
        case Expr::Kind::Implies:
            return Expr::implication(normalize(e.lhs()), normalize(e.rhs()));
    }
    return e;  // unreachable
}

}  // namespace lot
