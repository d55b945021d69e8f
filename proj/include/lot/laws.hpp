#pragma once

// Rewrite laws over implications and their bounded fixpoint closure.
//
//   double negation   ¬¬p ⇔ p        (applied eliminate-only, via normalize)
//   contraposition    p → q ⇔ ¬q → ¬p
//   transitivity      p → q, q → r ⇒ p → r
//
// closure() saturates a premise set under the enabled laws.  The result is
// a pure function of the premise *set* — insertion order never matters —
// and growth is bounded by a member cap and a round cap.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lot/errors.hpp"
#include "lot/expr.hpp"
#include "lot/expr_set.hpp"

namespace lot {

struct LawSet {
    bool double_negation = true;
    bool contraposition = true;
    bool transitivity = true;

    bool any() const { return double_negation || contraposition || transitivity; }

    static LawSet all() { return LawSet{}; }
    static LawSet none() { return LawSet{false, false, false}; }

    friend bool operator==(const LawSet&, const LawSet&) = default;
};

struct ClosureLimits {
    std::size_t max_exprs = 512;
    std::size_t max_rounds = 64;
};

// Closure hit a growth bound; the partial result is attached.
class LimitExceeded : public Error {
public:
    LimitExceeded(std::string what_limit, ExprSet partial)
        : Error("deduction closure exceeded the " + what_limit + " limit"),
          partial_(std::move(partial)) {}

    const ExprSet& partial() const { return partial_; }

private:
    ExprSet partial_;
};

// ---------------------------------------------------------------------------
// single-step laws

// Contrapositive of an implication: p → q yields ¬q → ¬p, double negations
// collapsed.  Empty when the (normalized) expression is not an implication.
inline std::optional<Expr> contrapositive(const Expr& e) {
    Expr n = normalize(e);
    if (!n.is(Expr::Kind::Implies)) return std::nullopt;
    return normalize(Expr::implication(Expr::negation(n.rhs()), Expr::negation(n.lhs())));
}

// Chain two implications: p → q and q → r yield p → r.  Empty when either
// input is not an implication or the middle terms differ (after
// normalization; matching beyond syntactic equality is out of scope).
inline std::optional<Expr> transitive_step(const Expr& first, const Expr& second) {
    Expr a = normalize(first);
    Expr b = normalize(second);
    if (!a.is(Expr::Kind::Implies) || !b.is(Expr::Kind::Implies)) return std::nullopt;
    if (a.rhs() != b.lhs()) return std::nullopt;
    return Expr::implication(a.lhs(), b.rhs());
}

// ---------------------------------------------------------------------------
// closure

namespace detail {

// One derivation pass: contrapositives of `sources`, then chains where at
// least one side comes from `sources`.  With double negation disabled the
// rewrites are purely syntactic; otherwise derived members are normalized.
inline void derive_round(const ExprSet& all, const ExprSet& sources, const LawSet& laws,
                         std::vector<Expr>& out) {
    auto emit = [&](Expr e) {
        if (laws.double_negation) e = normalize(e);
        out.push_back(std::move(e));
    };

    if (laws.contraposition) {
        for (const Expr& e : sources) {
            if (!e.is(Expr::Kind::Implies)) continue;
            emit(Expr::implication(Expr::negation(e.rhs()), Expr::negation(e.lhs())));
        }
    }

    if (laws.transitivity) {
        auto chain = [&](const Expr& a, const Expr& b) {
            if (!a.is(Expr::Kind::Implies) || !b.is(Expr::Kind::Implies)) return;
            if (a.rhs() != b.lhs()) return;
            emit(Expr::implication(a.lhs(), b.rhs()));
        };
        for (const Expr& a : sources)
            for (const Expr& b : all) {
                chain(a, b);
                chain(b, a);
            }
    }
}

}  // namespace detail

// Least fixpoint of the enabled laws over the premises.  Contains the
// premises (normalized when double negation is enabled, verbatim when not).
// Members are always deduplicated modulo double negation — otherwise
// iterated contraposition with the double-negation law disabled would stack
// ¬¬ forever — with the first-derived spelling kept, so the result is still
// a pure function of the premise set.  Throws std::invalid_argument when no
// law is enabled and LimitExceeded (carrying the partial set) when a growth
// bound is hit.
inline ExprSet closure(const ExprSet& premises, const LawSet& laws = LawSet::all(),
                       const ClosureLimits& limits = ClosureLimits{}) {
    if (!laws.any())
        throw std::invalid_argument("closure requires at least one enabled law");

    ExprSet closed;
    std::set<std::string> seen;  // canonical form modulo double negation
    auto try_insert = [&](const Expr& e, ExprSet* round_new) {
        if (!seen.insert(render_expr(normalize(e))).second) return;
        if (closed.size() >= limits.max_exprs)
            throw LimitExceeded("member", std::move(closed));
        closed.insert(e);
        if (round_new) round_new->insert(e);
    };

    for (const Expr& p : premises)
        try_insert(laws.double_negation ? normalize(p) : p, nullptr);

    ExprSet frontier = closed;  // members added in the previous round
    for (std::size_t round = 0; !frontier.empty(); ++round) {
        if (round >= limits.max_rounds)
            throw LimitExceeded("round", std::move(closed));

        std::vector<Expr> derived;
        detail::derive_round(closed, frontier, laws, derived);

        ExprSet next;
        for (const Expr& e : derived) try_insert(e, &next);
        frontier = std::move(next);
    }
    return closed;
}

// Members of `closed` that are not premises, with self-implications
// (p → p, inevitable transitivity byproducts) dropped.  Requires
// premises ⊆ closed.
inline ExprSet novel_expressions(const ExprSet& closed, const ExprSet& premises) {
    for (const Expr& p : premises)
        if (!closed.contains(p))
            throw std::invalid_argument(
                "novel_expressions: premises are not a subset of the closure");

    ExprSet novel;
    for (const Expr& e : closed) {
        if (premises.contains(e)) continue;
        if (e.is(Expr::Kind::Implies) && e.lhs() == e.rhs()) continue;
        novel.insert(e);
    }
    return novel;
}

}  // namespace lot
