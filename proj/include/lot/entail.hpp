#pragma once

// Brute-force semantic entailment by truth-table enumeration.  Independent
// of the rewrite engine on purpose: the two implementations cross-check
// each other in the tests.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lot/errors.hpp"
#include "lot/expr.hpp"
#include "lot/expr_set.hpp"

namespace lot {

inline constexpr std::size_t kMaxEntailmentAtoms = 16;

namespace detail {

inline bool eval_expr(const Expr& e, const std::map<std::string, bool>& assignment) {
    switch (e.kind()) {
        case Expr::Kind::Atom:
            return assignment.at(e.symbol());
        case Expr::Kind::Not:
            return !eval_expr(e.operand(), assignment);
        case Expr::Kind::And:
            return eval_expr(e.lhs(), assignment) && eval_expr(e.rhs(), assignment);
        case Expr::Kind::Implies:
            return !eval_expr(e.lhs(), assignment) || eval_expr(e.rhs(), assignment);
    }
    return false;  // unreachable
}

}  // namespace detail

// Evaluate under a total assignment; every atom of `e` must be present.
inline bool evaluate(const Expr& e, const std::map<std::string, bool>& assignment) {
    return detail::eval_expr(e, assignment);
}

// True iff every assignment satisfying all premises also satisfies the
// candidate.  Vacuously true when no assignment satisfies the premises.
// Throws TooManyAtoms when the combined atom count exceeds the bound.
inline bool entails(const ExprSet& premises, const Expr& candidate,
                    std::size_t max_atoms = kMaxEntailmentAtoms) {
    std::set<std::string> atom_set = premises.atoms();
    candidate.collect_atoms(atom_set);
    if (atom_set.size() > max_atoms)
        throw TooManyAtoms(atom_set.size(), max_atoms);

    std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
    std::map<std::string, bool> assignment;
    for (const std::string& a : atoms) assignment[a] = false;

    const std::uint32_t rows = 1u << atoms.size();
    for (std::uint32_t mask = 0; mask < rows; ++mask) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            assignment[atoms[i]] = (mask >> i) & 1u;
        bool all_premises = true;
        for (const Expr& p : premises) {
            if (!detail::eval_expr(p, assignment)) {
                all_premises = false;
                break;
            }
        }
        if (all_premises && !detail::eval_expr(candidate, assignment)) return false;
    }
    return true;
}

}  // namespace lot
