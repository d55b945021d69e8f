#pragma once

// Deduplicating set of expressions ordered by their canonical rendering
// (lexicographic over UTF-8 bytes).  The pipeline inserts normalized
// expressions only, so two members never differ by a double negation alone;
// the container itself deduplicates on the exact rendered form.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lot/expr.hpp"

namespace lot {

class ExprSet {
public:
    ExprSet() = default;
    ExprSet(std::initializer_list<Expr> exprs) {
        for (const Expr& e : exprs) insert(e);
    }

    // Returns true when the expression was new.
    bool insert(const Expr& e) {
        return members_.emplace(render_expr(e), e).second;
    }

    bool contains(const Expr& e) const { return members_.count(render_expr(e)) > 0; }
    bool contains_rendered(const std::string& key) const { return members_.count(key) > 0; }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    // Iteration yields expressions in canonical order.
    class const_iterator {
    public:
        using base = std::map<std::string, Expr>::const_iterator;
        explicit const_iterator(base it) : it_(it) {}
        const Expr& operator*() const { return it_->second; }
        const Expr* operator->() const { return &it_->second; }
        const_iterator& operator++() { ++it_; return *this; }
        bool operator==(const const_iterator&) const = default;

    private:
        base it_;
    };

    const_iterator begin() const { return const_iterator(members_.begin()); }
    const_iterator end() const { return const_iterator(members_.end()); }

    std::vector<Expr> to_vector() const {
        std::vector<Expr> out;
        out.reserve(members_.size());
        for (const auto& [key, e] : members_) out.push_back(e);
        return out;
    }

    std::vector<std::string> rendered() const {
        std::vector<std::string> out;
        out.reserve(members_.size());
        for (const auto& [key, e] : members_) out.push_back(key);
        return out;
    }

    // All atoms referenced by any member.
    std::set<std::string> atoms() const {
        std::set<std::string> out;
        for (const auto& [key, e] : members_) e.collect_atoms(out);
        return out;
    }

    friend bool operator==(const ExprSet& a, const ExprSet& b) {
        if (a.members_.size() != b.members_.size()) return false;
        auto ia = a.members_.begin();
        auto ib = b.members_.begin();
        for (; ia != a.members_.end(); ++ia, ++ib)
            if (ia->first != ib->first) return false;
        return true;
    }
    friend bool operator!=(const ExprSet& a, const ExprSet& b) { return !(a == b); }

private:
    std::map<std::string, Expr> members_;
};

}  // namespace lot
