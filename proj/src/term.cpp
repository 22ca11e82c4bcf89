#include "talg/term.hpp"

#include "talg/types.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace talg {

struct Term::Node {
    Kind kind;
    std::size_t index = 0;
    std::string symbol;
    std::vector<Term> children;
    std::vector<Term> outer; // one element for Compose
    std::size_t arity = 0;
};

Term Term::var(std::size_t index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->index = index;
    n->arity = index + 1;
    return Term(std::move(n));
}

Term Term::apply(std::string symbol, std::vector<Term> children) {
    if (symbol.empty()) throw InvalidInput("term: empty operation symbol");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Apply;
    n->symbol = std::move(symbol);
    for (const auto& c : children) n->arity = std::max(n->arity, c.arity());
    n->children = std::move(children);
    return Term(std::move(n));
}

Term Term::compose(Term outer, std::vector<Term> inners) {
    if (outer.arity() > inners.size()) {
        throw InvalidInput("term: substitution supplies " + std::to_string(inners.size()) +
                           " terms for a term of arity " + std::to_string(outer.arity()));
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Compose;
    for (std::size_t i = 0; i < outer.arity(); ++i) n->arity = std::max(n->arity, inners[i].arity());
    n->children = std::move(inners);
    n->outer.push_back(std::move(outer));
    return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
std::size_t Term::var_index() const { return node_->index; }
const std::string& Term::symbol() const { return node_->symbol; }
std::span<const Term> Term::children() const { return node_->children; }
const Term& Term::outer() const { return node_->outer.front(); }
std::size_t Term::arity() const { return node_->arity; }

std::size_t Term::dag_size() const {
    std::unordered_set<const void*> seen;
    std::vector<const Term*> stack{this};
    while (!stack.empty()) {
        const Term* t = stack.back();
        stack.pop_back();
        if (!seen.insert(t->id()).second) continue;
        for (const auto& c : t->children()) stack.push_back(&c);
        if (t->kind() == Kind::Compose) stack.push_back(&t->outer());
    }
    return seen.size();
}

namespace {

std::size_t sat_add(std::size_t a, std::size_t b, std::size_t cap) {
    return (a >= cap || b >= cap - a) ? cap : a + b;
}

std::size_t sat_mul(std::size_t a, std::size_t b, std::size_t cap) {
    if (a == 0 || b == 0) return 0;
    return a > cap / b ? cap : std::min(cap, a * b);
}

// Expanded size of `t` when each variable x_i is replaced by a tree of size
// var_sizes[i].
std::size_t expanded_size(const Term& t, const std::vector<std::size_t>& var_sizes, std::size_t cap,
                          std::unordered_map<const void*, std::size_t>& memo) {
    if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
    std::size_t s = 0;
    switch (t.kind()) {
    case Term::Kind::Variable:
        s = var_sizes.at(t.var_index());
        break;
    case Term::Kind::Apply:
        s = 1;
        for (const auto& c : t.children()) s = sat_add(s, expanded_size(c, var_sizes, cap, memo), cap);
        break;
    case Term::Kind::Compose: {
        std::vector<std::size_t> inner(t.outer().arity());
        for (std::size_t i = 0; i < inner.size(); ++i)
            inner[i] = expanded_size(t.children()[i], var_sizes, cap, memo);
        std::unordered_map<const void*, std::size_t> outer_memo;
        s = expanded_size(t.outer(), inner, cap, outer_memo);
        break;
    }
    }
    memo.emplace(t.id(), s);
    return s;
}

} // namespace

std::size_t Term::tree_size(std::size_t cap) const {
    std::vector<std::size_t> ones(arity(), 1);
    std::unordered_map<const void*, std::size_t> memo;
    return expanded_size(*this, ones, cap, memo);
}

bool operator==(const Term& a, const Term& b) {
    if (a.id() == b.id()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Term::Kind::Variable:
        return a.var_index() == b.var_index();
    case Term::Kind::Apply:
        if (a.symbol() != b.symbol()) return false;
        break;
    case Term::Kind::Compose:
        if (!(a.outer() == b.outer())) return false;
        break;
    }
    auto ca = a.children();
    auto cb = b.children();
    return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

std::vector<Term> variable_block(std::size_t offset, std::size_t count) {
    std::vector<Term> v;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(Term::var(offset + i));
    return v;
}

Term star_compose(const Term& t1, std::size_t k, const Term& t2, std::size_t l) {
    if (k < t1.arity() || l < t2.arity() || k == 0 || l == 0)
        throw InvalidInput("star_compose: declared arity below the term's arity");
    auto is_unary_projection = [](const Term& t, std::size_t a) {
        return a == 1 && t.kind() == Term::Kind::Variable;
    };
    if (is_unary_projection(t1, k)) return t2;
    if (is_unary_projection(t2, l)) return t1;
    std::vector<Term> blocks;
    blocks.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (t2.kind() == Term::Kind::Variable) {
            blocks.push_back(Term::var(i * l + t2.var_index()));
        } else {
            blocks.push_back(Term::compose(t2, variable_block(i * l, l)));
        }
    }
    return Term::compose(t1, std::move(blocks));
}

Term star_compose(const Term& t1, const Term& t2) {
    return star_compose(t1, t1.arity(), t2, t2.arity());
}

Term star_product(std::span<const Term> terms, std::span<const std::size_t> arities) {
    if (terms.size() != arities.size()) throw InvalidInput("star_product: arity list mismatch");
    if (terms.empty()) return Term::var(0);
    Term acc = terms.back();
    std::size_t acc_arity = arities.back();
    for (std::size_t i = terms.size() - 1; i-- > 0;) {
        acc = star_compose(terms[i], arities[i], acc, acc_arity);
        acc_arity *= arities[i];
    }
    return acc;
}

namespace {

Term expand_rec(const Term& t, const std::vector<Term>& subst, bool identity,
                std::unordered_map<const void*, Term>& memo) {
    if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
    Term result = t;
    switch (t.kind()) {
    case Term::Kind::Variable:
        if (!identity) result = subst.at(t.var_index());
        break;
    case Term::Kind::Apply: {
        std::vector<Term> ch;
        ch.reserve(t.children().size());
        bool same = true;
        for (const auto& c : t.children()) {
            ch.push_back(expand_rec(c, subst, identity, memo));
            same = same && ch.back().id() == c.id();
        }
        if (!same) result = Term::apply(t.symbol(), std::move(ch));
        break;
    }
    case Term::Kind::Compose: {
        std::vector<Term> inner;
        inner.reserve(t.outer().arity());
        for (std::size_t i = 0; i < t.outer().arity(); ++i)
            inner.push_back(expand_rec(t.children()[i], subst, identity, memo));
        std::unordered_map<const void*, Term> outer_memo;
        result = expand_rec(t.outer(), inner, false, outer_memo);
        break;
    }
    }
    memo.emplace(t.id(), result);
    return result;
}

void render(const Term& t, std::string& out) {
    if (t.kind() == Term::Kind::Variable) {
        out += "x" + std::to_string(t.var_index());
        return;
    }
    out += t.symbol();
    out += "(";
    bool first = true;
    for (const auto& c : t.children()) {
        if (!first) out += ",";
        first = false;
        render(c, out);
    }
    out += ")";
}

} // namespace

Term expand(const Term& t, std::size_t max_nodes) {
    if (t.tree_size(max_nodes + 1) > max_nodes)
        throw BudgetExceeded("expanded term exceeds " + std::to_string(max_nodes) + " nodes");
    std::unordered_map<const void*, Term> memo;
    return expand_rec(t, {}, true, memo);
}

std::string to_string(const Term& t, std::size_t max_nodes) {
    std::string out;
    render(expand(t, max_nodes), out);
    return out;
}

} // namespace talg
