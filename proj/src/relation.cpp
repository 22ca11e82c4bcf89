#include "talg/relation.hpp"

#include <algorithm>
#include <deque>

namespace talg {

Relation::Relation(std::vector<std::uint32_t> sizes, std::vector<Tuple> tuples)
    : sizes_(std::move(sizes)), tuples_(std::move(tuples)) {
    if (sizes_.empty()) throw InvalidInput("relation arity must be positive");
    for (const auto& t : tuples_) {
        if (t.size() != sizes_.size())
            throw InvalidInput("relation tuple " + to_string(t) + " does not have arity " +
                               std::to_string(sizes_.size()));
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] >= sizes_[i])
                throw InvalidInput("relation tuple " + to_string(t) + " leaves coordinate " + std::to_string(i) +
                                   "'s universe");
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

Relation Relation::binary(std::uint32_t left, std::uint32_t right,
                          const std::vector<std::pair<Element, Element>>& pairs) {
    std::vector<Tuple> t;
    for (auto [a, b] : pairs) t.push_back({a, b});
    return Relation({left, right}, std::move(t));
}

Relation Relation::full(std::vector<std::uint32_t> sizes) {
    std::uint64_t total = 1;
    for (auto s : sizes) {
        total *= s;
        if (total > (1u << 24)) throw BudgetExceeded("full relation too large");
    }
    std::vector<Tuple> t;
    t.reserve(total);
    for (std::uint64_t c = 0; c < total; ++c) t.push_back(decode_tuple(c, sizes));
    return Relation(std::move(sizes), std::move(t));
}

Relation Relation::identity(std::uint32_t n) {
    std::vector<Tuple> t;
    for (Element a = 0; a < n; ++a) t.push_back({a, a});
    return Relation({n, n}, std::move(t));
}

bool Relation::contains(std::span<const Element> t) const {
    Tuple key(t.begin(), t.end());
    return std::binary_search(tuples_.begin(), tuples_.end(), key);
}

bool Relation::is_uniform() const {
    return std::all_of(sizes_.begin(), sizes_.end(), [&](auto s) { return s == sizes_.front(); });
}

bool is_subdirect(const Relation& r) {
    for (std::size_t i = 0; i < r.arity(); ++i) {
        std::vector<bool> seen(r.sizes()[i], false);
        for (const auto& t : r.tuples()) seen[t[i]] = true;
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
    }
    return true;
}

namespace {

void require_binary(const Relation& r, const char* what) {
    if (r.arity() != 2) throw InvalidInput(std::string(what) + ": binary relation required");
}

} // namespace

Relation compose(const Relation& s, const Relation& r) {
    require_binary(s, "compose");
    require_binary(r, "compose");
    if (r.sizes()[1] != s.sizes()[0]) throw InvalidInput("compose: middle universes differ");
    const std::uint32_t mid = r.sizes()[1];
    std::vector<std::vector<Element>> out_of(mid);
    for (const auto& t : s.tuples()) out_of[t[0]].push_back(t[1]);
    std::vector<Tuple> res;
    for (const auto& t : r.tuples())
        for (Element c : out_of[t[1]]) res.push_back({t[0], c});
    return Relation({r.sizes()[0], s.sizes()[1]}, std::move(res));
}

Relation iterate(const Relation& r, std::size_t m) {
    require_binary(r, "iterate");
    if (m == 0) throw InvalidInput("iterate: m must be at least 1");
    if (r.sizes()[0] != r.sizes()[1]) throw InvalidInput("iterate: relation must be on one set");
    Relation acc = r;
    for (std::size_t i = 1; i < m; ++i) acc = compose(r, acc);
    return acc;
}

ElementSet plus_neighborhood(const Relation& r, const ElementSet& x) {
    require_binary(r, "plus_neighborhood");
    ElementSet out;
    for (const auto& t : r.tuples())
        if (set_contains(x, t[0])) out.push_back(t[1]);
    return make_set(std::move(out));
}

ElementSet minus_neighborhood(const Relation& r, const ElementSet& y) {
    require_binary(r, "minus_neighborhood");
    ElementSet out;
    for (const auto& t : r.tuples())
        if (set_contains(y, t[1])) out.push_back(t[0]);
    return make_set(std::move(out));
}

ElementSet common_plus_neighborhood(const Relation& r, const ElementSet& x) {
    require_binary(r, "common_plus_neighborhood");
    ElementSet acc = full_set(r.sizes()[1]);
    for (Element a : x) acc = set_intersection(acc, plus_neighborhood(r, {a}));
    return acc;
}

std::pair<bool, LinkStructure> is_linked(const Relation& r) {
    require_binary(r, "is_linked");
    const std::uint32_t na = r.sizes()[0];
    const std::uint32_t nb = r.sizes()[1];
    LinkStructure ls;
    ls.left_size_ = na;
    ls.left_component.assign(na, -1);
    ls.right_component.assign(nb, -1);
    ls.parent_.assign(na + nb, -1);
    ls.depth_.assign(na + nb, 0);
    std::vector<std::vector<std::size_t>> adj(na + nb);
    for (const auto& t : r.tuples()) {
        adj[t[0]].push_back(na + t[1]);
        adj[na + t[1]].push_back(t[0]);
    }
    std::vector<int> comp(na + nb, -1);
    for (std::size_t s = 0; s < na + nb; ++s) {
        if (adj[s].empty() || comp[s] != -1) continue;
        const int id = ls.component_count++;
        std::deque<std::size_t> q{s};
        comp[s] = id;
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop_front();
            for (std::size_t w : adj[v]) {
                if (comp[w] != -1) continue;
                comp[w] = id;
                ls.parent_[w] = static_cast<int>(v);
                ls.depth_[w] = ls.depth_[v] + 1;
                q.push_back(w);
            }
        }
    }
    for (Element a = 0; a < na; ++a) {
        ls.left_component[a] = comp[a];
        if (comp[a] == -1) ls.isolated_left.push_back(a);
    }
    for (Element b = 0; b < nb; ++b) {
        ls.right_component[b] = comp[na + b];
        if (comp[na + b] == -1) ls.isolated_right.push_back(b);
    }
    return {ls.component_count == 1, std::move(ls)};
}

std::vector<LinkStructure::Vertex> LinkStructure::chain(Vertex u, Vertex v) const {
    auto index = [&](Vertex x) -> std::size_t { return x.right ? left_size_ + x.element : x.element; };
    auto vertex = [&](std::size_t i) {
        return i >= left_size_ ? Vertex{true, static_cast<Element>(i - left_size_)}
                               : Vertex{false, static_cast<Element>(i)};
    };
    auto component = [&](Vertex x) {
        return x.right ? right_component.at(x.element) : left_component.at(x.element);
    };
    if (component(u) == -1 || component(u) != component(v)) return {};
    std::size_t a = index(u), b = index(v);
    std::vector<std::size_t> front, back;
    while (a != b) {
        if (depth_[a] >= depth_[b]) {
            front.push_back(a);
            a = static_cast<std::size_t>(parent_[a]);
        } else {
            back.push_back(b);
            b = static_cast<std::size_t>(parent_[b]);
        }
    }
    front.push_back(a);
    front.insert(front.end(), back.rbegin(), back.rend());
    std::vector<Vertex> out;
    for (auto i : front) out.push_back(vertex(i));
    return out;
}

std::vector<Tuple> shift_orbit(std::span<const Element> t) {
    std::vector<Tuple> out;
    Tuple cur(t.begin(), t.end());
    for (std::size_t i = 0; i < std::max<std::size_t>(t.size(), 1); ++i) {
        out.push_back(cur);
        cur = cyclic_shift(cur);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_cyclic_relation(const Relation& r) {
    if (!r.is_uniform()) return false;
    return std::all_of(r.tuples().begin(), r.tuples().end(),
                       [&](const Tuple& t) { return r.contains(cyclic_shift(t)); });
}

std::optional<Element> contains_constant(const Relation& r) {
    if (!r.is_uniform()) return std::nullopt;
    for (Element a = 0; a < r.sizes().front(); ++a)
        if (r.contains(Tuple(r.arity(), a))) return a;
    return std::nullopt;
}

bool is_subuniverse_of_power(const FiniteAlgebra& alg, const Relation& r) {
    for (auto s : r.sizes())
        if (s != alg.size()) throw InvalidInput("relation coordinates must range over the algebra's universe");
    if (r.empty()) return true;
    const std::size_t w = r.arity();
    const auto& ts = r.tuples();
    Tuple res(w);
    for (const auto& op : alg.operations()) {
        Tuple idx(op.arity(), 0), args(op.arity());
        do {
            for (std::size_t c = 0; c < w; ++c) {
                for (std::size_t j = 0; j < idx.size(); ++j) args[j] = ts[idx[j]][c];
                res[c] = op(args);
            }
            if (!r.contains(res)) return false;
        } while (next_tuple(idx, static_cast<std::uint32_t>(ts.size())));
    }
    return true;
}

Relation invariant_closure(const FiniteAlgebra& alg, const Relation& r) {
    for (auto s : r.sizes())
        if (s != alg.size()) throw InvalidInput("relation coordinates must range over the algebra's universe");
    SubpowerClosure c(alg, r.arity(), r.tuples());
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.emplace_back(c.element(i).begin(), c.element(i).end());
    return Relation(r.sizes(), std::move(out));
}

} // namespace talg
