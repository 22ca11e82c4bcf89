#include "talg/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace talg {

Digraph::Digraph(std::uint32_t vertices, std::vector<Edge> edges) : n_(vertices), edges_(std::move(edges)) {
    for (auto [u, v] : edges_)
        if (u >= n_ || v >= n_) throw InvalidInput("digraph: edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    out_.resize(n_);
    in_.resize(n_);
    for (auto [u, v] : edges_) {
        out_[u].push_back(v);
        in_[v].push_back(u);
    }
}

Digraph Digraph::from_relation(const Relation& r) {
    if (r.arity() != 2 || r.sizes()[0] != r.sizes()[1]) throw InvalidInput("digraph: relation must be binary over one set");
    std::vector<Edge> e;
    for (const auto& t : r.tuples()) e.emplace_back(t[0], t[1]);
    return Digraph(r.sizes()[0], std::move(e));
}

Digraph Digraph::cycle(std::uint32_t k) {
    std::vector<Edge> e;
    for (Element i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
    return Digraph(k, std::move(e));
}

Digraph Digraph::complete(std::uint32_t k) {
    std::vector<Edge> e;
    for (Element i = 0; i < k; ++i)
        for (Element j = 0; j < k; ++j)
            if (i != j) e.emplace_back(i, j);
    return Digraph(k, std::move(e));
}

Digraph Digraph::undirected(std::uint32_t vertices, const std::vector<Edge>& edges) {
    std::vector<Edge> e;
    for (auto [u, v] : edges) {
        e.emplace_back(u, v);
        e.emplace_back(v, u);
    }
    return Digraph(vertices, std::move(e));
}

bool Digraph::has_edge(Element u, Element v) const { return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v}); }

bool Digraph::is_symmetric() const {
    return std::all_of(edges_.begin(), edges_.end(), [&](Edge e) { return has_edge(e.second, e.first); });
}

ElementSet Digraph::loops() const {
    ElementSet out;
    for (auto [u, v] : edges_)
        if (u == v) out.push_back(u);
    return out;
}

Relation Digraph::edge_relation() const {
    std::vector<Tuple> ts;
    for (auto [u, v] : edges_) ts.push_back({u, v});
    return Relation::uniform(n_, 2, std::move(ts));
}

RelationalStructure Digraph::structure() const { return RelationalStructure(n_, {{"E", edge_relation()}}); }

Digraph Digraph::induced(const ElementSet& keep) const { return from_relation(structure().induced(keep).relations()[0].relation); }

long OrientedPath::algebraic_length() const {
    long l = 0;
    for (auto d : steps) l += d == Direction::Forward ? 1 : -1;
    return l;
}

OrientedPath OrientedPath::forward(std::size_t k) { return {std::vector<Direction>(k, Direction::Forward)}; }

OrientedPath OrientedPath::fence(std::size_t k, std::size_t n) {
    OrientedPath p;
    for (std::size_t r = 0; r < n; ++r) {
        p.steps.insert(p.steps.end(), k, Direction::Forward);
        p.steps.insert(p.steps.end(), k, Direction::Backward);
    }
    return p;
}

// ---------------------------------------------------------------- structure

ElementSet smooth_part(const Digraph& g, const ElementSet& within) {
    std::vector<bool> in(g.vertices(), false);
    for (Element v : within) {
        if (v >= g.vertices()) throw InvalidInput("smooth_part: vertex out of range");
        in[v] = true;
    }
    auto has = [&](const std::vector<Element>& nb) {
        return std::any_of(nb.begin(), nb.end(), [&](Element u) { return in[u]; });
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (Element v = 0; v < g.vertices(); ++v) {
            if (in[v] && (!has(g.out(v)) || !has(g.in(v)))) {
                in[v] = false;
                changed = true;
            }
        }
    }
    ElementSet out;
    for (Element v = 0; v < g.vertices(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

ElementSet smooth_part(const Digraph& g) { return smooth_part(g, full_set(g.vertices())); }

bool is_smooth(const Digraph& g) { return smooth_part(g).size() == g.vertices(); }

std::vector<ElementSet> weak_components(const Digraph& g) {
    std::vector<int> comp(g.vertices(), -1);
    std::vector<ElementSet> out;
    for (Element s = 0; s < g.vertices(); ++s) {
        if (comp[s] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<Element> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            Element v = stack.back();
            stack.pop_back();
            out.back().push_back(v);
            for (const auto* nb : {&g.out(v), &g.in(v)})
                for (Element u : *nb)
                    if (comp[u] < 0) {
                        comp[u] = id;
                        stack.push_back(u);
                    }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

std::vector<ElementSet> strong_components(const Digraph& g) {
    const std::uint32_t n = g.vertices();
    // Kosaraju: finishing order on g, then sweep the reverse graph
    std::vector<bool> seen(n, false);
    std::vector<Element> order;
    for (Element s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<Element, std::size_t>> stack{{s, 0}};
        seen[s] = true;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < g.out(v).size()) {
                Element u = g.out(v)[i++];
                if (!seen[u]) {
                    seen[u] = true;
                    stack.emplace_back(u, 0);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    std::vector<ElementSet> out;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<Element> stack{*it};
        comp[*it] = id;
        while (!stack.empty()) {
            Element v = stack.back();
            stack.pop_back();
            out.back().push_back(v);
            for (Element u : g.in(v))
                if (comp[u] < 0) {
                    comp[u] = id;
                    stack.push_back(u);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Potentials along a BFS tree of the component: pot(v) is the algebraic
// length of the tree path from the root to v.
std::vector<long> potentials(const Digraph& g, const ElementSet& component) {
    std::vector<long> pot(g.vertices(), 0);
    std::vector<bool> seen(g.vertices(), false);
    std::queue<Element> q;
    q.push(component.front());
    seen[component.front()] = true;
    while (!q.empty()) {
        Element v = q.front();
        q.pop();
        for (Element u : g.out(v))
            if (!seen[u]) {
                seen[u] = true;
                pot[u] = pot[v] + 1;
                q.push(u);
            }
        for (Element u : g.in(v))
            if (!seen[u]) {
                seen[u] = true;
                pot[u] = pot[v] - 1;
                q.push(u);
            }
    }
    return pot;
}

std::uint64_t discrepancy_gcd(const Digraph& g, const ElementSet& component, const std::vector<long>& pot) {
    std::uint64_t d = 0;
    for (auto [u, v] : g.edges())
        if (set_contains(component, u)) d = std::gcd(d, static_cast<std::uint64_t>(std::labs(pot[u] + 1 - pot[v])));
    return d;
}

} // namespace

std::optional<std::uint64_t> algebraic_length(const Digraph& g, const ElementSet& component) {
    auto comps = weak_components(g);
    if (std::find(comps.begin(), comps.end(), component) == comps.end())
        throw InvalidInput("algebraic_length: " + to_string(component) + " is not a weak component");
    const std::uint64_t d = discrepancy_gcd(g, component, potentials(g, component));
    if (d == 0) return std::nullopt;
    return d;
}

ElementSet path_image(const Digraph& g, const ElementSet& start, const OrientedPath& p) {
    ElementSet cur = start;
    for (auto d : p.steps) {
        std::vector<Element> next;
        for (Element v : cur) {
            const auto& nb = d == Direction::Forward ? g.out(v) : g.in(v);
            next.insert(next.end(), nb.begin(), nb.end());
        }
        cur = make_set(std::move(next));
    }
    return cur;
}

// ---------------------------------------------------------------- loops

LoopReport find_loop_smooth_taylor(const Digraph& g, const FiniteAlgebra& alg, const AbsorptionBudget& budget) {
    if (g.vertices() != alg.size()) throw InvalidInput("loop check: digraph and algebra have different universes");
    if (!is_smooth(g)) throw InvalidInput("loop check: digraph is not smooth");
    std::vector<ElementSet> length_one;
    for (const auto& c : weak_components(g))
        if (algebraic_length(g, c) == std::optional<std::uint64_t>(1)) length_one.push_back(c);
    if (length_one.empty()) throw InvalidInput("loop check: no weak component has algebraic length 1");
    if (!is_subuniverse_of_power(alg, g.edge_relation()))
        throw InvalidInput("loop check: edge set is not a subuniverse of the algebra's square");
    if (!find_taylor_term(alg, budget.clone)) throw InvalidInput("loop check: no Taylor term within budget");

    ElementSet loops = g.loops();
    if (loops.empty()) throw TheoremViolation("loop check: smooth Taylor digraph of algebraic length 1 has no loop");
    LoopReport rep{loops.front()};

    auto report = absorption_report(alg, budget);
    std::vector<ElementSet> absorbing{full_set(alg.size())};
    for (const auto& w : report.proper_absorbing) absorbing.push_back(w.subuniverse);
    for (const auto& i : absorbing)
        for (const auto& c : length_one)
            if (is_subset(i, c)) rep.absorbing_side_condition = true;
    if (!rep.absorbing_side_condition) return rep;
    for (const auto& j : report.minimal_absorbing) {
        for (Element v : loops) {
            if (set_contains(j, v)) {
                rep.minimal_absorbing = j;
                rep.absorbing_loop = v;
                return rep;
            }
        }
    }
    if (report.complete)
        throw TheoremViolation("loop check: no minimal absorbing subuniverse contains a loop");
    return rep;
}

// ---------------------------------------------------------------- circles

bool is_circle(const Digraph& g, const ElementSet& component) {
    if (component.empty()) return false;
    std::size_t edges = 0;
    for (Element v : component) {
        if (g.out(v).size() != 1 || g.in(v).size() != 1) return false;
        edges += g.out(v).size();
    }
    if (edges != component.size()) return false;
    Element v = component.front();
    for (std::size_t i = 0; i < component.size(); ++i) {
        v = g.out(v)[0];
        if (!set_contains(component, v)) return false;
        if (v == component.front() && i + 1 != component.size()) return false;
    }
    return v == component.front();
}

bool is_disjoint_union_of_circles(const Digraph& g) {
    auto comps = weak_components(g);
    return std::all_of(comps.begin(), comps.end(), [&](const ElementSet& c) { return is_circle(g, c); });
}

std::string to_string(GraphVerdict v) { return v == GraphVerdict::PolynomialTime ? "PolynomialTime" : "NPComplete"; }

SmoothClassification classify_smooth_digraph(const Digraph& g, const SearchBudget& budget) {
    if (!is_smooth(g)) throw InvalidInput("smooth classification: digraph is not smooth");
    Core core = compute_core(g.structure(), budget);
    Digraph h = Digraph::from_relation(core.structure.relations()[0].relation);
    return {is_disjoint_union_of_circles(h) ? GraphVerdict::PolynomialTime : GraphVerdict::NPComplete, core.vertices};
}

GraphVerdict classify_undirected(const Digraph& g) {
    if (!g.is_symmetric()) throw InvalidInput("undirected classification: edge set is not symmetric");
    if (!g.loops().empty()) return GraphVerdict::PolynomialTime;
    std::vector<int> color(g.vertices(), -1);
    for (Element s = 0; s < g.vertices(); ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<Element> q;
        q.push(s);
        while (!q.empty()) {
            Element v = q.front();
            q.pop();
            for (Element u : g.out(v)) {
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    q.push(u);
                } else if (color[u] == color[v]) {
                    return GraphVerdict::NPComplete;
                }
            }
        }
    }
    return GraphVerdict::PolynomialTime;
}

std::optional<std::vector<Element>> solve_circle_csp(const Digraph& instance, const Digraph& circles) {
    if (!is_disjoint_union_of_circles(circles)) throw InvalidInput("circle CSP: template is not a disjoint union of circles");
    std::vector<std::vector<Element>> cyc;
    for (const auto& c : weak_components(circles)) {
        std::vector<Element> seq{c.front()};
        while (seq.size() < c.size()) seq.push_back(circles.out(seq.back())[0]);
        cyc.push_back(std::move(seq));
    }
    std::vector<Element> map(instance.vertices(), 0);
    for (const auto& comp : weak_components(instance)) {
        auto pot = potentials(instance, comp);
        const std::uint64_t d = discrepancy_gcd(instance, comp, pot);
        const std::vector<Element>* target = nullptr;
        for (const auto& c : cyc)
            if (d % c.size() == 0) {
                target = &c;
                break;
            }
        if (!target) return std::nullopt;
        const long len = static_cast<long>(target->size());
        for (Element v : comp) map[v] = (*target)[static_cast<std::size_t>(((pot[v] % len) + len) % len)];
    }
    if (!is_homomorphism(instance.structure(), circles.structure(), map))
        throw TheoremViolation("circle CSP: potential map is not a homomorphism");
    return map;
}

PCycle p_cycle_relation(const Digraph& g, std::size_t p) {
    if (p < 2) throw InvalidInput("p-cycle relation: p must be at least 2");
    PCycle out{Relation::uniform(g.vertices(), p, {}), cycle_formula("E", p)};
    out.relation = eval_pp_formula(g.structure(), out.formula);
    if (!is_cyclic_relation(out.relation)) throw TheoremViolation("p-cycle relation is not cyclic");
    return out;
}

} // namespace talg
