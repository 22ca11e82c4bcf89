#include "talg/csp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace talg {

// ---------------------------------------------------------------- structures

RelationalStructure::RelationalStructure(std::uint32_t size, std::vector<Named> relations)
    : size_(size), relations_(std::move(relations)) {
    if (size == 0) throw InvalidInput("relational structure: empty universe");
    std::set<std::string> names;
    for (const auto& r : relations_) {
        if (!names.insert(r.name).second) throw InvalidInput("relational structure: duplicate relation " + r.name);
        for (auto s : r.relation.sizes())
            if (s != size) throw InvalidInput("relational structure: relation " + r.name + " is over another universe");
    }
}

const Relation* RelationalStructure::find(const std::string& name) const {
    for (const auto& r : relations_)
        if (r.name == name) return &r.relation;
    return nullptr;
}

bool RelationalStructure::same_signature(const RelationalStructure& other) const {
    if (relations_.size() != other.relations_.size()) return false;
    for (const auto& r : relations_) {
        const Relation* o = other.find(r.name);
        if (!o || o->arity() != r.relation.arity()) return false;
    }
    return true;
}

RelationalStructure RelationalStructure::induced(const ElementSet& keep) const {
    std::vector<int> pos(size_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    const auto m = static_cast<std::uint32_t>(keep.size());
    std::vector<Named> rels;
    for (const auto& r : relations_) {
        std::vector<Tuple> ts;
        for (const auto& t : r.relation.tuples()) {
            Tuple u;
            for (Element e : t) {
                if (pos[e] < 0) break;
                u.push_back(static_cast<Element>(pos[e]));
            }
            if (u.size() == t.size()) ts.push_back(std::move(u));
        }
        rels.push_back({r.name, Relation::uniform(m, r.relation.arity(), std::move(ts))});
    }
    return RelationalStructure(m, std::move(rels));
}

// ---------------------------------------------------------------- solver

Solver::Solver(std::size_t variables, std::uint32_t domain, std::uint64_t max_nodes)
    : vars_(variables), domain_(domain), max_nodes_(max_nodes), watch_(variables) {
    if (domain == 0 || domain > 64) throw InvalidInput("solver domains must have between 1 and 64 values");
    initial_.assign(variables, domain == 64 ? ~Mask{0} : (Mask{1} << domain) - 1);
}

void Solver::restrict_domain(std::size_t var, Mask allowed) { initial_[var] &= allowed; }

void Solver::add(std::vector<std::uint32_t> scope, const std::vector<Tuple>* allowed) {
    Constraint c{std::move(scope), allowed, {}};
    for (std::uint32_t i = 0; i < c.scope.size(); ++i)
        for (std::uint32_t j = 0; j < i; ++j)
            if (c.scope[i] == c.scope[j]) {
                c.equal_positions.emplace_back(j, i);
                break;
            }
    const auto id = static_cast<std::uint32_t>(constraints_.size());
    std::set<std::uint32_t> vs(c.scope.begin(), c.scope.end());
    for (auto v : vs) watch_[v].push_back(id);
    constraints_.push_back(std::move(c));
}

bool Solver::propagate(std::vector<Mask>& dom, std::vector<std::uint32_t> queue) const {
    std::vector<char> queued(constraints_.size(), 0);
    for (auto c : queue) queued[c] = 1;
    std::map<std::uint32_t, Mask> support;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t cid = queue[head];
        queued[cid] = 0;
        const Constraint& c = constraints_[cid];
        support.clear();
        for (auto v : c.scope) support[v] = 0;
        for (const auto& t : *c.allowed) {
            bool ok = true;
            for (std::size_t i = 0; i < t.size() && ok; ++i) ok = (dom[c.scope[i]] >> t[i]) & 1;
            for (auto [a, b] : c.equal_positions) ok = ok && t[a] == t[b];
            if (!ok) continue;
            for (std::size_t i = 0; i < t.size(); ++i) support[c.scope[i]] |= Mask{1} << t[i];
        }
        for (auto [v, s] : support) {
            Mask nd = dom[v] & s;
            if (nd == dom[v]) continue;
            if (nd == 0) return false;
            dom[v] = nd;
            for (auto other : watch_[v]) {
                if (other != cid && !queued[other]) {
                    queued[other] = 1;
                    queue.push_back(other);
                }
            }
        }
    }
    return true;
}

bool Solver::recurse(std::vector<Mask>& dom, const std::function<bool(const std::vector<Element>&)>& on_solution) {
    std::size_t best = vars_;
    int best_count = 65;
    for (std::size_t v = 0; v < vars_; ++v) {
        int c = std::popcount(dom[v]);
        if (c > 1 && c < best_count) {
            best = v;
            best_count = c;
        }
    }
    if (best == vars_) {
        std::vector<Element> sol(vars_);
        for (std::size_t v = 0; v < vars_; ++v) sol[v] = static_cast<Element>(std::countr_zero(dom[v]));
        return on_solution(sol);
    }
    for (Mask m = dom[best]; m; m &= m - 1) {
        if (++nodes_ > max_nodes_) {
            out_of_budget_ = true;
            return false;
        }
        std::vector<Mask> next = dom;
        next[best] = m & (~m + 1);
        if (!propagate(next, watch_[best])) continue;
        if (!recurse(next, on_solution)) return false;
    }
    return true;
}

Solver::Status Solver::search(const std::function<bool(const std::vector<Element>&)>& on_solution) {
    nodes_ = 0;
    out_of_budget_ = false;
    std::vector<Mask> dom = initial_;
    if (std::any_of(dom.begin(), dom.end(), [](Mask m) { return m == 0; })) return Status::Exhausted;
    std::vector<std::uint32_t> all(constraints_.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    if (!propagate(dom, all)) return Status::Exhausted;
    bool finished = recurse(dom, on_solution);
    if (out_of_budget_) return Status::OutOfBudget;
    return finished ? Status::Exhausted : Status::Stopped;
}

// ---------------------------------------------------------------- homomorphisms

bool is_homomorphism(const RelationalStructure& x, const RelationalStructure& a, std::span<const Element> map) {
    if (map.size() != x.size()) return false;
    for (Element v : map)
        if (v >= a.size()) return false;
    for (const auto& r : x.relations()) {
        const Relation* target = a.find(r.name);
        if (!target) return false;
        Tuple img;
        for (const auto& t : r.relation.tuples()) {
            img.clear();
            for (Element e : t) img.push_back(map[e]);
            if (!target->contains(img)) return false;
        }
    }
    return true;
}

namespace {

std::optional<std::vector<Element>> search_hom(const RelationalStructure& x, const RelationalStructure& a,
                                               const SearchBudget& budget, Solver::Mask allowed) {
    Solver s(x.size(), a.size(), budget.max_nodes);
    for (std::size_t v = 0; v < x.size(); ++v) s.restrict_domain(v, allowed);
    for (const auto& r : x.relations()) {
        const Relation* target = a.find(r.name);
        for (const auto& t : r.relation.tuples())
            s.add(std::vector<std::uint32_t>(t.begin(), t.end()), &target->tuples());
    }
    std::optional<std::vector<Element>> found;
    auto status = s.search([&](const std::vector<Element>& sol) {
        found = sol;
        return false;
    });
    if (status == Solver::Status::OutOfBudget)
        throw BudgetExceeded("homomorphism search exceeded " + std::to_string(budget.max_nodes) + " nodes");
    if (found && !is_homomorphism(x, a, *found)) throw TheoremViolation("solver returned a non-homomorphism");
    return found;
}

Solver::Mask all_values(std::uint32_t n) { return n == 64 ? ~Solver::Mask{0} : (Solver::Mask{1} << n) - 1; }

} // namespace

std::optional<std::vector<Element>> find_homomorphism(const RelationalStructure& x, const RelationalStructure& a,
                                                      const SearchBudget& budget) {
    if (!x.same_signature(a)) throw InvalidInput("homomorphism: structures have different signatures");
    return search_hom(x, a, budget, all_values(a.size()));
}

Core compute_core(const RelationalStructure& a, const SearchBudget& budget) {
    if (a.size() > budget.max_core_universe)
        throw BudgetExceeded("core computation limited to universes of size " +
                             std::to_string(budget.max_core_universe));
    Core core{a, full_set(a.size())};
    bool shrunk = true;
    while (shrunk && core.structure.size() > 1) {
        shrunk = false;
        const std::uint32_t n = core.structure.size();
        for (Element v = 0; v < n && !shrunk; ++v) {
            auto h = search_hom(core.structure, core.structure, budget, all_values(n) & ~(Solver::Mask{1} << v));
            if (!h) continue;
            ElementSet image = make_set(*h);
            ElementSet kept;
            for (Element e : image) kept.push_back(core.vertices[e]);
            core = Core{core.structure.induced(image), kept};
            shrunk = true;
        }
    }
    return core;
}

// ---------------------------------------------------------------- polymorphisms

bool is_polymorphism(const RelationalStructure& a, const OperationTable& f) {
    if (f.universe() != a.size()) return false;
    const std::size_t m = f.arity();
    for (const auto& named : a.relations()) {
        const auto& ts = named.relation.tuples();
        if (ts.empty()) continue;
        Tuple pick(m, 0), col(m), img(named.relation.arity());
        do {
            for (std::size_t j = 0; j < img.size(); ++j) {
                for (std::size_t i = 0; i < m; ++i) col[i] = ts[pick[i]][j];
                img[j] = f(col);
            }
            if (!named.relation.contains(img)) return false;
        } while (next_tuple(pick, static_cast<std::uint32_t>(ts.size())));
    }
    return true;
}

namespace {

// Constraints of the m-th power structure: for each relation and each choice
// of m of its tuples, the columns must map into the relation. var_of maps a
// column code to a solver variable.
void add_power_constraints(Solver& s, const RelationalStructure& a, std::size_t m,
                           const std::vector<std::uint32_t>& var_of, const SearchBudget& budget) {
    const std::uint32_t n = a.size();
    std::uint64_t total = 0;
    for (const auto& named : a.relations()) {
        const auto& ts = named.relation.tuples();
        if (ts.empty()) continue;
        total += checked_power(ts.size(), m, budget.max_constraints);
        if (total > budget.max_constraints)
            throw BudgetExceeded("polymorphism search needs more than " + std::to_string(budget.max_constraints) +
                                 " constraints");
    }
    for (const auto& named : a.relations()) {
        const auto& ts = named.relation.tuples();
        if (ts.empty()) continue;
        std::set<std::vector<std::uint32_t>> seen;
        Tuple pick(m, 0), col(m);
        do {
            std::vector<std::uint32_t> scope(named.relation.arity());
            for (std::size_t j = 0; j < scope.size(); ++j) {
                for (std::size_t i = 0; i < m; ++i) col[i] = ts[pick[i]][j];
                scope[j] = var_of[encode_tuple(col, n)];
            }
            if (seen.insert(scope).second) s.add(std::move(scope), &ts);
        } while (next_tuple(pick, static_cast<std::uint32_t>(ts.size())));
    }
}

} // namespace

std::vector<OperationTable> idempotent_polymorphisms(const RelationalStructure& a, std::size_t m,
                                                     const SearchBudget& budget) {
    if (m == 0) throw InvalidInput("polymorphism arity must be positive");
    const std::uint32_t n = a.size();
    const std::size_t space = checked_power(n, m, budget.guard_tuples);
    std::vector<std::uint32_t> var_of(space);
    for (std::uint32_t i = 0; i < space; ++i) var_of[i] = i;
    Solver s(space, n, budget.max_nodes);
    for (Element e = 0; e < n; ++e) s.restrict_domain(encode_tuple(Tuple(m, e), n), Solver::Mask{1} << e);
    add_power_constraints(s, a, m, var_of, budget);
    std::vector<OperationTable> out;
    auto status = s.search([&](const std::vector<Element>& sol) {
        out.emplace_back("f" + std::to_string(out.size()), m, n, sol);
        return true;
    });
    if (status == Solver::Status::OutOfBudget)
        throw BudgetExceeded("polymorphism enumeration exceeded " + std::to_string(budget.max_nodes) + " nodes");
    for (const auto& f : out)
        if (!is_polymorphism(a, f)) throw TheoremViolation("solver returned a non-polymorphism");
    return out;
}

namespace {

// Solver over one variable per shift orbit of A^p (constant tuples pinned).
// `merge` additionally identifies the orbit of one tuple with a single
// variable; returns the solver and the column-to-variable map.
std::pair<Solver, std::vector<std::uint32_t>> orbit_solver(const RelationalStructure& a, std::size_t p,
                                                           const SearchBudget& budget, bool cyclic,
                                                           std::span<const Element> merge) {
    const std::uint32_t n = a.size();
    const std::size_t space = checked_power(n, p, budget.guard_tuples);
    std::vector<std::uint32_t> var_of(space, UINT32_MAX);
    std::uint32_t next = 0;
    Tuple x(p, 0);
    for (std::size_t i = 0; i < space; ++i, next_tuple(x, n)) {
        if (var_of[i] != UINT32_MAX) continue;
        const std::uint32_t v = next++;
        var_of[i] = v;
        if (cyclic)
            for (const auto& y : shift_orbit(x)) var_of[encode_tuple(y, n)] = v;
    }
    if (!merge.empty()) {
        const std::uint32_t target = var_of[encode_tuple(merge, n)];
        std::set<std::uint32_t> vs;
        for (const auto& y : shift_orbit(merge)) vs.insert(var_of[encode_tuple(y, n)]);
        for (auto& v : var_of)
            if (vs.count(v)) v = target;
    }
    Solver s(next, n, budget.max_nodes);
    for (Element e = 0; e < n; ++e) s.restrict_domain(var_of[encode_tuple(Tuple(p, e), n)], Solver::Mask{1} << e);
    add_power_constraints(s, a, p, var_of, budget);
    return {std::move(s), std::move(var_of)};
}

} // namespace

std::optional<OperationTable> find_cyclic_polymorphism(const RelationalStructure& a, std::size_t p,
                                                       const SearchBudget& budget) {
    if (p < 2) throw InvalidInput("cyclic polymorphism arity must be at least 2");
    auto [s, var_of] = orbit_solver(a, p, budget, true, {});
    std::optional<OperationTable> found;
    auto status = s.search([&, &var_of = var_of](const std::vector<Element>& sol) {
        std::vector<Element> table(var_of.size());
        for (std::size_t i = 0; i < table.size(); ++i) table[i] = sol[var_of[i]];
        found.emplace("c", p, a.size(), std::move(table));
        return false;
    });
    if (status == Solver::Status::OutOfBudget)
        throw BudgetExceeded("cyclic polymorphism search exceeded " + std::to_string(budget.max_nodes) + " nodes");
    if (found && (!is_cyclic_op(*found) || !is_polymorphism(a, *found)))
        throw TheoremViolation("cyclic polymorphism failed re-verification");
    return found;
}

bool has_polymorphism_constant_on_orbit(const RelationalStructure& a, std::span<const Element> t,
                                        const SearchBudget& budget) {
    auto [s, var_of] = orbit_solver(a, t.size(), budget, false, t);
    bool found = false;
    auto status = s.search([&](const std::vector<Element>&) {
        found = true;
        return false;
    });
    if (status == Solver::Status::OutOfBudget)
        throw BudgetExceeded("orbit search exceeded " + std::to_string(budget.max_nodes) + " nodes");
    return found;
}

// ---------------------------------------------------------------- pp-formulas

Relation eval_pp_formula(const RelationalStructure& a, const PPFormula& f) {
    const std::uint32_t n = a.size();
    auto check_var = [&](std::size_t v) {
        if (v >= f.variables) throw InvalidInput("pp-formula: variable " + std::to_string(v) + " out of range");
    };
    if (f.free.empty()) throw InvalidInput("pp-formula: at least one free variable is required");
    for (auto v : f.free) check_var(v);
    for (const auto& atom : f.atoms) {
        for (auto v : atom.scope) check_var(v);
        switch (atom.kind) {
        case PPFormula::Atom::Kind::Relation: {
            const Relation* r = a.find(atom.relation);
            if (!r) throw InvalidInput("pp-formula: unknown relation " + atom.relation);
            if (r->arity() != atom.scope.size()) throw InvalidInput("pp-formula: arity mismatch for " + atom.relation);
            break;
        }
        case PPFormula::Atom::Kind::Equality:
            if (atom.scope.size() != 2) throw InvalidInput("pp-formula: equality takes two variables");
            break;
        case PPFormula::Atom::Kind::Singleton:
            if (atom.scope.size() != 1 || atom.element >= n) throw InvalidInput("pp-formula: malformed singleton");
            break;
        }
    }

    // Rows over `live` variables; a variable is dropped as soon as it is
    // neither free nor mentioned by a later atom.
    std::vector<std::size_t> live;
    std::set<Tuple> rows{Tuple{}};
    std::vector<bool> is_free(f.variables, false);
    for (auto v : f.free) is_free[v] = true;
    std::vector<std::size_t> last_use(f.variables, 0);
    for (std::size_t i = 0; i < f.atoms.size(); ++i)
        for (auto v : f.atoms[i].scope) last_use[v] = i + 1;

    for (std::size_t ai = 0; ai < f.atoms.size() && !rows.empty(); ++ai) {
        const auto& atom = f.atoms[ai];
        std::vector<Tuple> allowed;
        if (atom.kind == PPFormula::Atom::Kind::Relation) {
            allowed = a.find(atom.relation)->tuples();
        } else if (atom.kind == PPFormula::Atom::Kind::Equality) {
            for (Element e = 0; e < n; ++e) allowed.push_back({e, e});
        } else {
            allowed.push_back({atom.element});
        }
        std::vector<std::size_t> next_live = live;
        for (auto v : atom.scope)
            if (std::find(next_live.begin(), next_live.end(), v) == next_live.end()) next_live.push_back(v);
        std::set<Tuple> joined;
        for (const auto& row : rows) {
            for (const auto& t : allowed) {
                Tuple out(next_live.size(), 0);
                std::vector<bool> set(next_live.size(), false);
                for (std::size_t i = 0; i < live.size(); ++i) {
                    out[i] = row[i];
                    set[i] = true;
                }
                bool ok = true;
                for (std::size_t j = 0; j < atom.scope.size() && ok; ++j) {
                    auto pos = std::find(next_live.begin(), next_live.end(), atom.scope[j]) - next_live.begin();
                    if (set[pos]) {
                        ok = out[pos] == t[j];
                    } else {
                        out[pos] = t[j];
                        set[pos] = true;
                    }
                }
                if (ok) joined.insert(std::move(out));
            }
        }
        std::vector<std::size_t> keep_pos, kept;
        for (std::size_t i = 0; i < next_live.size(); ++i) {
            const auto v = next_live[i];
            if (is_free[v] || last_use[v] > ai + 1) {
                keep_pos.push_back(i);
                kept.push_back(v);
            }
        }
        rows.clear();
        for (const auto& r : joined) {
            Tuple p;
            for (auto i : keep_pos) p.push_back(r[i]);
            rows.insert(std::move(p));
        }
        live = std::move(kept);
    }
    // free variables never constrained range over the whole universe
    for (auto v : f.free) {
        if (std::find(live.begin(), live.end(), v) != live.end()) continue;
        std::set<Tuple> wider;
        for (const auto& r : rows)
            for (Element e = 0; e < n; ++e) {
                Tuple w = r;
                w.push_back(e);
                wider.insert(std::move(w));
            }
        rows = std::move(wider);
        live.push_back(v);
    }
    std::vector<Tuple> out;
    for (const auto& r : rows) {
        Tuple t;
        for (auto v : f.free) t.push_back(r[std::find(live.begin(), live.end(), v) - live.begin()]);
        out.push_back(std::move(t));
    }
    return Relation::uniform(n, f.free.size(), std::move(out));
}

PPFormula cycle_formula(const std::string& relation, std::size_t p) {
    PPFormula f;
    f.variables = p;
    for (std::size_t i = 0; i < p; ++i) {
        f.free.push_back(i);
        f.atoms.push_back({PPFormula::Atom::Kind::Relation, relation, 0, {i, (i + 1) % p}});
    }
    return f;
}

// ---------------------------------------------------------------- classification

std::string to_string(TemplateVerdict::Outcome o) {
    switch (o) {
    case TemplateVerdict::Outcome::NPComplete: return "NPComplete";
    case TemplateVerdict::Outcome::ConjecturedTractable: return "ConjecturedTractable";
    case TemplateVerdict::Outcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

bool is_digraph_template(const RelationalStructure& a) {
    return a.relations().size() == 1 && a.relations()[0].relation.arity() == 2;
}

// The relation {(f(a), f(sa), ..., f(s^{p-1}a)) : f idempotent polymorphism},
// one feasibility search per candidate tuple.
Relation orbit_relation(const RelationalStructure& a, const Tuple& orbit, const SearchBudget& budget) {
    const std::uint32_t n = a.size();
    const std::size_t p = orbit.size();
    const std::size_t space = checked_power(n, p, budget.guard_tuples);
    std::vector<std::uint32_t> var_of(space);
    for (std::uint32_t i = 0; i < space; ++i) var_of[i] = i;
    std::vector<Tuple> rows{orbit};
    for (std::size_t i = 1; i < p; ++i) rows.push_back(cyclic_shift(rows.back()));
    std::vector<Tuple> members;
    Tuple c(p, 0);
    do {
        Solver s(space, n, budget.max_nodes);
        for (Element e = 0; e < n; ++e) s.restrict_domain(encode_tuple(Tuple(p, e), n), Solver::Mask{1} << e);
        for (std::size_t i = 0; i < p; ++i) s.restrict_domain(encode_tuple(rows[i], n), Solver::Mask{1} << c[i]);
        add_power_constraints(s, a, p, var_of, budget);
        bool found = false;
        auto status = s.search([&](const std::vector<Element>&) {
            found = true;
            return false;
        });
        if (status == Solver::Status::OutOfBudget) throw BudgetExceeded("witness relation search ran out of nodes");
        if (found) members.push_back(c);
    } while (next_tuple(c, n));
    return Relation::uniform(n, p, std::move(members));
}

void verify_np_witness(const RelationalStructure& core, const Relation& r, const SearchBudget& budget) {
    if (r.empty() || !is_cyclic_relation(r) || contains_constant(r))
        throw TheoremViolation("hardness witness is not a nonempty constant-free cyclic relation");
    // spot-check invariance under small idempotent polymorphisms
    for (std::size_t m = 2; m <= 3; ++m) {
        std::vector<OperationTable> polys;
        try {
            polys = idempotent_polymorphisms(core, m, budget);
        } catch (const BudgetExceeded&) {
            return;
        }
        std::vector<OperationTable> ops;
        for (auto& f : polys) ops.push_back(f);
        if (ops.empty()) continue;
        if (!is_subuniverse_of_power(FiniteAlgebra(core.size(), std::move(ops)), r))
            throw TheoremViolation("hardness witness is not preserved by an idempotent polymorphism");
    }
}

} // namespace

TemplateVerdict classify_template(const RelationalStructure& a, const SearchBudget& budget) {
    TemplateVerdict v;
    try {
        Core core = compute_core(a, budget);
        const RelationalStructure& c = core.structure;
        v.core_vertices = core.vertices;
        v.p = smallest_prime_above(c.size());
        if (is_digraph_template(c)) {
            Relation r = eval_pp_formula(c, cycle_formula(c.relations()[0].name, v.p));
            if (!r.empty() && !contains_constant(r)) {
                verify_np_witness(c, r, budget);
                v.outcome = TemplateVerdict::Outcome::NPComplete;
                v.witness = std::move(r);
                v.witness_kind = "p-cycle";
                return v;
            }
        }
        if (auto f = find_cyclic_polymorphism(c, v.p, budget)) {
            v.outcome = TemplateVerdict::Outcome::ConjecturedTractable;
            v.polymorphism = std::move(f);
            return v;
        }
        Tuple t(v.p, 0);
        do {
            if (shift_orbit(t).front() != t || std::all_of(t.begin(), t.end(), [&](Element e) { return e == t[0]; }))
                continue;
            if (!has_polymorphism_constant_on_orbit(c, t, budget)) {
                v.outcome = TemplateVerdict::Outcome::NPComplete;
                v.orbit = t;
                v.witness_kind = "orbit";
                if (checked_power(c.size(), v.p) <= 4096) {
                    Relation r = orbit_relation(c, t, budget);
                    verify_np_witness(c, r, budget);
                    v.witness = std::move(r);
                }
                return v;
            }
        } while (next_tuple(t, c.size()));
        throw TheoremViolation("no cyclic polymorphism, yet every orbit admits a constant polymorphism value");
    } catch (const BudgetExceeded& e) {
        v.outcome = TemplateVerdict::Outcome::Inconclusive;
        v.reason = e.what();
        return v;
    }
}

} // namespace talg
