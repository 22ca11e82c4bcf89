#include "talg/verify.hpp"

#include "talg/digraph.hpp"
#include "talg/zoo.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace talg {

FiniteAlgebra relabel(const FiniteAlgebra& alg, const std::vector<Element>& perm) {
    std::vector<Element> inv(perm.size());
    for (Element i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    std::vector<OperationTable> ops;
    for (const auto& op : alg.operations()) {
        ops.push_back(OperationTable::from_function(op.name(), op.arity(), alg.size(), [&](std::span<const Element> x) {
            Tuple y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = inv[x[i]];
            return perm[op(y)];
        }));
    }
    return FiniteAlgebra(alg.size(), std::move(ops));
}

namespace {

using Rng = std::mt19937_64;

std::vector<Element> random_perm(std::uint32_t n, Rng& rng) {
    std::vector<Element> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

struct Named {
    std::string name;
    FiniteAlgebra alg;
};

std::vector<Named> suite_with_copies(Rng& rng) {
    std::vector<Named> out;
    for (auto& [name, alg] : zoo::taylor_suite()) {
        out.push_back({name, alg});
        auto perm = random_perm(alg.size(), rng);
        out.push_back({name + "~" + to_string(perm), relabel(alg, perm)});
    }
    return out;
}

// ---------------------------------------------------------------- absorption theorem

void absorption_theorem_suite(SuiteReport& rep, Rng& rng, const Budgets& b) {
    AbsorptionBudget budget{b.clone};
    auto algs = suite_with_copies(rng);
    std::vector<std::pair<const Named*, const Named*>> pairs;
    for (const auto& a : algs) pairs.emplace_back(&a, &a);
    for (const auto& a : algs)
        for (const auto& c : algs)
            if (&a != &c && a.alg.same_signature(c.alg) && a.alg.size() != c.alg.size()) pairs.emplace_back(&a, &c);
    for (auto [pa, pb] : pairs) {
        const auto& A = pa->alg;
        const auto& B = pb->alg;
        const std::uint32_t na = A.size(), nb = B.size(), cells = na * nb;
        const FiniteAlgebra* factors[] = {&A, &B};
        for (std::uint32_t mask = 1; mask + 1 < (1u << cells); ++mask) {
            std::vector<Tuple> ts;
            for (std::uint32_t i = 0; i < cells; ++i)
                if (mask >> i & 1) ts.push_back({i / nb, i % nb});
            Relation r({na, nb}, std::move(ts));
            if (!is_subdirect(r) || !is_linked(r).first || !is_subuniverse_of_product(factors, r)) continue;
            ++rep.instances;
            const std::string where = pa->name + " x " + pb->name + " R=" + std::to_string(mask);
            auto v = absorption_theorem_check(A, B, r, budget);
            bool ok = false;
            if (auto* in_a = std::get_if<verdict::AbsorptionInA>(&v)) {
                const auto& w = in_a->witness;
                ok = w.subuniverse.size() < na && check_absorption(A, w.subuniverse, w.term, w.arity);
                // transfer of absorption to neighborhoods
                ok = ok && check_absorption(B, plus_neighborhood(r, w.subuniverse), w.term, w.arity);
            } else if (auto* in_b = std::get_if<verdict::AbsorptionInB>(&v)) {
                const auto& w = in_b->witness;
                ok = w.subuniverse.size() < nb && check_absorption(B, w.subuniverse, w.term, w.arity);
                ok = ok && check_absorption(A, minus_neighborhood(r, w.subuniverse), w.term, w.arity);
            } else if (std::holds_alternative<verdict::Undecided>(v)) {
                rep.violations.push_back(where + ": Undecided on a proper linked subdirect subuniverse");
                continue;
            } else {
                rep.violations.push_back(where + ": Full reported for a proper relation");
                continue;
            }
            if (ok) ++rep.passed;
            else rep.violations.push_back(where + ": witness failed to verify");
        }
    }
}

// ---------------------------------------------------------------- cyclic prime

void cyclic_prime_suite(SuiteReport& rep, Rng& rng, const Budgets& b) {
    auto algs = suite_with_copies(rng);
    algs.push_back({"rock-paper-scissors", zoo::rock_paper_scissors()});
    for (const auto& [name, alg] : algs) {
        ++rep.instances;
        auto t = find_taylor_term(alg, b.clone);
        if (!t) {
            rep.violations.push_back(name + ": no Taylor term within budget");
            continue;
        }
        auto pc = smallest_cyclic_prime_check(alg, *t, b.cyclic);
        if (pc.theorem_holds) ++rep.passed;
        else rep.violations.push_back(name + ": no cyclic term of arity " + std::to_string(pc.p));
    }
}

// ---------------------------------------------------------------- loop theorem

void loop_theorem_suite(SuiteReport& rep, Rng& rng, const Budgets& b) {
    AbsorptionBudget budget{b.clone};
    std::vector<Named> algs;
    for (auto base : {zoo::boolean_majority(), zoo::boolean_affine()}) {
        algs.push_back({"", base});
        algs.push_back({"", power(base, 2)});
    }
    algs[0].name = "boolean-majority";
    algs[1].name = "boolean-majority^2";
    algs[2].name = "boolean-affine";
    algs[3].name = "boolean-affine^2";
    for (const auto& [name, alg] : algs) {
        const std::uint32_t n = alg.size();
        std::set<std::vector<Tuple>> seen;
        for (int d = 0; d < 1500; ++d) {
            std::vector<Tuple> seed;
            const int k = 1 + static_cast<int>(rng() % (2 * n));
            for (int i = 0; i < k; ++i) seed.push_back({static_cast<Element>(rng() % n), static_cast<Element>(rng() % n)});
            auto e = invariant_closure(alg, Relation::uniform(n, 2, seed));
            if (!seen.insert(e.tuples()).second) continue;
            auto g = Digraph::from_relation(e);
            ++rep.instances;
            bool premise = is_smooth(g);
            if (premise) {
                premise = false;
                for (const auto& c : weak_components(g))
                    if (algebraic_length(g, c) == std::optional<std::uint64_t>(1)) premise = true;
            }
            if (!premise) {
                ++rep.skipped;
                continue;
            }
            try {
                auto lr = find_loop_smooth_taylor(g, alg, budget);
                if (!g.has_edge(lr.loop, lr.loop)) throw TheoremViolation("reported vertex has no loop");
                ++rep.passed;
            } catch (const TheoremViolation& ex) {
                std::string edges;
                for (const auto& t : e.tuples()) edges += to_string(t);
                rep.violations.push_back(name + " " + edges + ": " + ex.what());
            }
        }
    }
}

// ---------------------------------------------------------------- spectra

void spectra_suite(SuiteReport& rep, Rng&, const Budgets& b) {
    for (const auto& [name, alg] : zoo::taylor_suite()) {
        const std::size_t max_k = alg.size() == 2 ? 9 : 5;
        auto spec = arity_spectrum(alg, max_k, b.cyclic);
        for (std::size_t m = 2; m <= max_k; ++m) {
            for (std::size_t k = 2; m * k <= max_k; ++k) {
                ++rep.instances;
                bool lhs = spec.contains(m) && spec.contains(k);
                if (lhs == spec.contains(m * k)) ++rep.passed;
                else rep.violations.push_back(name + ": multiplicativity fails at " + std::to_string(m) + "," + std::to_string(k));
            }
        }
        auto cons = congruences(alg);
        for (const auto& c : cons) {
            bool blocks_closed = true;
            for (const auto& blk : c.blocks()) blocks_closed = blocks_closed && is_subuniverse(alg, blk);
            for (std::size_t k = 2; k <= 3; ++k) {
                ++rep.instances;
                if (!blocks_closed) {
                    ++rep.skipped;
                    continue;
                }
                if (check_block_quotient_lemma(alg, c, k, b.cyclic)) ++rep.passed;
                else rep.violations.push_back(name + ": block lemma fails for arity " + std::to_string(k));
            }
        }
        const auto diag = Congruence::diagonal(alg.size()), full = Congruence::full(alg.size());
        std::vector<std::vector<Congruence>> chains{{diag, full}};
        for (const auto& c : cons)
            if (!(c == diag) && !(c == full)) chains.push_back({diag, c, full});
        for (const auto& chain : chains) {
            for (std::uint32_t p : {2u, 3u, 5u}) {
                ++rep.instances;
                auto r = check_congruence_tower(alg, chain, p, b.cyclic);
                if (!r) ++rep.skipped;
                else if (*r) ++rep.passed;
                else rep.violations.push_back(name + ": congruence tower fails for p=" + std::to_string(p));
            }
        }
    }
}

// ---------------------------------------------------------------- oracles

std::set<std::vector<Element>> naive_clone(const FiniteAlgebra& alg, std::size_t k, std::size_t limit) {
    const std::uint32_t n = alg.size();
    const std::size_t rows = checked_power(n, k);
    std::vector<std::vector<Element>> list;
    std::set<std::vector<Element>> seen;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Element> t(rows);
        for (std::size_t r = 0; r < rows; ++r) t[r] = decode_tuple(r, n, k)[i];
        if (seen.insert(t).second) list.push_back(t);
    }
    for (std::size_t done = 0; done < list.size() && seen.size() < limit;) {
        const std::size_t end = list.size();
        for (const auto& op : alg.operations()) {
            Tuple pick(op.arity(), 0), args(op.arity());
            do {
                std::vector<Element> t(rows);
                for (std::size_t r = 0; r < rows; ++r) {
                    for (std::size_t j = 0; j < args.size(); ++j) args[j] = list[pick[j]][r];
                    t[r] = op(args);
                }
                if (seen.insert(t).second) list.push_back(std::move(t));
            } while (next_tuple(pick, static_cast<std::uint32_t>(end)));
        }
        done = end;
        if (list.size() == end) break;
    }
    return seen;
}

bool brute_cyclic(const FiniteAlgebra& alg, std::size_t k) {
    for (const auto& t : naive_clone(alg, k, 100'000))
        if (is_cyclic_op(OperationTable("t", k, alg.size(), t))) return true;
    return false;
}

bool brute_hom(const Digraph& x, const Digraph& a) {
    Tuple f(x.vertices(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : x.edges()) ok = ok && a.has_edge(f[u], f[v]);
        if (ok) return true;
    } while (next_tuple(f, a.vertices()));
    return false;
}

Digraph random_digraph(std::uint32_t n, int inverse_density, Rng& rng) {
    std::vector<Digraph::Edge> e;
    for (Element i = 0; i < n; ++i)
        for (Element j = 0; j < n; ++j)
            if (rng() % inverse_density == 0) e.emplace_back(i, j);
    return Digraph(n, std::move(e));
}

void oracles_suite(SuiteReport& rep, Rng& rng, const Budgets& b) {
    for (const auto& alg : zoo::idempotent_two_element_algebras()) {
        ++rep.instances;
        const bool fast = has_cyclic_term(alg, 3, b.cyclic).has_cyclic_term;
        if (fast == brute_cyclic(alg, 3)) ++rep.passed;
        else rep.violations.push_back("cyclic decision disagrees with clone scan on " + to_string(alg.operations()[0].table()));
    }
    for (int i = 0; i < 500; ++i) {
        auto x = random_digraph(1 + rng() % 6, 4, rng);
        auto a = random_digraph(1 + rng() % 3, 2, rng);
        ++rep.instances;
        if (find_homomorphism(x.structure(), a.structure(), b.search).has_value() == brute_hom(x, a)) ++rep.passed;
        else rep.violations.push_back("homomorphism search disagrees with enumeration");
    }
    const std::vector<Digraph> circle_templates{Digraph::cycle(1), Digraph::cycle(3),
                                                Digraph(5, {{0, 1}, {1, 0}, {2, 3}, {3, 4}, {4, 2}})};
    for (int i = 0; i < 200; ++i) {
        auto x = random_digraph(1 + rng() % 7, 5, rng);
        const auto& t = circle_templates[rng() % circle_templates.size()];
        ++rep.instances;
        if (solve_circle_csp(x, t).has_value() == find_homomorphism(x.structure(), t.structure(), b.search).has_value())
            ++rep.passed;
        else rep.violations.push_back("circle CSP disagrees with the solver");
    }
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"absorption-theorem", "cyclic-prime", "loop-theorem", "spectra",
                                                "oracles"};
    return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, const Budgets& budgets) {
    SuiteReport rep;
    rep.suite = name;
    rep.seed = seed;
    Rng rng(seed);
    if (name == "absorption-theorem") absorption_theorem_suite(rep, rng, budgets);
    else if (name == "cyclic-prime") cyclic_prime_suite(rep, rng, budgets);
    else if (name == "loop-theorem") loop_theorem_suite(rep, rng, budgets);
    else if (name == "spectra") spectra_suite(rep, rng, budgets);
    else if (name == "oracles") oracles_suite(rep, rng, budgets);
    else throw InvalidInput("unknown suite \"" + name + "\"");
    return rep;
}

} // namespace talg
