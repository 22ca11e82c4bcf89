#include "talg/cyclic.hpp"

#include <algorithm>

namespace talg {

namespace {

bool is_constant(std::span<const Element> t) {
    return std::all_of(t.begin(), t.end(), [&](Element e) { return e == t[0]; });
}

// Generators sigma^0 a, sigma^1 a, ..., sigma^{k-1} a (with repeats).
std::vector<Tuple> shifted_copies(std::span<const Element> a) {
    std::vector<Tuple> out{Tuple(a.begin(), a.end())};
    for (std::size_t i = 1; i < a.size(); ++i) out.push_back(cyclic_shift(out.back()));
    return out;
}

bool least_in_orbit(const Tuple& a) {
    Tuple s = a;
    for (std::size_t i = 1; i < a.size(); ++i) {
        s = cyclic_shift(s);
        if (s < a) return false;
    }
    return true;
}

void check_space(const FiniteAlgebra& alg, std::size_t k, const CyclicOptions& options) {
    if (k < 2) throw InvalidInput("cyclic arity must be at least 2");
    if (!alg.is_idempotent()) throw InvalidInput("cyclic terms are only decided for idempotent algebras");
    checked_power(alg.size(), k, options.guard_tuples);
}

} // namespace

Relation orbit_closure(const FiniteAlgebra& alg, std::span<const Element> a) {
    auto gens = shifted_copies(a);
    SubpowerClosure c(alg, a.size(), gens);
    std::vector<Tuple> tuples;
    for (std::size_t i = 0; i < c.size(); ++i) tuples.emplace_back(c.element(i).begin(), c.element(i).end());
    return Relation::uniform(alg.size(), a.size(), std::move(tuples));
}

CyclicDecision has_cyclic_term(const FiniteAlgebra& alg, std::size_t k, const CyclicOptions& options) {
    check_space(alg, k, options);
    CyclicDecision d;
    d.arity = k;
    ClosureOptions co;
    co.stop_when = [](std::span<const Element> t) { return is_constant(t); };
    Tuple a(k, 0);
    do {
        if (is_constant(a) || !least_in_orbit(a)) continue;
        ++d.orbits_checked;
        auto gens = shifted_copies(a);
        SubpowerClosure c(alg, k, gens, co);
        if (!c.stopped_at()) {
            d.counterexample = a;
            d.counterexample_closure = c.size();
            break;
        }
    } while (next_tuple(a, alg.size()));
    d.has_cyclic_term = !d.counterexample;
    if (d.counterexample) {
        Relation r = orbit_closure(alg, *d.counterexample);
        if (r.empty() || !is_cyclic_relation(r) || !is_subuniverse_of_power(alg, r) || contains_constant(r))
            throw TheoremViolation("cyclic decision: counterexample closure failed re-verification");
    }
    return d;
}

std::optional<CyclicSynthesis> find_cyclic_term(const FiniteAlgebra& alg, std::size_t k,
                                                const CyclicOptions& options) {
    check_space(alg, k, options);
    const std::uint32_t n = alg.size();
    const std::size_t space = checked_power(n, k, options.guard_tuples);

    // shift_index[j][x] = index of sigma^j applied to tuple x
    std::vector<std::vector<std::uint32_t>> shift_index(k, std::vector<std::uint32_t>(space));
    {
        Tuple x(k, 0);
        for (std::size_t i = 0; i < space; ++i, next_tuple(x, n)) {
            Tuple s = x;
            for (std::size_t j = 0; j < k; ++j) {
                shift_index[j][i] = static_cast<std::uint32_t>(encode_tuple(s, n));
                s = cyclic_shift(s);
            }
        }
    }
    std::vector<std::vector<Term>> shifted_vars(k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) shifted_vars[j].push_back(Term::var((i + j) % k));

    Term t = Term::var(0);
    std::vector<Element> table(space);
    {
        Tuple x(k, 0);
        for (std::size_t i = 0; i < space; ++i, next_tuple(x, n)) table[i] = x[0];
    }
    auto constant_on_orbit = [&](std::size_t i) {
        for (std::size_t j = 1; j < k; ++j)
            if (table[shift_index[j][i]] != table[i]) return false;
        return true;
    };
    auto s_size = [&] {
        std::size_t c = 0;
        for (std::size_t i = 0; i < space; ++i) c += constant_on_orbit(i);
        return c;
    };

    CyclicSynthesis out{t, OperationTable("t", 1, n, full_set(n)), {s_size()}};
    ClosureOptions co;
    co.stop_when = [](std::span<const Element> x) { return is_constant(x); };
    while (true) {
        std::size_t a = 0;
        while (a < space && constant_on_orbit(a)) ++a;
        if (a == space) break;
        Tuple b(k);
        for (std::size_t j = 0; j < k; ++j) b[j] = table[shift_index[j][a]];
        auto gens = shifted_copies(b);
        SubpowerClosure c(alg, k, gens, co);
        if (!c.stopped_at()) return std::nullopt;
        Term s = c.term_for(*c.stopped_at());
        const OperationTable st = term_table(alg, s, k, "s", options.guard_tuples);

        std::vector<Term> inner;
        for (std::size_t j = 0; j < k; ++j) inner.push_back(Term::compose(t, shifted_vars[j]));
        t = Term::compose(s, std::move(inner));
        if (t.dag_size() > options.max_dag_nodes)
            throw BudgetExceeded("cyclic term DAG exceeds " + std::to_string(options.max_dag_nodes) + " nodes");

        std::vector<Element> next(space);
        Tuple args(k);
        for (std::size_t i = 0; i < space; ++i) {
            for (std::size_t j = 0; j < k; ++j) args[j] = table[shift_index[j][i]];
            next[i] = st(args);
        }
        table = std::move(next);
        const std::size_t size = s_size();
        if (size <= out.s_sizes.back()) throw TheoremViolation("cyclic synthesis: S(t) did not grow");
        out.s_sizes.push_back(size);
    }
    out.term = t;
    out.table = OperationTable("c", k, n, std::move(table));
    if (!is_cyclic_op(out.table)) throw TheoremViolation("cyclic synthesis: final table is not cyclic");
    if (!(term_table(alg, out.term, k, "c", options.guard_tuples) == out.table))
        throw TheoremViolation("cyclic synthesis: term does not evaluate to the tracked table");
    return out;
}

PrimeCheck smallest_cyclic_prime_check(const FiniteAlgebra& alg, const Term& taylor, const CyclicOptions& options) {
    if (!alg.is_idempotent()) throw InvalidInput("prime check: algebra is not idempotent");
    if (!is_taylor_term(alg, taylor)) throw InvalidInput("prime check: the given term is not a Taylor term");
    const std::uint32_t p = smallest_prime_above(alg.size());
    auto d = has_cyclic_term(alg, p, options);
    return {p, d, d.has_cyclic_term};
}

bool AritySpectrum::contains(std::size_t k) const {
    return std::binary_search(members.begin(), members.end(), k);
}

AritySpectrum arity_spectrum(const FiniteAlgebra& alg, std::size_t max_k, const CyclicOptions& options) {
    AritySpectrum s;
    s.hi = max_k;
    for (std::size_t k = 2; k <= max_k; ++k)
        if (has_cyclic_term(alg, k, options).has_cyclic_term) s.members.push_back(k);
    return s;
}

bool check_spectrum_multiplicativity(const FiniteAlgebra& alg, std::size_t m, std::size_t n,
                                     const CyclicOptions& options) {
    const bool both = has_cyclic_term(alg, m, options).has_cyclic_term && has_cyclic_term(alg, n, options).has_cyclic_term;
    return both == has_cyclic_term(alg, m * n, options).has_cyclic_term;
}

bool check_block_quotient_lemma(const FiniteAlgebra& alg, const Congruence& c, std::size_t k,
                                const CyclicOptions& options) {
    if (!is_congruence(alg, c)) throw InvalidInput("block lemma: partition is not a congruence");
    bool premise = has_cyclic_term(quotient(alg, c), k, options).has_cyclic_term;
    for (const auto& block : c.blocks()) {
        if (!premise) break;
        if (!is_subuniverse(alg, block)) throw InvalidInput("block lemma: block " + to_string(block) + " is not a subuniverse");
        if (block.size() > 1) premise = has_cyclic_term(subalgebra(alg, block), k, options).has_cyclic_term;
    }
    return !premise || has_cyclic_term(alg, k, options).has_cyclic_term;
}

std::optional<bool> check_congruence_tower(const FiniteAlgebra& alg, const std::vector<Congruence>& chain,
                                           std::uint32_t p, const CyclicOptions& options) {
    const std::uint32_t n = alg.size();
    if (!is_prime(p)) throw InvalidInput("congruence tower: " + std::to_string(p) + " is not prime");
    if (chain.size() < 2 || !(chain.front() == Congruence::diagonal(n)) || !(chain.back() == Congruence::full(n)))
        throw InvalidInput("congruence tower: chain must run from the diagonal to the full congruence");
    for (const auto& c : chain)
        if (c.block.size() != n || !is_congruence(alg, c)) throw InvalidInput("congruence tower: member is not a congruence");
    bool splits = true;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                if (chain[i - 1].related(a, b) && !chain[i].related(a, b))
                    throw InvalidInput("congruence tower: chain is not increasing");
        for (const auto& block : chain[i].blocks()) {
            ElementSet sub;
            for (Element e : block) sub.push_back(chain[i - 1].block[e]);
            if (make_set(sub).size() >= p) splits = false;
        }
    }
    if (!splits) return std::nullopt;
    return has_cyclic_term(alg, p, options).has_cyclic_term;
}

} // namespace talg
