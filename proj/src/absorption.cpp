#include "talg/absorption.hpp"

#include <algorithm>
#include <bit>

namespace talg {

namespace {

template <class F>
bool absorbs(const ElementSet& b, const ElementSet& ambient, std::size_t m, F&& f) {
    if (m == 0) return false;
    double cases = static_cast<double>(m) * static_cast<double>(ambient.size());
    for (std::size_t i = 1; i < m; ++i) cases *= static_cast<double>(b.size());
    if (cases > 2e8) throw BudgetExceeded("absorption check needs more than 2e8 evaluations");
    Tuple args(m);
    std::vector<std::size_t> idx(m - 1);
    for (std::size_t k = 0; k < m; ++k) {
        if (m > 1 && b.empty()) continue;
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            for (Element a : ambient) {
                for (std::size_t p = 0, q = 0; p < m; ++p) args[p] = p == k ? a : b[idx[q++]];
                if (!set_contains(b, f(std::span<const Element>(args)))) return false;
            }
            std::size_t q = idx.size();
            while (q-- > 0) {
                if (++idx[q] < b.size()) break;
                idx[q] = 0;
            }
            if (q == SIZE_MAX) break;
        }
    }
    return true;
}

void require_subuniverse(const FiniteAlgebra& alg, const ElementSet& b) {
    if (!is_subuniverse(alg, b)) throw InvalidInput("absorption: " + to_string(b) + " is not a subuniverse");
}

Term basic_term(const OperationTable& op) { return Term::apply(op.name(), variable_block(0, op.arity())); }

} // namespace

bool check_absorption(const FiniteAlgebra& alg, const ElementSet& b, const Term& t, std::size_t arity,
                      const std::optional<ElementSet>& ambient) {
    require_subuniverse(alg, b);
    TermFunction f(alg, t, arity);
    return absorbs(b, ambient ? *ambient : full_set(alg.size()), arity, f);
}

bool check_absorption(const FiniteAlgebra& alg, const ElementSet& b, const Term& t) {
    return check_absorption(alg, b, t, std::max<std::size_t>(t.arity(), 1));
}

bool check_absorption(const FiniteAlgebra& alg, const ElementSet& b, const OperationTable& op,
                      const std::optional<ElementSet>& ambient) {
    require_subuniverse(alg, b);
    return absorbs(b, ambient ? *ambient : full_set(alg.size()), op.arity(),
                   [&](std::span<const Element> a) { return op(a); });
}

// ---------------------------------------------------------------- clone cache

CloneCache::CloneCache(const FiniteAlgebra& alg, CloneBudget budget) : alg_(&alg), budget_(budget) {
    parts_.resize(budget_.max_arity + 1);
}

const std::vector<CloneMember>& CloneCache::arity(std::size_t k) {
    static const std::vector<CloneMember> none;
    if (k == 0 || k > budget_.max_arity) return none;
    if (!parts_[k]) {
        if (used_ >= budget_.max_tables) {
            complete_ = false;
            parts_[k].emplace();
        } else {
            CloneBudget b = budget_;
            b.max_tables = budget_.max_tables - used_;
            auto part = generate_clone_arity(*alg_, k, b);
            used_ += part.members.size();
            if (!part.complete) complete_ = false;
            parts_[k] = std::move(part.members);
        }
    }
    return *parts_[k];
}

// ---------------------------------------------------------------- witnesses

std::optional<AbsorptionWitness> find_absorption_witness(const FiniteAlgebra& alg, const ElementSet& b,
                                                         CloneCache& cache,
                                                         std::span<const AbsorptionWitness> known) {
    require_subuniverse(alg, b);
    if (b == full_set(alg.size())) {
        if (!alg.operations().empty()) {
            const auto& op = alg.operations().front();
            return AbsorptionWitness{b, basic_term(op), op.arity()};
        }
        return AbsorptionWitness{b, Term::var(0), 1};
    }
    for (const auto& op : alg.operations())
        if (check_absorption(alg, b, op)) return AbsorptionWitness{b, basic_term(op), op.arity()};
    for (std::size_t k = 1; k <= cache.budget().max_arity; ++k) {
        for (const auto& m : cache.arity(k))
            if (check_absorption(alg, b, m.table)) return AbsorptionWitness{b, m.witness, k};
    }
    for (const auto& outer : known) {
        if (outer.subuniverse == b || !is_subset(b, outer.subuniverse)) continue;
        auto try_inner = [&](const OperationTable& table, const Term& term) -> std::optional<AbsorptionWitness> {
            if (!check_absorption(alg, b, table, outer.subuniverse)) return std::nullopt;
            Term composed = star_compose(term, table.arity(), outer.term, outer.arity);
            std::size_t arity = table.arity() * outer.arity;
            if (!check_absorption(alg, b, composed, arity))
                throw TheoremViolation("composed absorption witness failed to verify");
            return AbsorptionWitness{b, composed, arity};
        };
        for (const auto& op : alg.operations())
            if (auto w = try_inner(op, basic_term(op))) return w;
        for (std::size_t k = 2; k <= cache.budget().max_arity; ++k)
            for (const auto& m : cache.arity(k))
                if (auto w = try_inner(m.table, m.witness)) return w;
    }
    return std::nullopt;
}

std::optional<AbsorptionWitness> find_absorption_witness(const FiniteAlgebra& alg, const ElementSet& b,
                                                         const AbsorptionBudget& budget) {
    CloneCache cache(alg, budget.clone);
    return find_absorption_witness(alg, b, cache);
}

const AbsorptionWitness* AbsorptionReport::witness_for(const ElementSet& b) const {
    for (const auto& w : proper_absorbing)
        if (w.subuniverse == b) return &w;
    return nullptr;
}

AbsorptionReport absorption_report(const FiniteAlgebra& alg, const AbsorptionBudget& budget,
                                   std::uint32_t max_universe) {
    if (!alg.is_idempotent()) throw InvalidInput("absorption_report requires an idempotent algebra");
    AbsorptionReport rep;
    rep.budget = budget;
    rep.subuniverses = all_subuniverses(alg, max_universe);
    const ElementSet all = full_set(alg.size());
    CloneCache cache(alg, budget.clone);
    std::vector<ElementSet> order;
    for (const auto& s : rep.subuniverses)
        if (s != all) order.push_back(s);
    std::stable_sort(order.begin(), order.end(),
                     [](const ElementSet& a, const ElementSet& b) { return a.size() > b.size(); });
    bool unresolved = false;
    for (const auto& s : order) {
        if (auto w = find_absorption_witness(alg, s, cache, rep.proper_absorbing)) {
            rep.proper_absorbing.push_back(std::move(*w));
        } else {
            unresolved = true;
        }
    }
    rep.complete = !unresolved || cache.complete();
    std::sort(rep.proper_absorbing.begin(), rep.proper_absorbing.end(), [](const auto& a, const auto& b) {
        return a.subuniverse.size() != b.subuniverse.size() ? a.subuniverse.size() < b.subuniverse.size()
                                                            : a.subuniverse < b.subuniverse;
    });
    std::vector<ElementSet> absorbing;
    for (const auto& w : rep.proper_absorbing) absorbing.push_back(w.subuniverse);
    absorbing.push_back(all);
    for (const auto& s : absorbing) {
        bool minimal = std::none_of(absorbing.begin(), absorbing.end(),
                                    [&](const ElementSet& o) { return o != s && is_subset(o, s); });
        if (minimal) rep.minimal_absorbing.push_back(s);
    }
    return rep;
}

std::optional<AbsorptionWitness> first_proper_absorbing(const FiniteAlgebra& alg, const AbsorptionBudget& budget,
                                                        std::uint32_t max_universe) {
    const ElementSet all = full_set(alg.size());
    std::vector<ElementSet> candidates;
    for (auto& s : all_subuniverses(alg, max_universe))
        if (s != all) candidates.push_back(std::move(s));
    for (const auto& op : alg.operations())
        for (const auto& s : candidates)
            if (check_absorption(alg, s, op)) return AbsorptionWitness{s, basic_term(op), op.arity()};
    CloneCache cache(alg, budget.clone);
    for (std::size_t k = 2; k <= budget.clone.max_arity; ++k)
        for (const auto& m : cache.arity(k))
            for (const auto& s : candidates)
                if (check_absorption(alg, s, m.table)) return AbsorptionWitness{s, m.witness, k};
    return std::nullopt;
}

AbsorptionWitness transitivity_compose(const FiniteAlgebra& alg, const AbsorptionWitness& inner,
                                       const AbsorptionWitness& outer) {
    const ElementSet& c = inner.subuniverse;
    const ElementSet& b = outer.subuniverse;
    if (!is_subset(c, b)) throw InvalidInput("transitivity_compose: inner set is not inside the outer set");
    if (!check_absorption(alg, b, outer.term, outer.arity))
        throw InvalidInput("transitivity_compose: outer witness does not absorb the algebra");
    if (!check_absorption(alg, c, inner.term, inner.arity, b))
        throw InvalidInput("transitivity_compose: inner witness does not absorb the outer set");
    AbsorptionWitness w{c, star_compose(inner.term, inner.arity, outer.term, outer.arity),
                        inner.arity * outer.arity};
    if (!check_absorption(alg, c, w.term, w.arity))
        throw TheoremViolation("transitivity_compose: composed witness failed to absorb");
    return w;
}

AbsorptionWitness intersection_witness(const FiniteAlgebra& alg, const AbsorptionWitness& b,
                                       const AbsorptionWitness& c) {
    ElementSet both = set_intersection(b.subuniverse, c.subuniverse);
    // B n C absorbs C with respect to B's term, then compose with C's.
    AbsorptionWitness inner{both, b.term, b.arity};
    return transitivity_compose(alg, inner, c);
}

// ---------------------------------------------------------------- spreading term

ElementSet pinned_values(const OperationTable& op, Element b, std::size_t i) {
    ElementSet out;
    Tuple x(op.arity(), 0);
    do {
        if (x[i] == b) out.push_back(op(x));
    } while (next_tuple(x, op.universe()));
    return make_set(std::move(out));
}

namespace {

using Mask = std::uint64_t;

// A star product f_0 * f_1 * ... * f_{L-1} of small terms with known tables.
// The empty chain is the unary projection.
class StarChain {
public:
    struct Factor {
        Term term;
        OperationTable table;
        std::vector<std::vector<Mask>> pinned; // pinned[c][q]
    };

    explicit StarChain(std::uint32_t n) : n_(n) { recompute(); }

    static Factor make_factor(const FiniteAlgebra& alg, const Term& t, std::size_t arity) {
        Factor f{t, term_table(alg, t, arity), {}};
        f.pinned.assign(alg.size(), std::vector<Mask>(arity, 0));
        Tuple x(arity, 0);
        do {
            Element v = f.table(x);
            for (std::size_t q = 0; q < arity; ++q) f.pinned[x[q]][q] |= Mask{1} << v;
        } while (next_tuple(x, alg.size()));
        return f;
    }

    StarChain prepend(std::span<const Factor> outer, std::size_t max_arity) const {
        StarChain c(n_);
        c.factors_.assign(outer.begin(), outer.end());
        c.factors_.insert(c.factors_.end(), factors_.begin(), factors_.end());
        std::size_t a = 1;
        for (const auto& f : c.factors_) {
            a *= f.table.arity();
            if (a > max_arity)
                throw BudgetExceeded("spreading term arity exceeds " + std::to_string(max_arity));
        }
        c.recompute();
        return c;
    }

    std::size_t arity() const { return suffix_.front(); }
    Mask w(Element b, std::size_t i) const { return levels_.front()[i * n_ + b]; }

    Term term() const {
        std::vector<Term> ts;
        std::vector<std::size_t> as;
        for (const auto& f : factors_) {
            ts.push_back(f.term);
            as.push_back(f.table.arity());
        }
        return star_product(ts, as);
    }

    Tuple witness(Element b, std::size_t i, Element c) const { return witness_at(0, b, i, c); }

    Element eval(std::span<const Element> args) const { return eval_at(0, args); }

private:
    void recompute() {
        const std::size_t L = factors_.size();
        suffix_.assign(L + 1, 1);
        for (std::size_t j = L; j-- > 0;) suffix_[j] = suffix_[j + 1] * factors_[j].table.arity();
        levels_.assign(L + 1, {});
        levels_[L].assign(n_, 0);
        for (Element b = 0; b < n_; ++b) levels_[L][b] = Mask{1} << b;
        for (std::size_t j = L; j-- > 0;) {
            const std::size_t inner = suffix_[j + 1];
            levels_[j].assign(suffix_[j] * n_, 0);
            for (std::size_t i = 0; i < suffix_[j]; ++i) {
                const std::size_t q = i / inner, ii = i % inner;
                for (Element b = 0; b < n_; ++b) {
                    Mask m = 0;
                    for (Mask in = levels_[j + 1][ii * n_ + b]; in; in &= in - 1)
                        m |= factors_[j].pinned[std::countr_zero(in)][q];
                    levels_[j][i * n_ + b] = m;
                }
            }
        }
    }

    Tuple witness_at(std::size_t j, Element b, std::size_t i, Element c) const {
        if (j == factors_.size()) return {b};
        const Factor& f = factors_[j];
        const std::size_t inner = suffix_[j + 1], q = i / inner, ii = i % inner;
        Element mid = 0;
        bool found = false;
        for (Mask in = levels_[j + 1][ii * n_ + b]; in && !found; in &= in - 1) {
            mid = static_cast<Element>(std::countr_zero(in));
            found = (f.pinned[mid][q] >> c) & 1;
        }
        if (!found) throw TheoremViolation("spreading witness: value not reachable");
        Tuple y(f.table.arity(), 0);
        do {
            if (y[q] == mid && f.table(y) == c) break;
        } while (next_tuple(y, n_));
        Tuple out;
        out.reserve(suffix_[j]);
        for (std::size_t p = 0; p < y.size(); ++p) {
            if (p == q) {
                Tuple sub = witness_at(j + 1, b, ii, mid);
                out.insert(out.end(), sub.begin(), sub.end());
            } else {
                out.insert(out.end(), inner, y[p]);
            }
        }
        return out;
    }

    Element eval_at(std::size_t j, std::span<const Element> args) const {
        if (j == factors_.size()) return args[0];
        const Factor& f = factors_[j];
        const std::size_t inner = suffix_[j + 1];
        Tuple vals(f.table.arity());
        for (std::size_t p = 0; p < vals.size(); ++p) vals[p] = eval_at(j + 1, args.subspan(p * inner, inner));
        return f.table(vals);
    }

    std::uint32_t n_;
    std::vector<Factor> factors_;
    std::vector<std::size_t> suffix_;
    std::vector<std::vector<Mask>> levels_; // levels_[j][i * n + b]
};

} // namespace

SpreadingTerm construct_spreading_term(const FiniteAlgebra& alg, const Term& taylor,
                                       const SpreadingOptions& options) {
    const std::uint32_t n = alg.size();
    if (!alg.is_idempotent()) throw InvalidInput("spreading term: algebra is not idempotent");
    if (n > 8) throw BudgetExceeded("spreading term: universe larger than 8");
    if (n == 1) return {Term::var(0), 1, 0, 0};
    const std::size_t m = std::max<std::size_t>(taylor.arity(), 1);
    if (!is_taylor_term(alg, taylor)) throw InvalidInput("spreading term: the given term is not a Taylor term");
    if (auto w = first_proper_absorbing(alg, options.budget))
        throw InvalidInput("spreading term: " + to_string(w->subuniverse) +
                           " is a proper absorbing subuniverse");

    const Mask full = (Mask{1} << n) - 1;
    const auto subs = all_subuniverses(alg);
    auto largest_inside = [&](Mask w) {
        std::size_t best = 0;
        for (const auto& s : subs) {
            Mask sm = 0;
            for (Element e : s) sm |= Mask{1} << e;
            if ((sm & ~w) == 0) best = std::max(best, s.size());
        }
        return best;
    };
    auto all_full = [&](const StarChain& c) {
        for (std::size_t i = 0; i < c.arity(); ++i)
            for (Element b = 0; b < n; ++b)
                if (c.w(b, i) != full) return false;
        return true;
    };

    auto gen = construct_universal_generator_term(alg);
    std::vector<StarChain::Factor> s_factors;
    for (const auto& f : gen.factors) s_factors.push_back(StarChain::make_factor(alg, f.term, f.arity));
    std::vector<StarChain::Factor> t_factor{StarChain::make_factor(alg, taylor, m)};

    StarChain v(n);
    StarChain result(n);
    std::size_t stages = 0;
    bool done = false;
    for (std::size_t stage = 1; stage < n && !done; ++stage) {
        ++stages;
        StarChain w = v.prepend(t_factor, options.max_arity);
        if (all_full(w)) {
            result = std::move(w);
            done = true;
            break;
        }
        v = w.prepend(s_factors, options.max_arity);
        for (std::size_t i = 0; i < v.arity(); ++i) {
            for (Element b = 0; b < n; ++b) {
                if (largest_inside(v.w(b, i)) <= stage)
                    throw InvalidInput("spreading term: stage " + std::to_string(stage) +
                                       " did not grow W(v," + std::to_string(b) + "," + std::to_string(i) +
                                       "); the algebra has an absorbing subuniverse beyond the search budget");
            }
        }
        if (all_full(v)) {
            result = v;
            done = true;
        }
    }
    if (!done) throw TheoremViolation("spreading term: W-sets did not reach the universe");

    // Every (b, i, c): an explicit argument tuple with b at i evaluating to c,
    // checked through the chain tables; a spread-out sample also goes through
    // the term DAG.
    SpreadingTerm out{result.term(), result.arity(), stages, 0};
    TermEvaluator dag(alg, out.term);
    const std::size_t total = static_cast<std::size_t>(n) * n * out.arity;
    const std::size_t stride = std::max<std::size_t>(1, total / std::max<std::size_t>(options.max_dag_checks, 1));
    std::size_t counter = 0;
    for (std::size_t i = 0; i < out.arity; ++i) {
        for (Element b = 0; b < n; ++b) {
            for (Element c = 0; c < n; ++c, ++counter) {
                Tuple args = result.witness(b, i, c);
                if (args.size() != out.arity || args[i] != b || result.eval(args) != c)
                    throw TheoremViolation("spreading term: witness tuple does not evaluate as claimed");
                if (counter % stride == 0) {
                    ++out.dag_checks;
                    if (dag(args) != c) throw TheoremViolation("spreading term: term DAG disagrees with its tables");
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- theorem check

bool is_subuniverse_of_product(std::span<const FiniteAlgebra* const> algs, const Relation& r) {
    if (algs.size() != r.arity()) throw InvalidInput("relation arity differs from the number of factors");
    for (std::size_t c = 0; c < algs.size(); ++c) {
        if (r.sizes()[c] != algs[c]->size()) throw InvalidInput("relation coordinate size differs from its factor");
        if (!algs[c]->same_signature(*algs[0])) throw InvalidInput("factors have different signatures");
    }
    if (r.empty()) return true;
    const auto& ts = r.tuples();
    Tuple res(r.arity());
    for (const auto& op0 : algs[0]->operations()) {
        std::vector<const OperationTable*> ops;
        for (const auto* a : algs) ops.push_back(&a->operation(op0.name()));
        Tuple idx(op0.arity(), 0), args(op0.arity());
        do {
            for (std::size_t c = 0; c < r.arity(); ++c) {
                for (std::size_t j = 0; j < idx.size(); ++j) args[j] = ts[idx[j]][c];
                res[c] = (*ops[c])(args);
            }
            if (!r.contains(res)) return false;
        } while (next_tuple(idx, static_cast<std::uint32_t>(ts.size())));
    }
    return true;
}

AbsorptionVerdict absorption_theorem_check(const FiniteAlgebra& a, const FiniteAlgebra& b, const Relation& r,
                                           const AbsorptionBudget& budget) {
    if (r.arity() != 2 || r.sizes()[0] != a.size() || r.sizes()[1] != b.size())
        throw InvalidInput("absorption theorem: relation must be a binary relation between the two universes");
    const FiniteAlgebra* factors[] = {&a, &b};
    if (!is_subuniverse_of_product(factors, r))
        throw InvalidInput("absorption theorem: relation is not closed under the operations");
    if (!is_subdirect(r)) throw InvalidInput("absorption theorem: relation is not subdirect");
    if (!is_linked(r).first) throw InvalidInput("absorption theorem: relation is not linked");
    if (!a.is_idempotent() || !b.is_idempotent())
        throw InvalidInput("absorption theorem: algebras must be idempotent");
    if (!find_taylor_term(a, budget.clone)) throw InvalidInput("absorption theorem: no Taylor term for A");
    if (!find_taylor_term(b, budget.clone)) throw InvalidInput("absorption theorem: no Taylor term for B");
    if (r.size() == static_cast<std::size_t>(a.size()) * b.size()) return verdict::Full{};
    if (auto w = first_proper_absorbing(a, budget)) return verdict::AbsorptionInA{std::move(*w)};
    if (auto w = first_proper_absorbing(b, budget)) return verdict::AbsorptionInB{std::move(*w)};
    return verdict::Undecided{budget};
}

} // namespace talg
