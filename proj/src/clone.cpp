#include "talg/clone.hpp"

namespace talg {

std::vector<const CloneMember*> CloneResult::of_arity(std::size_t k) const {
    std::vector<const CloneMember*> out;
    for (const auto& m : members)
        if (m.table.arity() == k) out.push_back(&m);
    return out;
}

namespace {

void append_arity(const FiniteAlgebra& alg, std::size_t k, const CloneBudget& budget, std::size_t room,
                  CloneResult& out) {
    const std::uint32_t n = alg.size();
    const std::uint64_t width = checked_power(n, k, 1ULL << 20);
    std::vector<Tuple> projections(k, Tuple(width));
    Tuple x(k, 0);
    for (std::uint64_t c = 0; c < width; ++c) {
        for (std::size_t j = 0; j < k; ++j) projections[j][c] = x[j];
        next_tuple(x, n);
    }
    ClosureOptions opts;
    opts.max_elements = room;
    opts.max_applications = budget.max_applications;
    SubpowerClosure closure(alg, width, projections, opts);
    if (!closure.complete()) out.complete = false;
    for (std::size_t i = 0; i < closure.size(); ++i) {
        auto e = closure.element(i);
        out.members.push_back({OperationTable("t" + std::to_string(k) + "_" + std::to_string(i), k, n,
                                              std::vector<Element>(e.begin(), e.end())),
                               closure.term_for(i)});
    }
}

} // namespace

CloneResult generate_clone_arity(const FiniteAlgebra& alg, std::size_t k, const CloneBudget& budget) {
    if (k == 0) throw InvalidInput("clone arity must be positive");
    CloneResult out;
    out.max_arity = k;
    append_arity(alg, k, budget, budget.max_tables, out);
    return out;
}

CloneResult generate_clone(const FiniteAlgebra& alg, const CloneBudget& budget) {
    if (budget.max_arity == 0) throw InvalidInput("clone arity must be positive");
    CloneResult out;
    out.max_arity = budget.max_arity;
    for (std::size_t k = 1; k <= budget.max_arity; ++k) {
        if (out.members.size() >= budget.max_tables) {
            out.complete = false;
            break;
        }
        append_arity(alg, k, budget, budget.max_tables - out.members.size(), out);
    }
    return out;
}

std::optional<Term> find_taylor_term(const FiniteAlgebra& alg, const CloneBudget& budget) {
    for (const auto& op : alg.operations()) {
        if (is_taylor_op(op)) {
            std::vector<Term> vars = variable_block(0, op.arity());
            return Term::apply(op.name(), vars);
        }
    }
    for (std::size_t k = 2; k <= budget.max_arity; ++k) {
        auto part = generate_clone_arity(alg, k, budget);
        for (const auto& m : part.members)
            if (is_taylor_op(m.table)) return m.witness;
    }
    return std::nullopt;
}

} // namespace talg
