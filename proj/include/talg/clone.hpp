#pragma once

#include "talg/algebra.hpp"

#include <optional>
#include <vector>

namespace talg {

struct CloneBudget {
    std::size_t max_arity = 4;
    std::size_t max_tables = 200'000;
    /// Coordinatewise operation applications allowed per arity.
    std::uint64_t max_applications = 50'000'000;
};

struct CloneMember {
    OperationTable table;
    Term witness;
};

struct CloneResult {
    /// Members grouped by arity (1..max_arity), each group in discovery order.
    std::vector<CloneMember> members;
    bool complete = true;
    std::size_t max_arity = 0;

    std::vector<const CloneMember*> of_arity(std::size_t k) const;
};

/// Term operations of arity <= budget.max_arity. The k-ary part is the
/// subuniverse of A^(A^k) generated by the k projections; witnesses come from
/// the closure trace, so each table keeps its first (breadth-first) term.
CloneResult generate_clone(const FiniteAlgebra& alg, const CloneBudget& budget = {});

/// k-ary part only. Throws nothing on truncation; check `complete`.
CloneResult generate_clone_arity(const FiniteAlgebra& alg, std::size_t k, const CloneBudget& budget = {});

/// A Taylor term of the algebra: basic operations first, then clone members
/// by arity.
std::optional<Term> find_taylor_term(const FiniteAlgebra& alg, const CloneBudget& budget = {});

} // namespace talg
