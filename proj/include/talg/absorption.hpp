#pragma once

#include "talg/clone.hpp"
#include "talg/relation.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace talg {

struct AbsorptionWitness {
    ElementSet subuniverse;
    Term term;
    std::size_t arity;
};

struct AbsorptionBudget {
    CloneBudget clone{};
};

/// B absorbs `ambient` (default: the whole universe) with respect to t:
/// t lands in B whenever all arguments but one are in B and the remaining
/// one is in the ambient set. Exhaustive over |B|^(m-1) * |ambient| * m
/// argument tuples. Throws InvalidInput when B is not a subuniverse.
bool check_absorption(const FiniteAlgebra& alg, const ElementSet& b, const Term& t, std::size_t arity,
                      const std::optional<ElementSet>& ambient = std::nullopt);
bool check_absorption(const FiniteAlgebra& alg, const ElementSet& b, const Term& t);
bool check_absorption(const FiniteAlgebra& alg, const ElementSet& b, const OperationTable& op,
                      const std::optional<ElementSet>& ambient = std::nullopt);

/// Lazily generated clone parts shared by several witness searches.
class CloneCache {
public:
    CloneCache(const FiniteAlgebra& alg, CloneBudget budget);
    /// Members of arity k; empty when k exceeds the budget or the table budget
    /// ran out before arity k.
    const std::vector<CloneMember>& arity(std::size_t k);
    bool complete() const { return complete_; }
    const CloneBudget& budget() const { return budget_; }

private:
    const FiniteAlgebra* alg_;
    CloneBudget budget_;
    std::size_t used_ = 0;
    bool complete_ = true;
    std::vector<std::optional<std::vector<CloneMember>>> parts_;
};

/// Search order: basic operations, clone members by arity, then s * t where
/// t witnesses an already-known absorbing superset B' and s witnesses B
/// absorbing B'. Absent means "none within budget", never a disproof.
std::optional<AbsorptionWitness> find_absorption_witness(const FiniteAlgebra& alg, const ElementSet& b,
                                                         const AbsorptionBudget& budget = {});
std::optional<AbsorptionWitness> find_absorption_witness(const FiniteAlgebra& alg, const ElementSet& b,
                                                         CloneCache& cache,
                                                         std::span<const AbsorptionWitness> known = {});

struct AbsorptionReport {
    std::vector<ElementSet> subuniverses;
    std::vector<AbsorptionWitness> proper_absorbing;
    /// Inclusion-minimal among the absorbing sets found (the universe counts).
    std::vector<ElementSet> minimal_absorbing;
    AbsorptionBudget budget;
    /// The budgeted clone was generated to its fixpoint at every arity.
    bool complete = true;

    const AbsorptionWitness* witness_for(const ElementSet& b) const;
};

AbsorptionReport absorption_report(const FiniteAlgebra& alg, const AbsorptionBudget& budget = {},
                                   std::uint32_t max_universe = 8);

/// First proper absorbing subuniverse found, checking every candidate against
/// basic operations before moving to clone members of growing arity.
std::optional<AbsorptionWitness> first_proper_absorbing(const FiniteAlgebra& alg,
                                                        const AbsorptionBudget& budget = {},
                                                        std::uint32_t max_universe = 8);

/// C absorbs B via s, B absorbs A via t  =>  C absorbs A via s * t.
/// Throws InvalidInput when an input witness does not verify.
AbsorptionWitness transitivity_compose(const FiniteAlgebra& alg, const AbsorptionWitness& inner,
                                       const AbsorptionWitness& outer);
/// B and C absorb A  =>  B n C absorbs A, via t_B * t_C.
AbsorptionWitness intersection_witness(const FiniteAlgebra& alg, const AbsorptionWitness& b,
                                       const AbsorptionWitness& c);

struct SpreadingTerm {
    Term term;
    std::size_t arity;
    /// Number of star-composition stages performed.
    std::size_t stages;
    /// Witness tuples evaluated through the term DAG during verification.
    std::size_t dag_checks;
};

struct SpreadingOptions {
    AbsorptionBudget budget{};
    std::size_t max_arity = 4096;
    std::size_t max_dag_checks = 4000;
};

/// A term v with W(v,b,i) = A for every element b and coordinate i, where
/// W(v,b,i) is the set of values of v with argument i fixed to b.
/// Requires an idempotent algebra, a Taylor term, and no proper absorbing
/// subuniverse within budget.
SpreadingTerm construct_spreading_term(const FiniteAlgebra& alg, const Term& taylor,
                                       const SpreadingOptions& options = {});

/// Values of an operation with argument i pinned to b, by enumeration.
ElementSet pinned_values(const OperationTable& op, Element b, std::size_t i);

namespace verdict {
struct Full {};
struct AbsorptionInA {
    AbsorptionWitness witness;
};
struct AbsorptionInB {
    AbsorptionWitness witness;
};
struct Undecided {
    AbsorptionBudget budget;
};
} // namespace verdict

using AbsorptionVerdict =
    std::variant<verdict::Full, verdict::AbsorptionInA, verdict::AbsorptionInB, verdict::Undecided>;

/// For R a subdirect, linked subuniverse of A x B over algebras with Taylor
/// terms: either R is everything or one side has a proper absorbing
/// subuniverse. Throws InvalidInput naming the failed precondition.
AbsorptionVerdict absorption_theorem_check(const FiniteAlgebra& a, const FiniteAlgebra& b, const Relation& r,
                                           const AbsorptionBudget& budget = {});

/// R closed under the operations of a_0 x ... x a_{k-1}, coordinatewise.
bool is_subuniverse_of_product(std::span<const FiniteAlgebra* const> algs, const Relation& r);

} // namespace talg
