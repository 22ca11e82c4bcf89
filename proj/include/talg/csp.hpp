#pragma once

#include "talg/relation.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace talg {

struct SearchBudget {
    /// Branching decisions per search.
    std::uint64_t max_nodes = 5'000'000;
    /// Constraints a polymorphism search may materialize.
    std::uint64_t max_constraints = 5'000'000;
    /// Largest tuple space n^m for polymorphism searches.
    std::uint64_t guard_tuples = 1'000'000;
    /// Largest universe compute_core accepts.
    std::uint32_t max_core_universe = 8;
};

/// A universe {0..n-1} with named relations over it.
class RelationalStructure {
public:
    struct Named {
        std::string name;
        Relation relation;
    };

    RelationalStructure(std::uint32_t size, std::vector<Named> relations);

    std::uint32_t size() const { return size_; }
    const std::vector<Named>& relations() const { return relations_; }
    const Relation* find(const std::string& name) const;
    /// Same relation names with the same arities, in any order.
    bool same_signature(const RelationalStructure& other) const;
    /// Substructure on `keep`, relabelled 0..|keep|-1 in sorted order.
    RelationalStructure induced(const ElementSet& keep) const;

private:
    std::uint32_t size_;
    std::vector<Named> relations_;
};

/// Finite-domain constraint solver: generalized arc consistency over table
/// constraints, then backtracking with the smallest domain first (lowest
/// index on ties) and values in ascending order.
class Solver {
public:
    using Mask = std::uint64_t;

    enum class Status { Exhausted, Stopped, OutOfBudget };

    Solver(std::size_t variables, std::uint32_t domain, std::uint64_t max_nodes);

    void restrict_domain(std::size_t var, Mask allowed);
    /// The values of scope[0..r-1] must form one of `allowed`. The tuple list
    /// must outlive the solver.
    void add(std::vector<std::uint32_t> scope, const std::vector<Tuple>* allowed);

    /// Calls on_solution for every solution until it returns false.
    Status search(const std::function<bool(const std::vector<Element>&)>& on_solution);
    std::uint64_t nodes() const { return nodes_; }

private:
    struct Constraint {
        std::vector<std::uint32_t> scope;
        const std::vector<Tuple>* allowed;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> equal_positions;
    };

    bool propagate(std::vector<Mask>& dom, std::vector<std::uint32_t> queue) const;
    bool recurse(std::vector<Mask>& dom, const std::function<bool(const std::vector<Element>&)>& on_solution);

    std::size_t vars_;
    std::uint32_t domain_;
    std::uint64_t max_nodes_;
    std::uint64_t nodes_ = 0;
    bool out_of_budget_ = false;
    std::vector<Mask> initial_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<std::uint32_t>> watch_;
};

bool is_homomorphism(const RelationalStructure& x, const RelationalStructure& a, std::span<const Element> map);

/// A homomorphism x -> a, or nothing when none exists. Throws InvalidInput on
/// a signature mismatch and BudgetExceeded when the search runs out of nodes.
std::optional<std::vector<Element>> find_homomorphism(const RelationalStructure& x, const RelationalStructure& a,
                                                      const SearchBudget& budget = {});

struct Core {
    RelationalStructure structure;
    /// Vertices of the input kept by the retraction, sorted.
    ElementSet vertices;
};

Core compute_core(const RelationalStructure& a, const SearchBudget& budget = {});

bool is_polymorphism(const RelationalStructure& a, const OperationTable& f);

/// Every idempotent polymorphism of arity m, in the solver's enumeration order.
std::vector<OperationTable> idempotent_polymorphisms(const RelationalStructure& a, std::size_t m,
                                                     const SearchBudget& budget = {});

/// An idempotent cyclic polymorphism of arity p, or nothing when none exists.
/// Throws BudgetExceeded when the search is cut short.
std::optional<OperationTable> find_cyclic_polymorphism(const RelationalStructure& a, std::size_t p,
                                                       const SearchBudget& budget = {});

/// Whether some idempotent polymorphism of arity p is constant on the shift
/// orbit of `a`.
bool has_polymorphism_constant_on_orbit(const RelationalStructure& s, std::span<const Element> a,
                                        const SearchBudget& budget = {});

struct PPFormula {
    struct Atom {
        enum class Kind { Relation, Equality, Singleton };
        Kind kind = Kind::Relation;
        std::string relation;
        Element element = 0;
        std::vector<std::size_t> scope;
    };

    std::size_t variables = 0;
    std::vector<std::size_t> free;
    std::vector<Atom> atoms;
};

/// Tuples of the free variables that extend to a satisfying assignment.
Relation eval_pp_formula(const RelationalStructure& a, const PPFormula& f);

/// E(x_0,x_1) & E(x_1,x_2) & ... & E(x_{p-1},x_0), all variables free.
PPFormula cycle_formula(const std::string& relation, std::size_t p);

struct TemplateVerdict {
    enum class Outcome { NPComplete, ConjecturedTractable, Inconclusive };

    Outcome outcome = Outcome::Inconclusive;
    std::uint32_t p = 0;
    ElementSet core_vertices;
    /// ConjecturedTractable: a cyclic idempotent polymorphism of arity p.
    std::optional<OperationTable> polymorphism;
    /// NPComplete: a nonempty, cyclic, constant-free relation preserved by
    /// every idempotent polymorphism of the core.
    std::optional<Relation> witness;
    /// "p-cycle" or "orbit".
    std::string witness_kind;
    /// NPComplete via "orbit": no idempotent polymorphism is constant on its orbit.
    std::optional<Tuple> orbit;
    /// Inconclusive: which budget ran out.
    std::string reason;
};

std::string to_string(TemplateVerdict::Outcome o);

TemplateVerdict classify_template(const RelationalStructure& a, const SearchBudget& budget = {});

} // namespace talg
