#pragma once

#include "talg/relation.hpp"

#include <optional>
#include <vector>

namespace talg {

struct CyclicOptions {
    /// Largest tuple space n^k that may be scanned.
    std::uint64_t guard_tuples = 1'000'000;
    /// Largest term DAG find_cyclic_term may build.
    std::size_t max_dag_nodes = 1'000'000;
};

struct CyclicDecision {
    enum class Method { Decision, Synthesis };

    std::size_t arity = 0;
    bool has_cyclic_term = false;
    /// A tuple whose shift orbit generates a constant-free subpower.
    std::optional<Tuple> counterexample;
    /// Size of that subpower.
    std::size_t counterexample_closure = 0;
    std::size_t orbits_checked = 0;
    Method method = Method::Decision;
};

/// Decides whether alg has a cyclic term of arity k: true iff the subpower of
/// A^k generated by every shift orbit contains a constant tuple.
/// Throws BudgetExceeded when n^k exceeds the guard.
CyclicDecision has_cyclic_term(const FiniteAlgebra& alg, std::size_t k, const CyclicOptions& options = {});

/// The subpower generated by the shift orbit of a, as a relation.
Relation orbit_closure(const FiniteAlgebra& alg, std::span<const Element> a);

struct CyclicSynthesis {
    Term term;
    OperationTable table;
    /// |S(t)| before each improvement step and after the last one.
    std::vector<std::size_t> s_sizes;
};

/// Builds a cyclic term of arity k by repeatedly fixing the lexicographically
/// least tuple whose orbit the current term is not constant on. Absent when
/// some orbit generates a constant-free subpower (no cyclic term exists).
std::optional<CyclicSynthesis> find_cyclic_term(const FiniteAlgebra& alg, std::size_t k,
                                                const CyclicOptions& options = {});

struct PrimeCheck {
    std::uint32_t p;
    CyclicDecision decision;
    /// A cyclic term of arity p exists, as the theorem demands.
    bool theorem_holds;
};

/// p = smallest prime above |A|. Throws InvalidInput unless the given term is
/// a Taylor term of the idempotent algebra.
PrimeCheck smallest_cyclic_prime_check(const FiniteAlgebra& alg, const Term& taylor,
                                       const CyclicOptions& options = {});

struct AritySpectrum {
    std::size_t lo = 2;
    std::size_t hi = 1;
    std::vector<std::size_t> members;

    bool contains(std::size_t k) const;
};

AritySpectrum arity_spectrum(const FiniteAlgebra& alg, std::size_t max_k, const CyclicOptions& options = {});

/// (m in C and n in C) == (mn in C), each side by the decision procedure.
bool check_spectrum_multiplicativity(const FiniteAlgebra& alg, std::size_t m, std::size_t n,
                                     const CyclicOptions& options = {});

/// If the quotient and every block have cyclic terms of arity k, so must alg.
/// Returns whether that implication held. Blocks must be subuniverses.
bool check_block_quotient_lemma(const FiniteAlgebra& alg, const Congruence& c, std::size_t k,
                                const CyclicOptions& options = {});

/// Chain from the diagonal to the full congruence. When every class of each
/// member splits into fewer than p classes of its predecessor, returns whether
/// alg has a cyclic term of arity p; nullopt when the splitting bound fails.
std::optional<bool> check_congruence_tower(const FiniteAlgebra& alg, const std::vector<Congruence>& chain,
                                           std::uint32_t p, const CyclicOptions& options = {});

} // namespace talg
