#pragma once

#include "talg/term.hpp"
#include "talg/types.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace talg {

/// A k-ary operation on {0..n-1} stored densely, row-major:
/// index(a_0..a_{k-1}) = sum a_i * n^(k-1-i).
class OperationTable {
public:
    OperationTable(std::string name, std::size_t arity, std::uint32_t universe,
                   std::vector<Element> table);

    template <class F>
    static OperationTable from_function(std::string name, std::size_t arity, std::uint32_t universe,
                                        F&& f) {
        std::vector<Element> table(checked_power(universe, arity, 1ULL << 28));
        Tuple t(arity, 0);
        for (auto& v : table) {
            v = static_cast<Element>(f(std::span<const Element>(t)));
            next_tuple(t, universe);
        }
        return OperationTable(std::move(name), arity, universe, std::move(table));
    }

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    std::uint32_t universe() const { return universe_; }
    std::span<const Element> table() const { return table_; }

    Element operator()(std::span<const Element> args) const {
        return table_[encode_tuple(args, universe_)];
    }
    Element at(std::uint64_t index) const { return table_[index]; }

    bool is_idempotent() const;
    OperationTable renamed(std::string name) const;

    friend bool operator==(const OperationTable& a, const OperationTable& b) {
        return a.arity_ == b.arity_ && a.universe_ == b.universe_ && a.table_ == b.table_;
    }

private:
    std::string name_;
    std::size_t arity_;
    std::uint32_t universe_;
    std::vector<Element> table_;
};

/// A finite algebra on {0..n-1} with named basic operations.
class FiniteAlgebra {
public:
    FiniteAlgebra(std::uint32_t size, std::vector<OperationTable> operations);

    std::uint32_t size() const { return size_; }
    std::span<const OperationTable> operations() const { return ops_; }
    const OperationTable* find(const std::string& name) const;
    const OperationTable& operation(const std::string& name) const;
    bool is_idempotent() const;
    bool same_signature(const FiniteAlgebra& other) const;

private:
    std::uint32_t size_;
    std::vector<OperationTable> ops_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Evaluates a fixed term in a fixed algebra. Symbols are resolved and
/// checked once at construction.
class TermEvaluator {
public:
    TermEvaluator(const FiniteAlgebra& alg, Term t);
    Element operator()(std::span<const Element> args) const;
    const Term& term() const { return term_; }

private:
    const FiniteAlgebra* alg_;
    Term term_;
    std::unordered_map<const void*, const OperationTable*> ops_;
};

Element eval_term(const FiniteAlgebra& alg, const Term& t, std::span<const Element> args);

/// Table of t as an operation of the given arity (>= t.arity()). Computed
/// bottom-up over the term DAG; every intermediate table must fit `guard`.
OperationTable term_table(const FiniteAlgebra& alg, const Term& t, std::size_t arity,
                          std::string name = "t", std::uint64_t guard = 1ULL << 22);

/// Callable view of a term operation: a table when n^arity is small, lazy
/// DAG evaluation otherwise.
class TermFunction {
public:
    TermFunction(const FiniteAlgebra& alg, const Term& t, std::size_t arity,
                 std::uint64_t table_limit = 1ULL << 20);
    explicit TermFunction(OperationTable table);
    std::size_t arity() const { return arity_; }
    Element operator()(std::span<const Element> args) const;

private:
    std::size_t arity_;
    std::optional<OperationTable> table_;
    std::optional<TermEvaluator> eval_;
};

FiniteAlgebra product(std::span<const FiniteAlgebra> algs);
FiniteAlgebra power(const FiniteAlgebra& alg, std::size_t m);
/// Restriction of alg to a subuniverse, relabelled 0..|sub|-1 in sorted order.
FiniteAlgebra subalgebra(const FiniteAlgebra& alg, const ElementSet& sub);

struct ClosureOptions {
    std::size_t max_elements = SIZE_MAX;
    std::uint64_t max_applications = UINT64_MAX;
    /// Stop early once an element satisfying this predicate is produced.
    std::function<bool(std::span<const Element>)> stop_when;
};

/// Closure of a set of tuples in A^width under the basic operations of A
/// applied coordinatewise, in breadth-first rounds, remembering how every
/// element was produced.
class SubpowerClosure {
public:
    SubpowerClosure(const FiniteAlgebra& alg, std::size_t width, std::span<const Tuple> generators,
                    const ClosureOptions& options = {});

    std::size_t width() const { return width_; }
    std::size_t size() const { return count_; }
    std::span<const Element> element(std::size_t i) const {
        return {data_.data() + i * width_, width_};
    }
    std::optional<std::size_t> find(std::span<const Element> t) const;
    /// Fixpoint reached (no budget or early stop interrupted the closure).
    bool complete() const { return complete_; }
    /// Index of the element that triggered stop_when, if any.
    std::optional<std::size_t> stopped_at() const { return stopped_at_; }
    std::uint64_t applications() const { return applications_; }
    std::size_t round(std::size_t i) const { return round_[i]; }

    /// Term over x_0..x_{g-1} (g = number of generators given) producing
    /// element i from the generators, with shared subterms.
    Term term_for(std::size_t i) const;

private:
    bool add(std::span<const Element> t, std::size_t op, std::span<const std::size_t> parents,
             std::size_t round);

    const FiniteAlgebra* alg_;
    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<Element> data_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::size_t> var_of_;   // generators: variable index
    std::vector<std::size_t> op_of_;    // derived: operation index
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::size_t> round_;
    std::size_t generator_count_ = 0;
    bool complete_ = true;
    std::optional<std::size_t> stopped_at_;
    std::uint64_t applications_ = 0;
    mutable std::vector<std::optional<Term>> terms_;
};

ElementSet generate_subuniverse(const FiniteAlgebra& alg, const ElementSet& seed);
bool is_subuniverse(const FiniteAlgebra& alg, const ElementSet& s);

/// All nonempty subuniverses, sorted by size then lexicographically.
/// Throws BudgetExceeded when the universe is larger than max_size.
std::vector<ElementSet> all_subuniverses(const FiniteAlgebra& alg, std::uint32_t max_size = 8);

/// Partition of the universe as a block-index array in restricted-growth form.
struct Congruence {
    std::vector<std::uint32_t> block;

    std::uint32_t block_count() const;
    std::vector<ElementSet> blocks() const;
    bool related(Element a, Element b) const { return block[a] == block[b]; }
    static Congruence diagonal(std::uint32_t n);
    static Congruence full(std::uint32_t n);
    static Congruence from_blocks(std::uint32_t n, const std::vector<ElementSet>& blocks);
    friend bool operator==(const Congruence&, const Congruence&) = default;
};

bool is_congruence(const FiniteAlgebra& alg, const Congruence& c);
std::vector<Congruence> congruences(const FiniteAlgebra& alg, std::uint32_t max_size = 12);
bool is_simple(const FiniteAlgebra& alg, std::uint32_t max_size = 12);
FiniteAlgebra quotient(const FiniteAlgebra& alg, const Congruence& c);

bool check_identity(const FiniteAlgebra& alg, const Term& s, const Term& t);
bool is_cyclic_op(const OperationTable& op);
bool is_wnu_op(const OperationTable& op);

/// t(lhs) ~ t(rhs) where each pattern entry is false for x and true for y.
struct TaylorIdentity {
    std::size_t coordinate;
    std::vector<bool> lhs;
    std::vector<bool> rhs;
};

/// One identity per coordinate of t, or nothing when t is not idempotent or
/// some coordinate has no such identity.
std::optional<std::vector<TaylorIdentity>> is_taylor_term(const FiniteAlgebra& alg, const Term& t);
std::optional<std::vector<TaylorIdentity>> is_taylor_op(const OperationTable& op);

/// A single term s such that every element of Sg(B) is a value of s on
/// arguments from B, for every B. Built as the star product of one witness
/// term per pair (B, b) with b in Sg(B) \ B.
struct UniversalGeneratorTerm {
    struct Factor {
        ElementSet seed;
        Element target;
        Term term;          // over x_0..x_{|seed|-1}
        std::size_t arity;  // |seed|
    };
    std::vector<Factor> factors;
    Term term = Term::var(0);
    std::size_t arity = 1;

    /// Arguments from B evaluating to b. Throws InvalidInput when b is not
    /// in Sg(B).
    Tuple witness(const ElementSet& seed, Element target) const;
};

UniversalGeneratorTerm construct_universal_generator_term(const FiniteAlgebra& alg,
                                                          std::uint64_t max_arity = 1ULL << 20);

} // namespace talg
