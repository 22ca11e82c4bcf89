#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace talg {

/// A term over operation symbols and variables x0, x1, ...
///
/// Terms are immutable and share subterms, so a term is really a DAG. Besides
/// the two textbook node kinds (variable, application of a symbol) there is a
/// substitution node: `compose(outer, inners)` stands for `outer` with every
/// variable x_i replaced by `inners[i]`. It lets star compositions and the
/// cyclic-term improvement step reuse an existing term without copying it.
/// `expand()` removes substitution nodes and yields a plain variable/apply tree.
class Term {
public:
    enum class Kind { Variable, Apply, Compose };

    static Term var(std::size_t index);
    static Term apply(std::string symbol, std::vector<Term> children);
    static Term compose(Term outer, std::vector<Term> inners);

    Kind kind() const;
    std::size_t var_index() const;
    const std::string& symbol() const;
    /// Apply: the arguments. Compose: the substituted terms.
    std::span<const Term> children() const;
    /// Compose only.
    const Term& outer() const;

    /// 1 + the largest variable index occurring in the term.
    std::size_t arity() const;
    /// Number of distinct DAG nodes.
    std::size_t dag_size() const;
    /// Node count of the fully expanded tree, saturating at `cap`.
    std::size_t tree_size(std::size_t cap = SIZE_MAX) const;

    /// Identity of the shared node; stable for the lifetime of the term.
    const void* id() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);

    struct Node;

private:
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// t1 * t2 (x0..x_{kl-1}) = t1(t2(x0..x_{l-1}), t2(x_l..x_{2l-1}), ...),
/// with k = arity(t1) and l = arity(t2). A unary projection on either side
/// is absorbed, so x0 * t = t * x0 = t.
Term star_compose(const Term& t1, const Term& t2);
/// Same with explicit arities (k >= arity(t1), l >= arity(t2)).
Term star_compose(const Term& t1, std::size_t k, const Term& t2, std::size_t l);

/// Star product of a list, folded from the right: t0 * (t1 * (... * t_m)).
/// Returns x0 for an empty list.
Term star_product(std::span<const Term> terms, std::span<const std::size_t> arities);

/// x_{offset}, ..., x_{offset+count-1}
std::vector<Term> variable_block(std::size_t offset, std::size_t count);

/// Substitution nodes inlined; result contains only Variable and Apply nodes.
/// Throws BudgetExceeded when the expanded tree would exceed `max_nodes`.
Term expand(const Term& t, std::size_t max_nodes = 1'000'000);

/// f(x0,g(x1,x0)) style rendering of the expanded term.
std::string to_string(const Term& t, std::size_t max_nodes = 100'000);

} // namespace talg
