#pragma once

#include "talg/algebra.hpp"
#include "talg/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace talg {

/// A finitary relation given by an explicit tuple set. Coordinate i ranges
/// over {0..sizes[i]-1}. Tuples are kept sorted and unique.
class Relation {
public:
    Relation(std::vector<std::uint32_t> sizes, std::vector<Tuple> tuples);

    static Relation binary(std::uint32_t left, std::uint32_t right,
                           const std::vector<std::pair<Element, Element>>& pairs);
    static Relation full(std::vector<std::uint32_t> sizes);
    static Relation identity(std::uint32_t n);
    /// All tuples over a single universe of the given size.
    static Relation uniform(std::uint32_t n, std::size_t arity, std::vector<Tuple> tuples) {
        return Relation(std::vector<std::uint32_t>(arity, n), std::move(tuples));
    }

    std::size_t arity() const { return sizes_.size(); }
    const std::vector<std::uint32_t>& sizes() const { return sizes_; }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }
    bool contains(std::span<const Element> t) const;
    /// True when every coordinate shares one universe size.
    bool is_uniform() const;

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::vector<std::uint32_t> sizes_;
    std::vector<Tuple> tuples_;
};

bool is_subdirect(const Relation& r);

/// s o r = {(a,c) : exists b, (a,b) in r and (b,c) in s}.
Relation compose(const Relation& s, const Relation& r);
/// r o r o ... o r (m factors).
Relation iterate(const Relation& r, std::size_t m);

ElementSet plus_neighborhood(const Relation& r, const ElementSet& x);
ElementSet minus_neighborhood(const Relation& r, const ElementSet& y);
/// Intersection of {a}^+ over a in x; the whole right universe when x is empty.
ElementSet common_plus_neighborhood(const Relation& r, const ElementSet& x);

/// Components of the bipartite graph of a binary relation with its isolated
/// vertices removed.
struct LinkStructure {
    struct Vertex {
        bool right;
        Element element;
        friend bool operator==(const Vertex&, const Vertex&) = default;
    };

    /// -1 marks an isolated vertex.
    std::vector<int> left_component;
    std::vector<int> right_component;
    ElementSet isolated_left;
    ElementSet isolated_right;
    int component_count = 0;

    /// Alternating path u = c_0, c_1, ..., c_m = v through related pairs.
    /// Empty when u and v are in different components or isolated.
    std::vector<Vertex> chain(Vertex u, Vertex v) const;

    // BFS forest used to rebuild chains
    std::vector<int> parent_; // index into the combined vertex list, -1 at roots
    std::vector<int> depth_;
    std::size_t left_size_ = 0;
};

std::pair<bool, LinkStructure> is_linked(const Relation& r);

std::vector<Tuple> shift_orbit(std::span<const Element> t);
bool is_cyclic_relation(const Relation& r);
std::optional<Element> contains_constant(const Relation& r);

/// Closed under every basic operation applied coordinatewise.
bool is_subuniverse_of_power(const FiniteAlgebra& alg, const Relation& r);
/// Smallest relation containing r that is closed under the operations.
Relation invariant_closure(const FiniteAlgebra& alg, const Relation& r);

} // namespace talg
