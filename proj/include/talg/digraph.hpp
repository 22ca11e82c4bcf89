#pragma once

#include "talg/absorption.hpp"
#include "talg/csp.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace talg {

class Digraph {
public:
    using Edge = std::pair<Element, Element>;

    Digraph(std::uint32_t vertices, std::vector<Edge> edges);

    static Digraph from_relation(const Relation& r);
    /// Directed cycle 0 -> 1 -> ... -> k-1 -> 0.
    static Digraph cycle(std::uint32_t k);
    /// Symmetric loopless complete graph.
    static Digraph complete(std::uint32_t k);
    /// Symmetric closure of the given edges.
    static Digraph undirected(std::uint32_t vertices, const std::vector<Edge>& edges);

    std::uint32_t vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(Element u, Element v) const;
    const std::vector<Element>& out(Element v) const { return out_[v]; }
    const std::vector<Element>& in(Element v) const { return in_[v]; }
    bool is_symmetric() const;
    ElementSet loops() const;

    Relation edge_relation() const;
    /// Single binary relation named "E".
    RelationalStructure structure() const;
    Digraph induced(const ElementSet& keep) const;

private:
    std::uint32_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Element>> out_, in_;
};

enum class Direction { Forward, Backward };

struct OrientedPath {
    std::vector<Direction> steps;

    long algebraic_length() const;
    static OrientedPath forward(std::size_t k);
    /// k forward then k backward edges, repeated n times.
    static OrientedPath fence(std::size_t k, std::size_t n);
};

/// Largest subset of `within` whose induced subgraph has no sources or sinks.
ElementSet smooth_part(const Digraph& g, const ElementSet& within);
ElementSet smooth_part(const Digraph& g);
bool is_smooth(const Digraph& g);

/// Components sorted by least vertex.
std::vector<ElementSet> weak_components(const Digraph& g);
std::vector<ElementSet> strong_components(const Digraph& g);

/// Algebraic length of one weak component; nullopt stands for infinite (no
/// closed walk of nonzero algebraic length).
std::optional<std::uint64_t> algebraic_length(const Digraph& g, const ElementSet& component);

ElementSet path_image(const Digraph& g, const ElementSet& start, const OrientedPath& p);

struct LoopReport {
    Element loop;
    /// Some absorbing subuniverse lies inside a weak component of algebraic
    /// length 1.
    bool absorbing_side_condition = false;
    /// The minimal absorbing subuniverse holding `absorbing_loop`.
    std::optional<ElementSet> minimal_absorbing;
    std::optional<Element> absorbing_loop;
};

/// Finds a loop of a smooth digraph of algebraic length 1 whose edge set is a
/// subuniverse of alg^2, alg having a Taylor term. Throws InvalidInput on a
/// failed premise and TheoremViolation when the conclusion fails.
LoopReport find_loop_smooth_taylor(const Digraph& g, const FiniteAlgebra& alg, const AbsorptionBudget& budget = {});

bool is_circle(const Digraph& g, const ElementSet& component);
bool is_disjoint_union_of_circles(const Digraph& g);

enum class GraphVerdict { PolynomialTime, NPComplete };
std::string to_string(GraphVerdict v);

struct SmoothClassification {
    GraphVerdict verdict;
    ElementSet core_vertices;
};

/// Smooth digraphs: polynomial exactly when the core is a disjoint union of
/// circles.
SmoothClassification classify_smooth_digraph(const Digraph& g, const SearchBudget& budget = {});

/// Symmetric graphs: polynomial when bipartite or looped.
GraphVerdict classify_undirected(const Digraph& g);

/// Homomorphism into a disjoint union of circles via algebraic lengths.
std::optional<std::vector<Element>> solve_circle_csp(const Digraph& instance, const Digraph& circles);

struct PCycle {
    Relation relation;
    PPFormula formula;
};

/// {(a_0..a_{p-1}) : a_0 -> a_1 -> ... -> a_{p-1} -> a_0}.
PCycle p_cycle_relation(const Digraph& g, std::size_t p);

} // namespace talg
