#include "talg/zoo.hpp"

#include <algorithm>

namespace talg::zoo {

namespace {

FiniteAlgebra single(std::uint32_t n, std::string name, std::size_t arity,
                     Element (*f)(std::span<const Element>, std::uint32_t)) {
    auto op = OperationTable::from_function(name, arity, n, [&](std::span<const Element> a) { return f(a, n); });
    return FiniteAlgebra(n, {std::move(op)});
}

} // namespace

FiniteAlgebra trivial() {
    return single(1, "f", 2, [](std::span<const Element>, std::uint32_t) -> Element { return 0; });
}

FiniteAlgebra boolean_semilattice() { return chain_semilattice(2); }

FiniteAlgebra chain_semilattice(std::uint32_t n) {
    return single(n, "meet", 2, [](std::span<const Element> a, std::uint32_t) { return std::min(a[0], a[1]); });
}

FiniteAlgebra boolean_majority() {
    return single(2, "m", 3, [](std::span<const Element> a, std::uint32_t) -> Element {
        return (a[0] + a[1] + a[2]) >= 2 ? 1 : 0;
    });
}

FiniteAlgebra boolean_affine() {
    return single(2, "p", 3, [](std::span<const Element> a, std::uint32_t) -> Element {
        return (a[0] + a[1] + a[2]) % 2;
    });
}

FiniteAlgebra boolean_projections() {
    return single(2, "proj", 2, [](std::span<const Element> a, std::uint32_t) { return a[0]; });
}

FiniteAlgebra median3() {
    return single(3, "m", 3, [](std::span<const Element> a, std::uint32_t) {
        Tuple t(a.begin(), a.end());
        std::sort(t.begin(), t.end());
        return t[1];
    });
}

FiniteAlgebra affine_z3() {
    return single(3, "p", 3, [](std::span<const Element> a, std::uint32_t) -> Element {
        return (a[0] + 3 - a[1] + a[2]) % 3;
    });
}

FiniteAlgebra rock_paper_scissors() {
    return single(3, "f", 2, [](std::span<const Element> a, std::uint32_t) -> Element {
        if (a[0] == a[1]) return a[0];
        // b beats a iff b = a + 1 mod 3
        return (a[0] + 1) % 3 == a[1] ? a[1] : a[0];
    });
}

std::vector<Named> taylor_suite() {
    return {
        {"boolean-majority", boolean_majority()},
        {"boolean-affine", boolean_affine()},
        {"boolean-semilattice", boolean_semilattice()},
        {"chain3-semilattice", chain_semilattice(3)},
        {"median3", median3()},
        {"affine-z3", affine_z3()},
    };
}

FiniteAlgebra by_name(const std::string& name) {
    if (name == "trivial") return trivial();
    if (name == "boolean-projections") return boolean_projections();
    if (name == "rock-paper-scissors") return rock_paper_scissors();
    for (auto& a : taylor_suite())
        if (a.name == name) return a.algebra;
    throw InvalidInput("unknown built-in algebra '" + name + "'");
}

std::vector<FiniteAlgebra> idempotent_two_element_algebras() {
    std::vector<FiniteAlgebra> out;
    for (std::size_t k = 1; k <= 3; ++k) {
        const std::size_t cells = std::size_t{1} << k;
        // first and last cells are the constant tuples, pinned by idempotency
        for (std::uint32_t free = 0; free < (1u << (cells - 2)); ++free) {
            std::vector<Element> table(cells);
            table.front() = 0;
            table.back() = 1;
            for (std::size_t c = 1; c + 1 < cells; ++c) table[c] = (free >> (c - 1)) & 1;
            out.emplace_back(2, std::vector<OperationTable>{OperationTable("f", k, 2, std::move(table))});
        }
    }
    return out;
}

} // namespace talg::zoo
