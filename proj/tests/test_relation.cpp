#include "doctest.h"

#include "talg/relation.hpp"
#include "talg/zoo.hpp"

#include <functional>
#include <numeric>
#include <set>
#include <random>

using namespace talg;

TEST_CASE("subdirect and composition") {
    CHECK(is_subdirect(Relation::binary(2, 2, {{0, 0}, {1, 1}})));
    CHECK_FALSE(is_subdirect(Relation::binary(2, 2, {{0, 0}, {0, 1}})));
    CHECK(is_subdirect(Relation::full({2, 3})));

    auto r = Relation::binary(2, 2, {{0, 1}, {1, 0}});
    CHECK(compose(Relation::identity(2), r) == r);
    CHECK(iterate(r, 2) == Relation::identity(2));
    auto a = Relation::binary(3, 3, {{0, 0}});
    auto b = Relation::binary(3, 3, {{1, 1}});
    CHECK(compose(b, a).empty());
}

TEST_CASE("composition is associative") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto random_rel = [&] {
            std::vector<std::pair<Element, Element>> p;
            for (Element i = 0; i < 3; ++i)
                for (Element j = 0; j < 3; ++j)
                    if (rng() % 3 == 0) p.emplace_back(i, j);
            return Relation::binary(3, 3, p);
        };
        auto r = random_rel(), s = random_rel(), t = random_rel();
        CHECK(compose(t, compose(s, r)) == compose(compose(t, s), r));
    }
}

TEST_CASE("neighborhoods") {
    auto r = Relation::binary(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    CHECK(plus_neighborhood(r, {}).empty());
    CHECK(plus_neighborhood(r, {0}) == ElementSet{0, 1});
    CHECK(common_plus_neighborhood(r, {0, 1}) == ElementSet{1});
    CHECK(minus_neighborhood(r, {0}) == ElementSet{0});
    CHECK(plus_neighborhood(r, {0, 1}) == ElementSet{0, 1});
}

TEST_CASE("linkedness") {
    CHECK(is_linked(Relation::binary(2, 2, {{0, 0}, {0, 1}, {1, 1}})).first);
    CHECK_FALSE(is_linked(Relation::binary(2, 2, {{0, 0}, {1, 1}})).first);
    CHECK(is_linked(Relation::full({2, 3})).first);
    CHECK_FALSE(is_linked(Relation::binary(2, 2, {})).first);

    // union-find oracle on random relations
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t n = 1 + rng() % 6, m = 1 + rng() % 6;
        std::vector<std::pair<Element, Element>> p;
        for (Element i = 0; i < n; ++i)
            for (Element j = 0; j < m; ++j)
                if (rng() % 4 == 0) p.emplace_back(i, j);
        auto r = Relation::binary(n, m, p);
        std::vector<std::size_t> parent(n + m);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            return parent[v] == v ? v : parent[v] = find(parent[v]);
        };
        std::vector<bool> used(n + m, false);
        for (auto [a, b] : p) {
            parent[find(a)] = find(n + b);
            used[a] = used[n + b] = true;
        }
        std::set<std::size_t> roots;
        for (std::size_t v = 0; v < n + m; ++v)
            if (used[v]) roots.insert(find(v));
        auto [linked, ls] = is_linked(r);
        CHECK(linked == (roots.size() == 1));
        CHECK(static_cast<std::size_t>(ls.component_count) == roots.size());
        if (linked && !p.empty()) {
            auto [u, w] = p.front();
            auto chain = ls.chain({false, u}, {false, p.back().first});
            REQUIRE_FALSE(chain.empty());
            for (std::size_t i = 1; i < chain.size(); ++i) {
                auto a = chain[i - 1], b = chain[i];
                CHECK(a.right != b.right);
                Tuple t = a.right ? Tuple{b.element, a.element} : Tuple{a.element, b.element};
                CHECK(r.contains(t));
            }
            (void)w;
        }
    }
}

TEST_CASE("cyclic relations") {
    Tuple c{1, 1, 1};
    CHECK(shift_orbit(c).size() == 1);
    Tuple t{0, 1, 1};
    auto orb = Relation::uniform(2, 3, shift_orbit(t));
    CHECK(orb.size() == 3);
    CHECK(is_cyclic_relation(orb));
    CHECK_FALSE(contains_constant(orb));
    auto full = Relation::full({2, 2, 2});
    CHECK(is_cyclic_relation(full));
    CHECK(contains_constant(full));
    Tuple x{0, 1, 2, 2};
    Tuple y = x;
    for (int i = 0; i < 4; ++i) y = cyclic_shift(y);
    CHECK(y == x);
}

TEST_CASE("subuniverses of powers") {
    auto slat = zoo::boolean_semilattice();
    CHECK(is_subuniverse_of_power(slat, Relation::identity(2)));
    CHECK(is_subuniverse_of_power(slat, Relation::binary(2, 2, {{0, 1}})));
    CHECK_FALSE(is_subuniverse_of_power(slat, Relation::binary(2, 2, {{0, 1}, {1, 0}})));
    auto cl = invariant_closure(slat, Relation::binary(2, 2, {{0, 1}, {1, 0}}));
    CHECK(cl.size() == 3);
}
