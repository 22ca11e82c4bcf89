#include "doctest.h"

#include "talg/absorption.hpp"
#include "talg/zoo.hpp"

#include <bit>
#include <set>

using namespace talg;

namespace {
Term x(std::size_t i) { return Term::var(i); }
Term app(const std::string& f, std::vector<Term> c) { return Term::apply(f, std::move(c)); }
} // namespace

TEST_CASE("check_absorption") {
    auto slat = zoo::boolean_semilattice();
    Term m = app("meet", {x(0), x(1)});
    CHECK(check_absorption(slat, {0, 1}, m));
    CHECK(check_absorption(slat, {0}, m));
    CHECK_FALSE(check_absorption(slat, {1}, m));
    CHECK_THROWS_AS(check_absorption(zoo::affine_z3(), {0, 1}, app("p", {x(0), x(1), x(2)})), InvalidInput);
}

TEST_CASE("witness search") {
    auto full = find_absorption_witness(zoo::boolean_majority(), {0, 1});
    REQUIRE(full);
    auto maj = find_absorption_witness(zoo::boolean_majority(), {0});
    REQUIRE(maj);
    CHECK(maj->term == app("m", {x(0), x(1), x(2)}));
    CHECK_FALSE(find_absorption_witness(zoo::boolean_affine(), {0}));
}

TEST_CASE("absorption reports") {
    auto z2 = absorption_report(zoo::boolean_affine());
    CHECK(z2.proper_absorbing.empty());
    CHECK(z2.complete);
    auto slat = absorption_report(zoo::boolean_semilattice());
    REQUIRE(slat.proper_absorbing.size() == 1);
    CHECK(slat.proper_absorbing[0].subuniverse == ElementSet{0});
    CHECK(slat.minimal_absorbing == std::vector<ElementSet>{{0}});
    auto one = absorption_report(zoo::trivial());
    CHECK(one.proper_absorbing.empty());
    CHECK(one.minimal_absorbing == std::vector<ElementSet>{{0}});

    for (const auto& [name, alg] : zoo::taylor_suite()) {
        auto rep = absorption_report(alg);
        for (const auto& w : rep.proper_absorbing) CHECK(check_absorption(alg, w.subuniverse, w.term, w.arity));
        for (const auto& s : rep.minimal_absorbing)
            for (const auto& t : rep.minimal_absorbing) CHECK((s == t || !is_subset(t, s)));
    }
}

TEST_CASE("transitivity and intersection") {
    auto chain = zoo::chain_semilattice(3);
    Term m = app("meet", {x(0), x(1)});
    AbsorptionWitness outer{{0, 1}, m, 2};
    AbsorptionWitness inner{{0}, m, 2};
    auto w = transitivity_compose(chain, inner, outer);
    CHECK(w.arity == 4);
    CHECK(check_absorption(chain, {0}, w.term, w.arity));

    AbsorptionWitness same{{0, 1, 2}, m, 2};
    CHECK(transitivity_compose(chain, same, same).arity == 4);

    AbsorptionWitness bad{{1}, m, 2};
    CHECK_THROWS_AS(transitivity_compose(chain, bad, outer), InvalidInput);

    auto med = zoo::median3();
    Term mt = app("m", {x(0), x(1), x(2)});
    AbsorptionWitness b{{0, 1}, mt, 3}, c{{1, 2}, mt, 3};
    auto both = intersection_witness(med, b, c);
    CHECK(both.subuniverse == ElementSet{1});
    CHECK(check_absorption(med, {1}, both.term, both.arity));
}

TEST_CASE("neighborhoods transfer absorption") {
    for (const auto& [name, alg] : zoo::taylor_suite()) {
        auto rep = absorption_report(alg);
        const std::uint32_t n = alg.size();
        // all subdirect invariant binary relations, via closures of small seeds
        std::set<std::vector<Tuple>> seen;
        for (std::uint32_t mask = 1; mask < (1u << (n * n)); ++mask) {
            if (std::popcount(mask) > 3) continue;
            std::vector<std::pair<Element, Element>> p;
            for (std::uint32_t i = 0; i < n * n; ++i)
                if (mask >> i & 1) p.emplace_back(i / n, i % n);
            auto r = invariant_closure(alg, Relation::binary(n, n, p));
            if (!is_subdirect(r) || !seen.insert(r.tuples()).second) continue;
            for (const auto& w : rep.proper_absorbing) {
                CHECK(check_absorption(alg, plus_neighborhood(r, w.subuniverse), w.term, w.arity));
                CHECK(check_absorption(alg, minus_neighborhood(r, w.subuniverse), w.term, w.arity));
            }
        }
    }
}

TEST_CASE("spreading terms") {
    auto one = construct_spreading_term(zoo::trivial(), app("f", {x(0), x(1)}));
    CHECK(one.arity == 1);

    auto z2 = zoo::boolean_affine();
    Term p = app("p", {x(0), x(1), x(2)});
    auto s = construct_spreading_term(z2, p);
    CHECK(s.arity == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (Element b = 0; b < 2; ++b) CHECK(pinned_values(z2.operations()[0], b, i) == ElementSet{0, 1});

    CHECK_THROWS_AS(construct_spreading_term(zoo::boolean_majority(), app("m", {x(0), x(1), x(2)})), InvalidInput);

    auto z3 = zoo::affine_z3();
    auto s3 = construct_spreading_term(z3, p);
    auto table = term_table(z3, s3.term, s3.arity);
    for (std::size_t i = 0; i < s3.arity; ++i)
        for (Element b = 0; b < 3; ++b) CHECK(pinned_values(table, b, i) == ElementSet{0, 1, 2});

    auto rps = zoo::rock_paper_scissors();
    auto taylor = find_taylor_term(rps);
    REQUIRE(taylor);
    SpreadingOptions opts;
    opts.budget.clone.max_arity = 3;
    auto sr = construct_spreading_term(rps, *taylor, opts);
    CHECK(sr.stages == 2);
    CHECK(sr.stages >= 1);
    CHECK(sr.dag_checks > 0);
    if (sr.arity <= 10) {
        auto t = term_table(rps, sr.term, sr.arity);
        for (std::size_t i = 0; i < sr.arity; ++i)
            for (Element b = 0; b < 3; ++b) CHECK(pinned_values(t, b, i) == ElementSet{0, 1, 2});
    }
}

TEST_CASE("absorption theorem check") {
    auto slat = zoo::boolean_semilattice();
    auto r = Relation::binary(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    auto v = absorption_theorem_check(slat, slat, r);
    REQUIRE(std::holds_alternative<verdict::AbsorptionInA>(v));
    CHECK(std::get<verdict::AbsorptionInA>(v).witness.subuniverse == ElementSet{0});

    auto z2 = zoo::boolean_affine();
    CHECK(std::holds_alternative<verdict::Full>(absorption_theorem_check(z2, z2, Relation::full({2, 2}))));
    CHECK_THROWS_AS(absorption_theorem_check(z2, z2, Relation::identity(2)), InvalidInput);
    CHECK_THROWS_AS(absorption_theorem_check(slat, slat, Relation::binary(2, 2, {{0, 1}})), InvalidInput);
}
