#include "doctest.h"
#include "oracles.hpp"

#include "talg/clone.hpp"
#include "talg/zoo.hpp"

#include <set>

using namespace talg;

namespace {

Term x(std::size_t i) { return Term::var(i); }
Term app(const std::string& f, std::vector<Term> c) { return Term::apply(f, std::move(c)); }

std::vector<std::pair<std::size_t, std::vector<Element>>> raw_ops(const FiniteAlgebra& a) {
    std::vector<std::pair<std::size_t, std::vector<Element>>> out;
    for (const auto& op : a.operations()) out.emplace_back(op.arity(), std::vector<Element>(op.table().begin(), op.table().end()));
    return out;
}

} // namespace

TEST_CASE("eval_term basics") {
    auto slat = zoo::boolean_semilattice();
    Tuple abc{1, 0, 1};
    CHECK(eval_term(slat, x(0), abc) == 1);
    Tuple ten{1, 0};
    CHECK(eval_term(slat, app("meet", {x(0), x(1)}), ten) == 0);
    auto z2 = zoo::boolean_affine();
    Tuple t110{1, 1, 0};
    CHECK(eval_term(z2, app("p", {x(0), x(1), x(2)}), t110) == 0);

    CHECK_THROWS_AS(eval_term(slat, app("nope", {x(0)}), abc), InvalidInput);
    CHECK_THROWS_AS(eval_term(slat, x(5), abc), InvalidInput);
}

TEST_CASE("star composition") {
    auto slat = zoo::boolean_semilattice();
    Term m = app("meet", {x(0), x(1)});
    Term t3 = app("meet", {x(0), app("meet", {x(1), x(2)})});
    CHECK(star_compose(m, t3).arity() == 6);
    CHECK(star_compose(x(0), t3) == t3);

    Term mm = star_compose(m, m);
    REQUIRE(mm.arity() == 4);
    Tuple a(4, 0);
    do {
        Element want = a[0] & a[1] & a[2] & a[3];
        CHECK(eval_term(slat, mm, a) == want);
    } while (next_tuple(a, 2));
}

TEST_CASE("star composition diagonal laws") {
    for (const auto& [name, alg] : zoo::taylor_suite()) {
        const auto& op = alg.operations().front();
        Term t1 = app(op.name(), variable_block(0, op.arity()));
        Term t2 = star_compose(t1, t1);
        const std::size_t k = op.arity(), l = op.arity();
        Term s = star_compose(t1, k, t2, k * l);
        const std::size_t inner = k * l;
        Tuple outer(k, 0);
        do {
            Tuple blocks;
            for (Element e : outer) blocks.insert(blocks.end(), inner, e);
            CHECK(eval_term(alg, s, blocks) == op(outer));
        } while (next_tuple(outer, alg.size()));
        Tuple pat(inner, 0);
        do {
            Tuple rep;
            for (std::size_t r = 0; r < k; ++r) rep.insert(rep.end(), pat.begin(), pat.end());
            CHECK(eval_term(alg, s, rep) == eval_term(alg, t2, pat));
        } while (next_tuple(pat, alg.size()));
    }
}

TEST_CASE("subuniverse generation") {
    auto slat = zoo::boolean_semilattice();
    CHECK(generate_subuniverse(slat, {1}) == ElementSet{1});
    CHECK(generate_subuniverse(slat, {0, 1}) == ElementSet{0, 1});
    CHECK(generate_subuniverse(zoo::chain_semilattice(3), {1, 2}) == ElementSet{1, 2});
    CHECK(generate_subuniverse(slat, {}).empty());

    for (const auto& [name, alg] : zoo::taylor_suite()) {
        auto ops = raw_ops(alg);
        for (std::uint32_t mask = 0; mask < (1u << alg.size()); ++mask) {
            ElementSet seed;
            std::set<Element> s;
            for (Element e = 0; e < alg.size(); ++e)
                if (mask >> e & 1) {
                    seed.push_back(e);
                    s.insert(e);
                }
            auto got = generate_subuniverse(alg, seed);
            auto want = oracle::closure(alg.size(), ops, s);
            CHECK(got == ElementSet(want.begin(), want.end()));
            CHECK(generate_subuniverse(alg, got) == got);
            CHECK(is_subset(seed, got));
        }
    }
}

TEST_CASE("products and powers") {
    auto slat = zoo::boolean_semilattice();
    CHECK(power(zoo::boolean_majority(), 3).size() == 8);
    FiniteAlgebra one[] = {slat};
    CHECK(product(one).operations()[0] == slat.operations()[0]);
    auto sq = power(slat, 2);
    // (0,1) -> 1, (1,1) -> 3
    Tuple args{1, 3};
    CHECK(sq.operation("meet")(args) == 1);

    FiniteAlgebra mixed[] = {slat, zoo::boolean_majority()};
    CHECK_THROWS_AS(product(mixed), InvalidInput);
}

TEST_CASE("clone generation") {
    auto proj = generate_clone(zoo::boolean_projections(), {.max_arity = 2});
    CHECK(proj.complete);
    CHECK(proj.of_arity(2).size() == 2);

    auto slat = zoo::boolean_semilattice();
    auto c = generate_clone(slat, {.max_arity = 2});
    CHECK(c.of_arity(1).size() == 1);
    auto bin = c.of_arity(2);
    REQUIRE(bin.size() == 3);
    std::set<std::vector<Element>> tables;
    for (const auto* m : bin) tables.insert(std::vector<Element>(m->table.table().begin(), m->table.table().end()));
    CHECK(tables == std::set<std::vector<Element>>{{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 0, 0, 1}});

    for (const auto& [name, alg] : zoo::taylor_suite()) {
        auto cl = generate_clone(alg, {.max_arity = alg.size() == 2 ? 3u : 2u});
        CHECK(cl.complete);
        for (std::size_t k = 1; k <= cl.max_arity; ++k) {
            auto want = oracle::naive_clone(alg.size(), raw_ops(alg), k);
            std::set<std::vector<Element>> got;
            for (const auto* m : cl.of_arity(k)) {
                got.insert(std::vector<Element>(m->table.table().begin(), m->table.table().end()));
                CHECK(term_table(alg, m->witness, k) == m->table);
            }
            CHECK_MESSAGE(got == want, name << " arity " << k);
        }
    }
}

TEST_CASE("congruences and quotients") {
    for (auto& alg : zoo::idempotent_two_element_algebras()) CHECK(is_simple(alg));
    CHECK(is_simple(zoo::boolean_affine()));

    auto chain = zoo::chain_semilattice(3);
    auto c = Congruence::from_blocks(3, {{0, 1}, {2}});
    CHECK(is_congruence(chain, c));
    auto q = quotient(chain, c);
    CHECK(q.size() == 2);
    CHECK(q.operations()[0] == zoo::boolean_semilattice().operations()[0]);

    CHECK(quotient(chain, Congruence::full(3)).size() == 1);
    CHECK(quotient(chain, Congruence::diagonal(3)).operations()[0] == chain.operations()[0]);

    // brute-force: every partition of a small universe
    for (const auto& [name, alg] : zoo::taylor_suite()) {
        auto got = congruences(alg);
        std::size_t count = 0;
        std::vector<std::uint32_t> blk(alg.size(), 0);
        // all maps to block labels, keep restricted growth ones
        Tuple lab(alg.size(), 0);
        do {
            bool rg = true;
            Element mx = 0;
            for (std::size_t i = 0; i < lab.size() && rg; ++i) {
                if (lab[i] > mx + (i == 0 ? 0 : 1)) rg = false;
                if (i == 0 && lab[0] != 0) rg = false;
                mx = std::max(mx, lab[i]);
            }
            if (!rg) continue;
            bool closed = true;
            for (const auto& op : alg.operations()) {
                Tuple a(op.arity(), 0), b(op.arity(), 0);
                do {
                    do {
                        bool rel = true;
                        for (std::size_t j = 0; j < a.size(); ++j) rel = rel && lab[a[j]] == lab[b[j]];
                        if (rel && lab[op(a)] != lab[op(b)]) closed = false;
                    } while (closed && next_tuple(b, alg.size()));
                } while (closed && next_tuple(a, alg.size()));
            }
            if (closed) ++count;
        } while (next_tuple(lab, alg.size()));
        CHECK_MESSAGE(got.size() == count, name);
        for (const auto& g : got) CHECK(is_congruence(alg, g));
    }
}

TEST_CASE("identities and Taylor terms") {
    CHECK(is_cyclic_op(zoo::boolean_majority().operations()[0]));
    CHECK(is_wnu_op(zoo::boolean_majority().operations()[0]));
    auto z2 = zoo::boolean_affine();
    auto ids = is_taylor_term(z2, app("p", {x(0), x(1), x(2)}));
    REQUIRE(ids);
    CHECK(ids->size() == 3);
    CHECK_FALSE(is_taylor_term(zoo::boolean_projections(), app("proj", {x(0), x(1)})));
    CHECK(check_identity(z2, app("p", {x(0), x(0), x(1)}), x(1)));
    CHECK_FALSE(check_identity(z2, app("p", {x(0), x(1), x(1)}), x(1)));
    for (const auto& [name, alg] : zoo::taylor_suite()) CHECK_MESSAGE(find_taylor_term(alg), name);
    CHECK_FALSE(find_taylor_term(zoo::boolean_projections()));
}

TEST_CASE("universal generator term") {
    auto one = construct_universal_generator_term(zoo::trivial());
    CHECK(one.term.kind() == Term::Kind::Variable);
    std::vector<FiniteAlgebra> algs{zoo::boolean_semilattice(), zoo::chain_semilattice(3), zoo::rock_paper_scissors(),
                                    zoo::median3()};
    for (const auto& alg : algs) {
        auto u = construct_universal_generator_term(alg);
        for (std::uint32_t mask = 1; mask < (1u << alg.size()); ++mask) {
            ElementSet b;
            for (Element e = 0; e < alg.size(); ++e)
                if (mask >> e & 1) b.push_back(e);
            for (Element target : generate_subuniverse(alg, b)) {
                Tuple w = u.witness(b, target);
                REQUIRE(w.size() == u.arity);
                for (Element e : w) CHECK(set_contains(b, e));
                CHECK(eval_term(alg, u.term, w) == target);
            }
        }
    }
}
