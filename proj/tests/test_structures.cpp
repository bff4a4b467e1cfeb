#include "doctest.h"
#include "oracles.hpp"

#include "qcsp/errors.hpp"
#include "qcsp/structure.hpp"

#include <random>

using namespace qcsp;

namespace {

Structure single_tuple(Tuple t)
{
    Signature sig;
    sig.add("R", static_cast<int>(t.size()));
    Structure s(sig, 4);
    s.add_tuple(0, t);
    return s;
}

Structure random_structure(std::mt19937_64& rng, std::size_t n, const Signature& sig, int tuples)
{
    Structure s(sig, n);
    std::uniform_int_distribution<int> elem(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<std::size_t> sym(0, sig.size() - 1);
    for (int i = 0; i < tuples; ++i) {
        auto k = sym(rng);
        Tuple t;
        for (int j = 0; j < sig[k].arity; ++j)
            t.push_back(elem(rng));
        s.add_tuple(k, t);
    }
    return s;
}

} // namespace

TEST_CASE("signature and structure validation")
{
    Signature sig;
    sig.add("E", 2);
    CHECK_THROWS_AS(sig.add("E", 3), InvalidArgument);
    CHECK_THROWS_AS(sig.add("F", 0), InvalidArgument);
    Structure s(sig, 3);
    CHECK_THROWS_AS(s.add_tuple(0, {0, 3}), InvalidArgument);
    CHECK_THROWS_AS(s.add_tuple(0, {0}), InvalidArgument);
    CHECK_THROWS_AS(Structure(sig, std::vector<std::string>{"a", "a"}), InvalidArgument);
}

TEST_CASE("direct powers")
{
    CHECK_THROWS_AS(direct_power(clique(3), 0), InvalidArgument);
    auto k31 = direct_power(clique(3), 1);
    CHECK(k31.same_relations(clique(3)));
    CHECK(k31.labels() == clique(3).labels());
    auto k32 = direct_power(clique(3), 2);
    CHECK(k32.size() == 9);
    CHECK(k32.tuple_count() == 36);
    CHECK(k32.label(1) == "(0,1)");

    Limits small;
    small.max_vertices = 100;
    CHECK_THROWS_AS(direct_power(cycle(5), 3, small), CapExceeded);

    SUBCASE("power of power flattens")
    {
        std::mt19937_64 rng(7);
        Signature sig{{"E", 2}, {"T", 3}};
        for (int trial = 0; trial < 6; ++trial) {
            auto a = random_structure(rng, 2 + trial % 2, sig, 3);
            for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {2, 1}, {1, 3}}) {
                auto lhs = direct_power(direct_power(a, n), m);
                auto rhs = direct_power(a, n * m);
                CHECK(lhs.same_relations(rhs));
            }
        }
    }
}

TEST_CASE("products")
{
    auto p = product(clique(2), clique(2));
    CHECK(p.size() == 4);
    CHECK(p.tuple_count() == 4);
    CHECK(p.contains(0, {0, 3}));
    CHECK(p.contains(0, {1, 2}));
    CHECK(product(clique(3), clique(3)).tuple_count() == 36);
    Structure point(Signature{{"E", 2}}, 1);
    CHECK(product(clique(3), point).tuple_count() == 0);
    CHECK_THROWS_AS(product(clique(2), single_tuple({0, 1, 2})), InvalidArgument);
}

TEST_CASE("gaifman graph and distances")
{
    auto g = gaifman(single_tuple({1, 2, 3}));
    CHECK(g.tuple_count() == 6);
    CHECK(gaifman(clique(3)).same_relations(clique(3)));
    auto loop = gaifman(single_tuple({1, 1, 2}));
    CHECK(loop.tuple_count() == 2);
    CHECK(loop.contains(0, {1, 2}));

    CHECK(diameter(cycle(7)) == 3);
    CHECK(distance(cycle(5), 0, 2) == 2);
    Structure two(Signature{{"E", 2}}, 4);
    two.add_tuple(0, {0, 1});
    two.add_tuple(0, {2, 3});
    CHECK_FALSE(diameter(two).has_value());
    CHECK_FALSE(is_connected(two));
    auto u = undirected_reduct(directed_path(2));
    CHECK(u.tuple_count() == 4);
    CHECK_THROWS_AS(undirected_reduct(single_tuple({0, 1, 2})), InvalidArgument);
}

TEST_CASE("homomorphism search matches brute force")
{
    CHECK(hom_enumerate(cycle(5), clique(3)).size() == 30);
    CHECK_FALSE(hom_search(clique(4), clique(3)).has_value());
    Structure point(Signature{{"E", 2}}, 1);
    CHECK(hom_enumerate(point, clique(3)).size() == 3);

    std::mt19937_64 rng(11);
    Signature sig{{"E", 2}, {"T", 3}};
    for (int trial = 0; trial < 60; ++trial) {
        auto x = random_structure(rng, 2 + trial % 4, sig, 2 + trial % 5);
        auto a = random_structure(rng, 2 + trial % 3, sig, 4 + trial % 7);
        auto got = hom_enumerate(x, a);
        auto want = oracle::homs(x, a);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got[i].map == want[i]);
        CHECK(hom_search(x, a).has_value() == !want.empty());
    }
}

TEST_CASE("pins and node budget")
{
    SearchOptions opts;
    opts.pins = {{0, 2}};
    auto all = hom_enumerate(cycle(5), clique(3), opts);
    CHECK(all.size() == 10);
    for (const auto& h : all)
        CHECK(h.map[0] == 2);
    SearchOptions tiny;
    tiny.node_limit = 3;
    CHECK_THROWS_AS(hom_enumerate(cycle(7), clique(3), tiny), CapExceeded);
}

TEST_CASE("homomorphism sets are closed under target automorphisms")
{
    auto homs = hom_enumerate(cycle(5), clique(3));
    std::set<std::vector<int>> set;
    for (const auto& h : homs)
        set.insert(h.map);
    for (const auto& sigma : hom_enumerate(clique(3), clique(3)))
        for (const auto& h : homs) {
            std::vector<int> g;
            for (int v : h.map)
                g.push_back(sigma.map[static_cast<std::size_t>(v)]);
            CHECK(set.count(g));
        }
}

TEST_CASE("polymorphisms of K3")
{
    CHECK(polymorphisms(clique(3), 1).size() == 6);
    auto binary = polymorphisms(clique(3), 2);
    CHECK(binary.size() == 12);
    for (const auto& p : binary) {
        // each is a permutation composed with a projection
        bool first = true, second = true;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                int v = p.map[static_cast<std::size_t>(3 * a + b)];
                first = first && v == p.map[static_cast<std::size_t>(3 * a)];
                second = second && v == p.map[static_cast<std::size_t>(b)];
            }
        CHECK((first || second));
    }
}

TEST_CASE("cores")
{
    auto k3 = core(clique(3));
    CHECK(k3.core.size() == 3);
    Structure c4(Signature{{"E", 2}}, 4);
    for (int i = 0; i < 4; ++i) {
        c4.add_tuple(0, {i, (i + 1) % 4});
        c4.add_tuple(0, {(i + 1) % 4, i});
    }
    auto c = core(c4);
    CHECK(c.core.same_relations(clique(2)));
    CHECK(c.elements == std::vector<int>{0, 1});
    CHECK(is_homomorphism(c4, c.core, c.retraction.map));
    for (std::size_t i = 0; i < c.elements.size(); ++i)
        CHECK(c.retraction.map[static_cast<std::size_t>(c.elements[i])] == static_cast<int>(i));
    CHECK(is_core(cycle(5)));
    CHECK(core(cycle(5)).core.size() == 5);
    CHECK(hom_enumerate(cycle(5), cycle(5)).size() == 10);
    CHECK_FALSE(is_core(c4));

    std::mt19937_64 rng(3);
    Signature sig{{"E", 2}};
    for (int trial = 0; trial < 15; ++trial) {
        auto x = random_structure(rng, 4 + trial % 3, sig, 5 + trial % 4);
        auto r = core(x);
        for (const auto& e : oracle::homs(r.core, r.core)) {
            std::set<int> image(e.begin(), e.end());
            CHECK(image.size() == r.core.size());
        }
        CHECK(oracle::has_hom(x, r.core));
    }
    Limits lim;
    CHECK_THROWS_AS(core(cycle(9), lim), CapExceeded);
}

TEST_CASE("with_relation and trees")
{
    Structure dom(Signature{{"E", 2}}, 3);
    std::set<Tuple> distinct;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                if (a != b && b != c && a != c)
                    distinct.insert({a, b, c});
    CHECK(with_relation(dom, 3, distinct).tuple_count() == 6);
    CHECK(with_relation(dom, 2, {}).tuple_count() == 0);
    CHECK_THROWS_AS(with_relation(dom, 2, {{0, 1}, {0, 1, 2}}), InvalidArgument);

    CHECK(is_tree(directed_path(3)));
    CHECK_FALSE(is_tree(cycle(5)));
    CHECK(is_tree(single_tuple({1, 2, 3})));
    CHECK_FALSE(is_tree(single_tuple({1, 1, 2})));
    CHECK_FALSE(is_tree(clique(2)));
}

TEST_CASE("pp-formulas and gadgets agree")
{
    PPFormula phi;
    phi.signature = Signature{{"E", 2}};
    phi.free = {"x", "y"};
    phi.bound = {"z"};
    phi.atoms = {{"E", {"x", "z"}}, {"E", {"z", "y"}}};
    auto g = pp_to_gadget(phi);
    CHECK(g.structure.size() == 3);
    CHECK(g.distinguished == std::vector<int>{0, 1});

    PPFormula bad = phi;
    bad.bound = {"x"};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);

    // the path of length 3 defines disequality inside C5
    auto path = directed_path(3);
    auto defined = restriction_set(path, cycle(5), {0, 3});
    std::set<Tuple> neq;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            if (a != b)
                neq.insert({a, b});
    CHECK(defined == neq);

    std::mt19937_64 rng(5);
    Signature sig{{"E", 2}, {"U", 1}};
    const std::vector<std::string> names{"a", "b", "c", "d"};
    for (int trial = 0; trial < 40; ++trial) {
        PPFormula f;
        f.signature = sig;
        std::size_t nvars = 2 + static_cast<std::size_t>(trial % 3);
        std::size_t nfree = 1 + static_cast<std::size_t>(trial % 2);
        for (std::size_t i = 0; i < nvars; ++i)
            (i < nfree ? f.free : f.bound).push_back(names[i]);
        std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
        for (int k = 0; k < 3; ++k) {
            if (rng() % 3 == 0)
                f.atoms.push_back({"U", {names[var(rng)]}});
            else
                f.atoms.push_back({"E", {names[var(rng)], names[var(rng)]}});
        }
        auto a = random_structure(rng, 2 + trial % 2, sig, 5);
        auto gadget = pp_to_gadget(f);
        CHECK(restriction_set(gadget.structure, a, gadget.distinguished) == pp_relation(f, a));
        CHECK(oracle::restrictions(gadget.structure, a, gadget.distinguished) == pp_relation(f, a));
    }
}

TEST_CASE("one-tuple structure")
{
    auto r = one_tuple_structure("R", 3);
    CHECK(r.size() == 3);
    CHECK(r.contains(0, {0, 1, 2}));
}
