#include "doctest.h"

#include "qcsp/catalog.hpp"
#include "qcsp/errors.hpp"
#include "qcsp/gadgets.hpp"
#include "qcsp/qhom.hpp"

using namespace qcsp;

namespace {

const std::set<std::string> kKnownFlags{std::string(flags::kQpolEqQcpol),   std::string(flags::kQnopolEqQcpol),
                                        std::string(flags::kTree),          std::string(flags::kContextualQpol),
                                        std::string(flags::kNoCommGadget), std::string(flags::kCommGadget)};

bool flagged(const CatalogEntry& e, std::string_view f) { return e.flags.count(std::string(f)) > 0; }

} // namespace

TEST_CASE("every fixture loads and candidates verify")
{
    auto names = catalog_fixture_names();
    REQUIRE(names.size() >= 10);
    for (const auto& n : names) {
        CAPTURE(n);
        auto e = catalog_get(n);
        CHECK(e.name == n);
        CHECK_FALSE(e.description.empty());
        for (const auto& f : e.flags)
            CHECK(kKnownFlags.count(f));
        // a flag names the closure result it rests on
        if (flagged(e, flags::kQpolEqQcpol) || flagged(e, flags::kQnopolEqQcpol) || flagged(e, flags::kCommGadget))
            CHECK_FALSE(e.tags.empty());
        if (e.is_candidate()) {
            CHECK(verify(e.candidate()).pass);
            CHECK_FALSE(is_noncontextual(e.candidate().qf));
        }
        if (e.is_gadget() && flagged(e, flags::kTree))
            CHECK(is_tree(e.gadget().structure));
    }
}

TEST_CASE("lookups are deterministic and accept both spellings")
{
    auto a = catalog_get("clique(4)");
    auto b = catalog_get("clique:4");
    CHECK(a.name == b.name);
    CHECK(a.structure().same_relations(b.structure()));
    CHECK(a.flags == b.flags);
    auto c = catalog_get("c7_to_c5");
    auto d = catalog_get("c7_to_c5");
    CHECK(c.candidate().qf == d.candidate().qf);

    CHECK_THROWS_AS(catalog_get("nope"), InvalidArgument);
    CHECK_THROWS_AS(catalog_get("clique(0)"), InvalidArgument);
    CHECK_THROWS_AS(catalog_get("clique(x)"), InvalidArgument);
    CHECK_THROWS_AS(catalog_get("clique(3,4)"), InvalidArgument);
    CHECK_THROWS_AS(catalog_get("o_t(3,10)"), InvalidArgument);
    CHECK_THROWS_AS(catalog_get("cycle_power_gadget(4)"), InvalidArgument);
    CHECK_THROWS_AS(catalog_get("km_power_gadget(2,2)"), InvalidArgument);
}

TEST_CASE("theorem flags on structures")
{
    auto k2 = catalog_get("clique(2)");
    CHECK(flagged(k2, flags::kContextualQpol));
    CHECK(flagged(k2, flags::kNoCommGadget));
    CHECK_FALSE(flagged(k2, flags::kQpolEqQcpol));

    auto k4 = catalog_get("clique(4)");
    CHECK(flagged(k4, flags::kQpolEqQcpol));
    CHECK_FALSE(flagged(k4, flags::kQnopolEqQcpol));

    auto c4 = catalog_get("cycle(4)");
    CHECK(c4.flags.empty());
    for (int m : {3, 5, 7, 9}) {
        auto c = catalog_get("cycle(" + std::to_string(m) + ")");
        CHECK(flagged(c, flags::kQpolEqQcpol));
        CHECK(flagged(c, flags::kQnopolEqQcpol));
    }
    auto o = catalog_get("o_t(3,100)");
    CHECK(flagged(o, flags::kQpolEqQcpol));
    CHECK(flagged(o, flags::kQnopolEqQcpol));
    CHECK(o.structure().relation(0).size() == 3);

    auto b = catalog_get("b_structure");
    CHECK(flagged(b, flags::kContextualQpol));
    CHECK_FALSE(flagged(b, flags::kQpolEqQcpol));
}

TEST_CASE("catalog candidates carry the exact matrices")
{
    auto k2 = k2_contextual_poly();
    CHECK(k2.qf.dim == 2);
    CHECK(k2.qf.source == std::vector<std::string>{"(0,0)", "(0,1)", "(1,0)", "(1,1)"});
    const QMat plus{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
    const QMat minus{{Rational(1, 2), Rational(-1, 2)}, {Rational(-1, 2), Rational(1, 2)}};
    CHECK(k2.qf(0, 0) == QMat{{1, 0}, {0, 0}});
    CHECK(k2.qf(1, 0) == minus);
    CHECK(k2.qf(1, 1) == plus);
    CHECK(k2.qf(2, 0) == plus);
    CHECK(k2.qf(3, 0) == QMat{{0, 0}, {0, 1}});

    auto c = c7_to_c5();
    CHECK(c.qf.dim == 2);
    CHECK(c.mode == Mode::Oracular);
    CHECK(c.target.labels() == std::vector<std::string>{"0", "1", "2", "5", "6"});
    CHECK(c.qf(4, 1) == plus);
    CHECK(c.qf(4, 4) == minus);
    CHECK(c.qf(3, 0) == c.qf(5, 0));

    auto b4 = b4_contextual();
    CHECK(b4.source.size() == 16);
    CHECK(b4.qf.dim == 2);
}

TEST_CASE("catalog gadgets")
{
    auto h = catalog_get("km_power_gadget(3,2)");
    CHECK(flagged(h, flags::kCommGadget));
    CHECK(h.gadget().structure.size() == 9);
    CHECK(check_c2(h.gadget(), clique(3), {}).holds());
    CHECK(check_c1(h.gadget(), clique(3)).holds);

    auto cp = catalog_get("cycle_power_gadget(5)");
    CHECK(cp.gadget().structure.size() == 125);
    CHECK(check_noc2(cp.gadget(), cycle(5), {}).holds());

    auto p = catalog_get("path_gadget(3)");
    CHECK(flagged(p, flags::kTree));
    CHECK(p.gadget().distinguished == std::vector<int>{0, 3});

    auto zero = catalog_get("pp_zero(4)");
    CHECK(zero.gadget().arity() == 1);
    auto templates = catalog_templates();
    CHECK(templates.size() >= 9);
    for (const auto& t : templates)
        CHECK((t.kind == "structure" || t.kind == "gadget" || t.kind == "candidate"));
}
