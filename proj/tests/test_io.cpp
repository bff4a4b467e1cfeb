#include "doctest.h"

#include "qcsp/catalog.hpp"
#include "qcsp/errors.hpp"
#include "qcsp/io.hpp"

#include <filesystem>
#include <random>

using namespace qcsp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() / ("qcsp-io-" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void same_structure(const Structure& a, const Structure& b)
{
    CHECK(a.name() == b.name());
    CHECK(a.labels() == b.labels());
    CHECK(a.signature() == b.signature());
    CHECK(a.same_relations(b));
}

} // namespace

TEST_CASE("structure round trips")
{
    for (const char* n : {"clique(3)", "cycle(7)", "o_t(4,1100)", "b_structure"}) {
        auto s = catalog_get(n).structure();
        auto text = write_structure(s);
        same_structure(parse_structure(text), s);
        CHECK(write_structure(parse_structure(text)) == text);
    }
    auto k2sq = k2_contextual_poly().source;
    same_structure(parse_structure(write_structure(k2sq)), k2sq);
}

TEST_CASE("structure text format")
{
    auto s = parse_structure(R"(# a comment
structure T
domain a b c
relation E 2
(a,b) (b,c)   # trailing comment
(c,a)
relation U 1
(a)
)");
    CHECK(s.name() == "T");
    CHECK(s.size() == 3);
    CHECK(s.relation("E").size() == 3);
    CHECK(s.contains(1, {0}));

    auto bits = parse_structure("domain 0 1\nrelation R 3\n100 010 001\n");
    CHECK(bits.relation(0) == std::set<Tuple>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(write_structure(bits).find("100") != std::string::npos);

    auto nested = parse_structure("domain (0,1) [x,y] z\nrelation E 2\n((0,1),[x,y]) ([x,y],z)\n");
    CHECK(nested.relation(0).size() == 2);

    auto bad = [](const char* text) { CHECK_THROWS_AS(parse_structure(text), ParseError); };
    bad("relation E 2\n");
    bad("domain a b\ndomain a\n");
    bad("domain a a\n");
    bad("domain a b\nrelation E 2\n(a,c)\n");
    bad("domain a b\nrelation E 2\n(a,b,a)\n");
    bad("domain a b\nrelation E 0\n");
    bad("domain a b\nrelation E 2\nrelation E 2\n");
    bad("domain a b\nrelation E 2\n(a,b\n");
    bad("domain a b\ndistinguished a\n");
    bad("domain a b\nfoo\n");
    try {
        parse_structure("domain a b\nrelation E 2\n(a,q)\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find('3') != std::string::npos);
    }
}

TEST_CASE("gadget files and certificate stanzas")
{
    auto g = km_power_gadget(3, 2);
    auto text = write_gadget(g);
    CHECK(text.find("certificate c2 theorem-backed") != std::string::npos);
    auto back = parse_gadget(text);
    same_structure(back.structure, g.structure);
    CHECK(back.distinguished == g.distinguished);
    REQUIRE(back.certificate);
    CHECK(*back.certificate == *g.certificate);

    auto w = parse_gadget("domain a b\nrelation E 2\n(a,b)\ndistinguished a b\n"
                          "certificate c2 witness-refuted\nwitness candidate 0 fails\nend\n");
    REQUIRE(w.certificate);
    CHECK(w.certificate->refuted());
    CHECK(w.certificate->witness == "candidate 0 fails");
    CHECK(parse_gadget(write_gadget(w)).certificate == w.certificate);

    CHECK_THROWS_AS(parse_gadget("domain a b\nrelation E 2\n(a,b)\n"), ParseError);
    CHECK_THROWS_AS(parse_gadget("domain a b\nrelation E 2\ndistinguished a b\ncertificate c2 proven\nend\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_gadget("domain a b\nrelation E 2\ndistinguished a b\ncertificate c2 tree-backed\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_structure("domain a b\nrelation E 2\ncertificate c2 tree-backed\nend\n"), ParseError);
}

TEST_CASE("qfun round trips and strictness")
{
    for (const auto& c : {k2_contextual_poly(), c7_to_c5(), b4_contextual()}) {
        auto text = write_qfun(c.qf);
        auto back = parse_qfun(text);
        CHECK(back == c.qf);
        CHECK(write_qfun(back) == text);
    }
    auto text = write_qfun(k2_contextual_poly().qf);
    CHECK(text.find("1/2") != std::string::npos);

    const std::string ok = "qfun d=1 source=a b target=x y\nproj a x 1\nproj b y 1\n";
    CHECK(parse_qfun(ok).dim == 1);
    auto bad = [](const std::string& t) { CHECK_THROWS_AS(parse_qfun(t), ParseError); };
    bad("proj a x 1\n");
    bad("qfun d=1 source=a b\nproj a x 1\n");
    bad("qfun d=1 source=a b target=x y\nproj a x 1\nproj a x 1\nproj b y 1\n");
    bad("qfun d=1 source=a b target=x y\nproj a z 1\nproj b y 1\n");
    bad("qfun d=2 source=a target=x\nproj a x 1 0 0\n");
    bad("qfun d=1 source=a b target=x y\nproj a x one\nproj b y 1\n");
    bad("qfun d=1 source=a b target=x y\nproj a x 1/0\nproj b y 1\n");
    bad("qfun d=1 source=a b target=x y\nproj a x 1\n");              // b has no PVM
    bad("qfun d=1 source=a b target=x y\nproj a x 1\nproj a y 1\nproj b y 1\n"); // sums to 2
    bad("qfun d=0 source=a target=x\n");
    bad("qfun d=1 source=a a target=x\nproj a x 1\n");
}

TEST_CASE("recipes")
{
    TempDir dir;
    write_file(dir.path / "p3.gadget", write_gadget(path_gadget(3)));
    write_file(dir.path / "r.toml", "# K5 to C5\nmode = \"nonoracular\"\ncomm_gadget = \"catalog:cycle_power_gadget(5)\"\n"
                                    "target = \"catalog:cycle(5)\"\n\n[gadgets]\nE = \"p3.gadget\"\n");
    auto r = read_recipe(dir.path / "r.toml");
    CHECK(r.mode == Mode::NonOracular);
    REQUIRE(r.comm_gadget);
    CHECK(r.comm_gadget->structure.size() == 125);
    REQUIRE(r.target);
    CHECK(r.target->size() == 5);
    CHECK(r.source_signature.size() == 1);
    CHECK(r.gadgets.at("E").structure.size() == 4);

    auto bad = [&](const std::string& t) { CHECK_THROWS_AS(parse_recipe(t, dir.path), ParseError); };
    bad("mode = \"sideways\"\n[gadgets]\nE = \"p3.gadget\"\n");
    bad("mode = \"nonoracular\"\n[gadgets]\nE = \"p3.gadget\"\n");
    bad("[gadgets]\nE = \"missing.gadget\"\n");
    bad("[other]\n");
    bad("[gadgets]\nE = p3.gadget\n");
    bad("colour = \"blue\"\n");
    bad("[gadgets]\nE = \"p3.gadget\"\nE = \"p3.gadget\"\n");
    CHECK(parse_recipe("[gadgets]\nE = \"p3.gadget\"\n", dir.path).mode == Mode::Oracular);
}

TEST_CASE("loading by reference")
{
    TempDir dir;
    write_file(dir.path / "c5.struct", write_structure(cycle(5)));
    CHECK(load_structure("c5.struct", dir.path).same_relations(cycle(5)));
    CHECK(load_structure("catalog:cycle(5)").same_relations(cycle(5)));
    CHECK_THROWS_AS(load_structure("catalog:path_gadget(3)"), InvalidArgument);
    CHECK_THROWS_AS(load_gadget("catalog:cycle(5)"), InvalidArgument);
    CHECK_THROWS_AS(load_structure("nope.struct", dir.path), ParseError);
}

TEST_CASE("json helpers")
{
    auto j = to_json(QMat{{Rational(1, 2), 0}, {0, 1}});
    CHECK(j.dump() == R"([["1/2","0"],["0","1"]])");
    Certificate c{CertificateKind::TheoremBacked, "c2", {"clique-qpol-closure"}, ""};
    auto cj = to_json(c);
    CHECK(cj["kind"] == "theorem-backed");
    CHECK(cj["condition"] == "c2");
    CHECK(cj["tags"].size() == 1);
    Structure k = clique(3);
    CHECK(tuple_json(k, {0, 1}).dump() == R"(["0","1"])");
}
