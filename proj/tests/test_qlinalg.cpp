#include "doctest.h"
#include "oracles.hpp"
#include "qoracles.hpp"

#include "qcsp/catalog.hpp"
#include "qcsp/errors.hpp"
#include "qcsp/quantum_function.hpp"

#include <random>

using namespace qcsp;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }
QMat half_plus() { return QMat{{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}}; }
QMat half_minus() { return QMat{{r(1, 2), r(-1, 2)}, {r(-1, 2), r(1, 2)}}; }
QMat diag(long a, long b) { return QMat{{r(a), 0}, {0, r(b)}}; }

std::vector<std::string> labels(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::to_string(i));
    return out;
}

std::vector<int> random_map(std::mt19937_64& rng, std::size_t n, std::size_t m)
{
    std::uniform_int_distribution<int> d(0, static_cast<int>(m) - 1);
    std::vector<int> f(n);
    for (auto& x : f)
        x = d(rng);
    return f;
}

QuantumFunction random_closure_element(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t d)
{
    std::vector<std::vector<int>> family;
    for (std::size_t i = 0; i < d; ++i)
        family.push_back(random_map(rng, n, m));
    return from_classical_family(labels(n), labels(m), family, qoracle::random_basis(rng, d));
}

// Conjugates each source element's PVM by its own reflection; usually contextual.
QuantumFunction random_twisted(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t d)
{
    QuantumFunction q = random_closure_element(rng, n, m, d);
    for (std::size_t a = 0; a < n; ++a) {
        QMat h = qoracle::random_reflection(rng, d);
        for (std::size_t b = 0; b < m; ++b)
            q(a, b) = h * q(a, b) * h;
    }
    return q;
}

bool pvms_ok(const QuantumFunction& q)
{
    for (const auto& row : q.proj)
        if (!is_pvm(row))
            return false;
    return true;
}

} // namespace

TEST_CASE("projector recognition")
{
    CHECK(is_projector(half_plus()));
    CHECK(is_projector(diag(1, 0)));
    CHECK_FALSE(is_projector(QMat{{0, r(1)}, {0, 0}}));
    CHECK_FALSE(is_projector(QMat{{r(2), 0}, {0, 0}}));
    CHECK_THROWS_AS(is_projector(QMat(2, 3)), InvalidArgument);
}

TEST_CASE("pvm recognition")
{
    CHECK(is_pvm({diag(1, 0), diag(0, 1)}));
    CHECK(is_pvm({half_plus(), half_minus()}));
    CHECK(is_pvm({QMat::identity(2), QMat::zero(2)}));
    CHECK_FALSE(is_pvm({QMat::identity(2), QMat::identity(2)}));
    CHECK_FALSE(is_pvm({diag(1, 0), half_plus()}));
    CHECK_THROWS_AS(is_pvm({QMat::identity(2), QMat::identity(3)}), InvalidArgument);
}

TEST_CASE("commutators against naive arithmetic")
{
    // Frozen reference: [diag(1,0), (1/2)J] = (1/2)[[0,1],[-1,0]].
    const QMat expected{{0, r(1, 2)}, {r(-1, 2), 0}};
    auto naive = qoracle::sub(qoracle::mul(qoracle::from(diag(1, 0)), qoracle::from(half_plus())),
                              qoracle::mul(qoracle::from(half_plus()), qoracle::from(diag(1, 0))));
    CHECK(qoracle::equal(naive, expected));
    CHECK(commutator(diag(1, 0), half_plus()) == expected);
    CHECK(commutator(half_plus(), half_plus()).is_zero());
    CHECK(commutator(half_plus(), half_minus()).is_zero());
    CHECK_THROWS_AS(commutator(QMat::identity(2), QMat::identity(3)), InvalidArgument);
}

TEST_CASE("kron, direct sum and products match the naive reference")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> e(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t a_r = 1 + trial % 3, a_c = 1 + (trial / 3) % 3, b_r = 1 + trial % 2, b_c = 2;
        QMat a(a_r, a_c), b(b_r, b_c), c(a_c, 2);
        for (std::size_t i = 0; i < a_r; ++i)
            for (std::size_t j = 0; j < a_c; ++j)
                a(i, j) = r(e(rng), 1 + trial % 4);
        for (std::size_t i = 0; i < b_r; ++i)
            for (std::size_t j = 0; j < b_c; ++j)
                b(i, j) = r(e(rng), 3);
        for (std::size_t i = 0; i < a_c; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                c(i, j) = r(e(rng));
        CHECK(qoracle::equal(qoracle::kron(qoracle::from(a), qoracle::from(b)), kron(a, b)));
        CHECK(qoracle::equal(qoracle::mul(qoracle::from(a), qoracle::from(c)), a * c));
        QMat s = direct_sum(a, b);
        CHECK(s.rows() == a_r + b_r);
        CHECK(s.cols() == a_c + b_c);
        CHECK(s(a_r, a_c) == b(0, 0));
        CHECK(s(0, a_c) == 0);
    }
}

TEST_CASE("rank and column space")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto basis = qoracle::random_basis(rng, 4);
        QMat p = QMat::zero(4);
        std::size_t k = 1 + static_cast<std::size_t>(trial % 4);
        for (std::size_t i = 0; i < k; ++i)
            p += rank_one_projector(basis[i]);
        CHECK(is_projector(p));
        CHECK(p.rank() == k);
        CHECK(p.trace() == Rational(static_cast<long>(k)));
        auto cols = p.column_space_basis();
        CHECK(cols.size() == k);
        for (const auto& v : cols)
            CHECK((p * v) == v);
    }
    CHECK(QMat::zero(3).rank() == 0);
    CHECK(kron(diag(1, 0), QMat::identity(3)).rank() == 3);
}

TEST_CASE("orthogonalize drops dependent vectors")
{
    auto vs = orthogonalize({QMat::column({1, 1, 0}), QMat::column({2, 2, 0}), QMat::column({1, 0, 0})});
    REQUIRE(vs.size() == 2);
    CHECK(dot(vs[0], vs[1]) == 0);
    CHECK(normalize_leading(QMat::column({0, 3, -6})) == QMat::column({0, 1, -2}));
}

TEST_CASE("direct sum of quantum functions")
{
    auto h = QuantumFunction::classical(labels(3), labels(2), {0, 1, 1});
    auto g = QuantumFunction::classical(labels(3), labels(2), {1, 1, 0});
    auto s = direct_sum(h, g);
    CHECK(s.dim == 2);
    CHECK(s(0, 0) == diag(1, 0));
    CHECK(s(1, 1) == diag(1, 1));
    CHECK(s(2, 0) == diag(0, 1));
    CHECK(pvms_ok(s));
    CHECK(s == from_classical_family(labels(3), labels(2), {{0, 1, 1}, {1, 1, 0}}));
    auto bad = QuantumFunction::classical(labels(3), labels(3), {0, 1, 1});
    CHECK_THROWS_AS(direct_sum(h, bad), InvalidArgument);
}

TEST_CASE("tensor of quantum functions")
{
    auto f = QuantumFunction::classical(labels(3), labels(2), {0, 1, 1});
    auto g = QuantumFunction::classical(labels(3), labels(3), {2, 0, 1});
    auto t = tensor(f, g);
    CHECK(t.dim == 1);
    REQUIRE(t.target.size() == 6);
    CHECK(t.target[5] == "(1,2)");
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t b = 0; b < 6; ++b)
            CHECK(t(x, b)(0, 0) == (b == static_cast<std::size_t>(std::vector<int>{0, 1, 1}[x] * 3 +
                                                                 std::vector<int>{2, 0, 1}[x])
                                        ? 1
                                        : 0));

    auto k2 = k2_contextual_poly().qf;
    auto tt = tensor(k2, k2);
    CHECK(tt.dim == 4);
    CHECK(pvms_ok(tt));
    // Frozen reference from 4x4 Kronecker arithmetic: (1/4) times the all-ones matrix.
    QMat quarter(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            quarter(i, j) = r(1, 4);
    CHECK(tt(2, 0) == quarter);
    CHECK(tt(2, 0).rank() == 1);

    Limits small;
    small.max_dimension = 3;
    CHECK_THROWS_AS(tensor(k2, k2, small), CapExceeded);
}

TEST_CASE("composition")
{
    auto g = QuantumFunction::classical(labels(3), labels(4), {3, 0, 2});
    auto f = QuantumFunction::classical(labels(4), labels(2), {1, 1, 0, 0});
    auto fg = compose(f, g);
    CHECK(fg == QuantumFunction::classical(labels(3), labels(2), {0, 1, 0}));
    CHECK_THROWS_AS(compose(g, f), InvalidArgument);

    auto c = c7_to_c5();
    // Endomorphism pair h + g of the labelled 5-cycle, composed with itself.
    QuantumFunction pair(c.target.labels(), c.target.labels(), 2);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b)
            pair(a, b) = c.qf(static_cast<std::size_t>(*c.source.index_of(c.target.label(static_cast<int>(a)))), b);
    auto sq = compose(pair, pair);
    CHECK(sq.dim == 4);
    CHECK(pvms_ok(sq));
    QHomCandidate endo{c.target, c.target, sq, Mode::Oracular};
    CHECK(verify(endo).pass);

    auto id = QuantumFunction::classical(labels(4), labels(4), {0, 1, 2, 3});
    std::mt19937_64 rng(3);
    auto q = random_twisted(rng, 3, 4, 2);
    CHECK(compose(id, q) == q);
}

TEST_CASE("composition is associative")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = random_twisted(rng, 2, 3, 2);
        auto q = trial % 2 ? random_twisted(rng, 3, 2, 2) : random_closure_element(rng, 3, 2, 1);
        auto s = random_closure_element(rng, 2, 3, 2);
        CHECK(compose(compose(s, q), p) == compose(s, compose(q, p)));
    }
}

TEST_CASE("contextuality witnesses")
{
    auto k2 = k2_contextual_poly().qf;
    CHECK_FALSE(is_noncontextual(k2));
    auto first = contextuality_witness(k2);
    REQUIRE(first);
    CHECK(first->a == 0);
    bool found = false;
    for (const auto& w : contextuality_witnesses(k2))
        if (w.a == 0 && w.b == 0 && w.a2 == 2 && w.b2 == 0) {
            found = true;
            const QMat half{{0, r(1, 2)}, {r(-1, 2), 0}};
            CHECK((w.commutator == half || w.commutator == -half));
        }
    CHECK(found);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial)
        CHECK(is_noncontextual(random_closure_element(rng, 4, 3, 3)));
}

TEST_CASE("decomposition of commuting families")
{
    auto s = from_classical_family(labels(3), labels(2), {{0, 1, 1}, {1, 1, 0}});
    auto d = decompose_noncontextual(s);
    REQUIRE(d.components.size() == 2);
    std::multiset<std::vector<int>> comps(d.components.begin(), d.components.end());
    CHECK(comps == std::multiset<std::vector<int>>{{0, 1, 1}, {1, 1, 0}});

    QuantumFunction q(labels(2), labels(2), 2);
    q(0, 0) = half_plus();
    q(0, 1) = half_minus();
    q(1, 0) = half_minus();
    q(1, 1) = half_plus();
    auto dq = decompose_noncontextual(q);
    REQUIRE(dq.basis.size() == 2);
    std::set<std::vector<std::string>> vecs;
    for (const auto& v : dq.basis)
        vecs.insert({to_string(normalize_leading(v)(0, 0)), to_string(normalize_leading(v)(1, 0))});
    CHECK(vecs == std::set<std::vector<std::string>>{{"1", "1"}, {"1", "-1"}});
    CHECK(from_classical_family(labels(2), labels(2), dq) == q);

    CHECK_THROWS_AS(decompose_noncontextual(k2_contextual_poly().qf), PreconditionViolation);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t dim = 1 + static_cast<std::size_t>(trial % 4);
        std::vector<std::vector<int>> family;
        for (std::size_t i = 0; i < dim; ++i)
            family.push_back(random_map(rng, 4, 3));
        auto x = from_classical_family(labels(4), labels(3), family, qoracle::random_basis(rng, dim));
        auto dx = decompose_noncontextual(x);
        CHECK(from_classical_family(labels(4), labels(3), dx) == x);
        CHECK(std::multiset<std::vector<int>>(dx.components.begin(), dx.components.end()) ==
              std::multiset<std::vector<int>>(family.begin(), family.end()));
    }
}

TEST_CASE("classical families and bases")
{
    CHECK(from_classical_family(labels(2), labels(2), {{1, 0}}) ==
          QuantumFunction::classical(labels(2), labels(2), {1, 0}));
    CHECK_THROWS_AS(from_classical_family(labels(2), labels(2), {{1, 0}, {0, 1}},
                                          std::vector<QMat>{QMat::column({1, 1}), QMat::column({1, 0})}),
                    InvalidArgument);

    Structure c5 = cycle(5);
    std::vector<std::vector<int>> autos;
    for (const auto& f : oracle::homs(c5, c5))
        autos.push_back(f);
    REQUIRE(autos.size() == 10);
    auto q = from_classical_family(c5.labels(), c5.labels(), autos);
    CHECK(q.dim == 10);
    for (std::size_t y = 0; y < 5; ++y) {
        QMat sum = QMat::zero(10);
        for (std::size_t x = 0; x < 5; ++x)
            sum += q(x, y);
        CHECK(sum == QMat::identity(10));
    }
}

TEST_CASE("pvm members are pairwise orthogonal")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto q = random_twisted(rng, 3, 3, 3);
        CHECK(is_quantum_function(q));
        for (const auto& row : q.proj)
            for (std::size_t b = 0; b < row.size(); ++b)
                for (std::size_t c = 0; c < row.size(); ++c)
                    if (b != c)
                        CHECK((row[b] * row[c]).is_zero());
    }
}
