// Naive matrix arithmetic and brute-force quantum-homomorphism checks used as
// independent references for the library.
#pragma once

#include "qcsp/qhom.hpp"
#include "qcsp/qmat.hpp"

#include <gmpxx.h>

#include <random>
#include <vector>

namespace qoracle {

using Mat = std::vector<std::vector<mpq_class>>;

inline Mat from(const qcsp::QMat& m)
{
    Mat out(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

inline Mat identity(std::size_t n)
{
    Mat out(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        out[i][i] = 1;
    return out;
}

inline Mat mul(const Mat& a, const Mat& b)
{
    Mat out(a.size(), std::vector<mpq_class>(b.empty() ? 0 : b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < out[i].size(); ++j) {
            mpq_class s = 0;
            for (std::size_t k = 0; k < b.size(); ++k)
                s += a[i][k] * b[k][j];
            out[i][j] = s;
        }
    return out;
}

inline Mat sub(const Mat& a, const Mat& b)
{
    Mat out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            out[i][j] -= b[i][j];
    return out;
}

inline Mat add(const Mat& a, const Mat& b)
{
    Mat out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            out[i][j] += b[i][j];
    return out;
}

inline Mat kron(const Mat& a, const Mat& b)
{
    const std::size_t p = b.size(), q = b.empty() ? 0 : b[0].size();
    Mat out(a.size() * p, std::vector<mpq_class>((a.empty() ? 0 : a[0].size()) * q));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t l = 0; l < q; ++l)
                    out[i * p + k][j * q + l] = a[i][j] * b[k][l];
    return out;
}

inline bool is_zero(const Mat& a)
{
    for (const auto& row : a)
        for (const auto& x : row)
            if (x != 0)
                return false;
    return true;
}

inline bool equal(const Mat& a, const qcsp::QMat& b) { return a == from(b); }

// QH1 by enumerating every target tuple (not only the complement of the relation).
inline std::size_t qh1_violations(const qcsp::QHomCandidate& c)
{
    std::size_t count = 0;
    const std::size_t m = c.target.size();
    for (std::size_t k = 0; k < c.source.signature().size(); ++k) {
        const int r = c.source.signature()[k].arity;
        for (const auto& t : c.source.relation(k)) {
            std::vector<int> b(static_cast<std::size_t>(r), 0);
            while (true) {
                if (!c.target.relation(k).count(b)) {
                    Mat p = identity(c.qf.dim);
                    for (int i = 0; i < r; ++i)
                        p = mul(p, from(c.qf(static_cast<std::size_t>(t[static_cast<std::size_t>(i)]),
                                             static_cast<std::size_t>(b[static_cast<std::size_t>(i)]))));
                    if (!is_zero(p))
                        ++count;
                }
                int i = r - 1;
                while (i >= 0 && static_cast<std::size_t>(++b[static_cast<std::size_t>(i)]) == m)
                    b[static_cast<std::size_t>(i--)] = 0;
                if (i < 0)
                    break;
            }
        }
    }
    return count;
}

// Ordered pairs (x, y), x != y, co-occurring in a tuple, with some non-commuting projectors.
inline std::size_t qh2_violations(const qcsp::QHomCandidate& c)
{
    std::set<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < c.source.signature().size(); ++k)
        for (const auto& t : c.source.relation(k))
            for (int x : t)
                for (int y : t)
                    if (x != y)
                        edges.emplace(x, y);
    std::size_t count = 0;
    for (auto [x, y] : edges)
        for (std::size_t b = 0; b < c.target.size(); ++b)
            for (std::size_t b2 = 0; b2 < c.target.size(); ++b2) {
                Mat p = from(c.qf(static_cast<std::size_t>(x), b));
                Mat q = from(c.qf(static_cast<std::size_t>(y), b2));
                if (!is_zero(sub(mul(p, q), mul(q, p))))
                    ++count;
            }
    return count;
}

inline bool passes(const qcsp::QHomCandidate& c)
{
    return qh1_violations(c) == 0 && (c.mode == qcsp::Mode::NonOracular || qh2_violations(c) == 0);
}

// Householder reflection I - 2 v v^T / <v,v>: a rational orthogonal matrix.
inline qcsp::QMat householder(const std::vector<mpq_class>& v)
{
    const std::size_t n = v.size();
    mpq_class norm = 0;
    for (const auto& x : v)
        norm += x * x;
    qcsp::QMat h = qcsp::QMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) -= 2 * v[i] * v[j] / norm;
    return h;
}

inline qcsp::QMat random_reflection(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<mpq_class> v(n);
    bool nonzero = false;
    while (!nonzero) {
        for (auto& x : v) {
            x = d(rng);
            nonzero = nonzero || x != 0;
        }
    }
    return householder(v);
}

// Random pairwise-orthogonal nonzero rational basis of Q^n.
inline std::vector<qcsp::QMat> random_basis(std::mt19937_64& rng, std::size_t n)
{
    qcsp::QMat h = random_reflection(rng, n);
    std::vector<qcsp::QMat> out;
    std::uniform_int_distribution<int> scale(1, 3);
    for (std::size_t j = 0; j < n; ++j) {
        qcsp::QMat col(n, 1);
        const int k = scale(rng);
        for (std::size_t i = 0; i < n; ++i)
            col(i, 0) = h(i, j) * k;
        out.push_back(col);
    }
    return out;
}

} // namespace qoracle
