#include "qcsp/qmat.hpp"

#include "qcsp/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qcsp {

Rational make_rational(long numerator, long denominator)
{
    if (denominator == 0)
        throw InvalidArgument("zero denominator");
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
}

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not an exact rational: '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    mpz_class p(n), q{std::string(den)};
    if (q == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

QMat::QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMat::QMat(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw InvalidArgument("ragged matrix literal");
        for (const auto& x : row) {
            data_.push_back(x);
            data_.back().canonicalize();
        }
    }
}

QMat QMat::identity(std::size_t n)
{
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QMat QMat::column(const std::vector<Rational>& entries)
{
    QMat m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, 0) = entries[i];
    return m;
}

bool QMat::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool QMat::is_symmetric() const
{
    if (!is_square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

QMat QMat::transpose() const
{
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

QMat& QMat::operator+=(const QMat& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidArgument("matrix sum: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] += other.data_[k];
    return *this;
}

QMat& QMat::operator-=(const QMat& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidArgument("matrix difference: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] -= other.data_[k];
    return *this;
}

QMat& QMat::operator*=(const Rational& scalar)
{
    for (auto& x : data_)
        x *= scalar;
    return *this;
}

QMat operator*(const QMat& lhs, const QMat& rhs)
{
    if (lhs.cols_ != rhs.rows_)
        throw InvalidArgument("matrix product: dimension mismatch");
    QMat out(lhs.rows_, rhs.cols_);
    Rational term;
    for (std::size_t i = 0; i < lhs.rows_; ++i) {
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const Rational& a = lhs(i, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Rational& b = rhs(k, j);
                if (sgn(b) == 0)
                    continue;
                term = a * b;
                out(i, j) += term;
            }
        }
    }
    return out;
}

bool operator==(const QMat& lhs, const QMat& rhs)
{
    return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.data_ == rhs.data_;
}

QMat QMat::rref(std::vector<std::size_t>* pivots) const
{
    QMat m = *this;
    if (pivots)
        pivots->clear();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t pivot = row;
        while (pivot < rows_ && sgn(m(pivot, col)) == 0)
            ++pivot;
        if (pivot == rows_)
            continue;
        if (pivot != row)
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(m(pivot, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < cols_; ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || sgn(m(i, col)) == 0)
                continue;
            Rational f = m(i, col);
            for (std::size_t j = col; j < cols_; ++j)
                m(i, j) -= f * m(row, j);
        }
        if (pivots)
            pivots->push_back(col);
        ++row;
    }
    return m;
}

std::size_t QMat::rank() const
{
    std::vector<std::size_t> pivots;
    rref(&pivots);
    return pivots.size();
}

std::vector<QMat> QMat::column_space_basis() const
{
    std::vector<std::size_t> pivots;
    rref(&pivots);
    std::vector<QMat> basis;
    for (std::size_t c : pivots) {
        QMat v(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i)
            v(i, 0) = (*this)(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rational QMat::trace() const
{
    Rational t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

std::string QMat::to_string(std::string_view row_sep) const
{
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i)
            out << row_sep;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j)
                out << ' ';
            out << (*this)(i, j).get_str();
        }
    }
    out << ']';
    return out.str();
}

QMat kron(const QMat& lhs, const QMat& rhs)
{
    QMat out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
            const Rational& a = lhs(i, j);
            if (sgn(a) == 0)
                continue;
            for (std::size_t k = 0; k < rhs.rows(); ++k)
                for (std::size_t l = 0; l < rhs.cols(); ++l)
                    out(i * rhs.rows() + k, j * rhs.cols() + l) = a * rhs(k, l);
        }
    return out;
}

QMat direct_sum(const QMat& lhs, const QMat& rhs)
{
    QMat out(lhs.rows() + rhs.rows(), lhs.cols() + rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            out(i, j) = lhs(i, j);
    for (std::size_t i = 0; i < rhs.rows(); ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j)
            out(lhs.rows() + i, lhs.cols() + j) = rhs(i, j);
    return out;
}

QMat commutator(const QMat& lhs, const QMat& rhs)
{
    if (!lhs.is_square() || lhs.rows() != rhs.rows() || !rhs.is_square())
        throw InvalidArgument("commutator: dimension mismatch");
    return lhs * rhs - rhs * lhs;
}

bool is_projector(const QMat& m)
{
    if (!m.is_square())
        throw InvalidArgument("is_projector: matrix is not square");
    return m.is_symmetric() && m * m == m;
}

bool is_pvm(const std::vector<QMat>& projectors)
{
    if (projectors.empty())
        return false;
    const std::size_t d = projectors.front().rows();
    for (const auto& p : projectors)
        if (!p.is_square() || p.rows() != d)
            throw InvalidArgument("is_pvm: dimension mismatch");
    QMat sum(d, d);
    for (const auto& p : projectors) {
        if (!is_projector(p))
            return false;
        sum += p;
    }
    if (sum != QMat::identity(d))
        return false;
    for (std::size_t i = 0; i < projectors.size(); ++i)
        for (std::size_t j = i + 1; j < projectors.size(); ++j)
            if (!(projectors[i] * projectors[j]).is_zero())
                return false;
    return true;
}

Rational dot(const QMat& u, const QMat& v)
{
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
        throw InvalidArgument("dot: expected column vectors of equal length");
    Rational s;
    for (std::size_t i = 0; i < u.rows(); ++i)
        s += u(i, 0) * v(i, 0);
    return s;
}

QMat rank_one_projector(const QMat& v)
{
    Rational n = dot(v, v);
    if (sgn(n) == 0)
        throw InvalidArgument("rank_one_projector: zero vector");
    QMat p = v * v.transpose();
    p *= Rational(1) / n;
    return p;
}

std::vector<QMat> orthogonalize(const std::vector<QMat>& vectors)
{
    std::vector<QMat> out;
    std::vector<Rational> norms;
    for (const auto& v : vectors) {
        QMat w = v;
        for (std::size_t k = 0; k < out.size(); ++k) {
            Rational c = dot(v, out[k]) / norms[k];
            if (sgn(c) != 0)
                w -= out[k] * c;
        }
        if (w.is_zero())
            continue;
        w = normalize_leading(w);
        norms.push_back(dot(w, w));
        out.push_back(std::move(w));
    }
    return out;
}

QMat normalize_leading(const QMat& v)
{
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = 0; j < v.cols(); ++j)
            if (sgn(v(i, j)) != 0)
                return v * (Rational(1) / v(i, j));
    return v;
}

} // namespace qcsp
