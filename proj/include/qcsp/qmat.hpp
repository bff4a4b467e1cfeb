#ifndef QCSP_QMAT_HPP
#define QCSP_QMAT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace qcsp {

using Rational = mpq_class;

/// p/q in lowest terms.
Rational make_rational(long numerator, long denominator = 1);

/// Parses an integer or `p/q`. Anything else (decimals, `i`, radicals) is rejected.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Dense matrix of exact rationals.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols);
    QMat(std::initializer_list<std::initializer_list<Rational>> rows);

    static QMat zero(std::size_t rows, std::size_t cols) { return QMat(rows, cols); }
    static QMat zero(std::size_t n) { return QMat(n, n); }
    static QMat identity(std::size_t n);
    /// Column vector.
    static QMat column(const std::vector<Rational>& entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_symmetric() const;
    QMat transpose() const;

    QMat& operator+=(const QMat& other);
    QMat& operator-=(const QMat& other);
    QMat& operator*=(const Rational& scalar);

    friend QMat operator+(QMat lhs, const QMat& rhs) { return lhs += rhs; }
    friend QMat operator-(QMat lhs, const QMat& rhs) { return lhs -= rhs; }
    friend QMat operator*(QMat lhs, const Rational& s) { return lhs *= s; }
    friend QMat operator*(const Rational& s, QMat rhs) { return rhs *= s; }
    friend QMat operator*(const QMat& lhs, const QMat& rhs);
    friend QMat operator-(QMat m) { return m *= Rational(-1); }

    friend bool operator==(const QMat& lhs, const QMat& rhs);

    /// Reduced row echelon form; pivot columns are written to `pivots` when given.
    QMat rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;
    /// Linearly independent columns spanning the column space (taken from the matrix itself).
    std::vector<QMat> column_space_basis() const;
    Rational trace() const;

    /// Row-major entries separated by spaces, rows by `row_sep`.
    std::string to_string(std::string_view row_sep = "; ") const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

QMat kron(const QMat& lhs, const QMat& rhs);
QMat direct_sum(const QMat& lhs, const QMat& rhs);
QMat commutator(const QMat& lhs, const QMat& rhs);

/// Exact test of P^2 = P = P^T. Throws InvalidArgument on non-square input.
bool is_projector(const QMat& m);

/// Each member is a projector and they sum to the identity. Pairwise orthogonality
/// is implied; it is asserted as well. Throws InvalidArgument on dimension mismatch.
bool is_pvm(const std::vector<QMat>& projectors);

/// Euclidean inner product of two column vectors.
Rational dot(const QMat& u, const QMat& v);

/// Rank-one projector v v^T / <v,v> onto a nonzero column vector.
QMat rank_one_projector(const QMat& v);

/// Gram-Schmidt without normalisation; stays over the rationals. Zero
/// vectors produced by dependent inputs are dropped.
std::vector<QMat> orthogonalize(const std::vector<QMat>& vectors);

/// Rescales so that the first nonzero entry equals 1.
QMat normalize_leading(const QMat& v);

} // namespace qcsp

#endif
