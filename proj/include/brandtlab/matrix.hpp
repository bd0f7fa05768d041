#ifndef BRANDTLAB_MATRIX_HPP
#define BRANDTLAB_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace brandtlab {

/// Dense row-major matrix. Small sizes only; no expression templates.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) fail(ErrorKind::invalid_argument, "ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }
    std::vector<T> col(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail(ErrorKind::invalid_argument, "matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::invalid_argument, "matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::invalid_argument, "matrix difference shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;
using SmallIntMatrix = Matrix<long long>;

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
    Matrix<To> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = To(m(r, c));
    return out;
}

inline SmallIntMatrix to_small(const IntMatrix& m) {
    SmallIntMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_long(m(r, c));
    return out;
}

inline RatMatrix inverse(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) fail(ErrorKind::invalid_argument, "inverse of a non-square matrix");
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) fail(ErrorKind::rank_deficient, "singular matrix");
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rational f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline Rational determinant(RatMatrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) fail(ErrorKind::invalid_argument, "determinant of a non-square matrix");
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Rank over Q by fraction-free (Bareiss) elimination. Every intermediate
/// division is exact, so the computation stays in Z.
template <class T>
std::size_t exact_rank(const Matrix<T>& input) {
    IntMatrix a(input.rows(), input.cols());
    for (std::size_t r = 0; r < input.rows(); ++r)
        for (std::size_t c = 0; c < input.cols(); ++c) {
            if constexpr (std::is_integral_v<T>)
                a(r, c) = Int(static_cast<long>(input(r, c)));
            else
                a(r, c) = Int(input(r, c));
        }

    const std::size_t rows = a.rows(), cols = a.cols();
    Int prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        a.swap_rows(p, rank);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Int v = a(rank, c) * a(r, j) - a(r, c) * a(rank, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(r, j) = v;
            }
            a(r, c) = 0;
        }
        prev = a(rank, c);
        ++rank;
    }
    return rank;
}

namespace detail {
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
} // namespace detail

/// Row Hermite normal form: upper triangular, positive pivots, entries above a
/// pivot reduced into [0, pivot). Zero rows are dropped, so the row count of
/// the result is the rank.
inline IntMatrix hermite_normal_form(IntMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        bool has_pivot = false;
        for (;;) {
            std::size_t best = rows;
            for (std::size_t q = r; q < rows; ++q) {
                if (a(q, c) == 0) continue;
                if (best == rows || abs(a(q, c)) < abs(a(best, c))) best = q;
            }
            if (best == rows) break;
            has_pivot = true;
            a.swap_rows(best, r);
            bool clean = true;
            for (std::size_t q = r + 1; q < rows; ++q) {
                if (a(q, c) == 0) continue;
                Int f = detail::floor_div(a(q, c), a(r, c));
                for (std::size_t j = c; j < cols; ++j) a(q, j) -= f * a(r, j);
                if (a(q, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (!has_pivot) continue;
        if (a(r, c) < 0)
            for (std::size_t j = c; j < cols; ++j) a(r, j) = -a(r, j);
        for (std::size_t q = 0; q < r; ++q) {
            Int f = detail::floor_div(a(q, c), a(r, c));
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) a(q, j) -= f * a(r, j);
        }
        ++r;
    }
    IntMatrix out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
    return out;
}

/// LLL (delta = 3/4) on a positive definite integral Gram matrix. Returns the
/// unimodular U whose rows express the reduced basis in the input basis, so
/// the reduced Gram matrix is U * gram * U^T.
inline IntMatrix lll_transform(const IntMatrix& gram) {
    const std::size_t n = gram.rows();
    IntMatrix g = gram;
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;

    RatMatrix mu(n, n);
    std::vector<Rational> b(n);
    auto gso = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational s = g(i, j);
                for (std::size_t l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * b[l];
                mu(i, j) = s / b[j];
            }
            Rational s = g(i, i);
            for (std::size_t l = 0; l < i; ++l) s -= mu(i, l) * mu(i, l) * b[l];
            if (s <= 0) fail(ErrorKind::precondition, "LLL needs a positive definite Gram matrix");
            b[i] = s;
        }
    };
    // b_k <- b_k - f * b_j
    auto reduce = [&](std::size_t k, std::size_t j, const Int& f) {
        for (std::size_t c = 0; c < n; ++c) u(k, c) -= f * u(j, c);
        for (std::size_t c = 0; c < n; ++c) g(k, c) -= f * g(j, c);
        for (std::size_t r = 0; r < n; ++r) g(r, k) -= f * g(r, j);
    };
    auto swap = [&](std::size_t k) {
        u.swap_rows(k, k - 1);
        g.swap_rows(k, k - 1);
        for (std::size_t r = 0; r < n; ++r) std::swap(g(r, k), g(r, k - 1));
    };

    const Rational delta(3, 4);
    std::size_t k = 1;
    gso();
    while (k < n) {
        for (std::size_t jj = k; jj-- > 0;) {
            Rational m = mu(k, jj);
            Int f;
            Rational shifted = m + Rational(1, 2);
            mpz_fdiv_q(f.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
            if (f != 0) {
                reduce(k, jj, f);
                gso();
            }
        }
        if (b[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * b[k - 1]) {
            swap(k);
            gso();
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            ++k;
        }
    }
    return u;
}

} // namespace brandtlab

#endif // BRANDTLAB_MATRIX_HPP
