#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace liealg {

/// Coordinate vector. Every entry carries the same ring.
using Vector = std::vector<Scalar>;

inline Vector zero_vector(ScalarRing ring, std::size_t n) { return Vector(n, Scalar(ring)); }

inline Vector unit_vector(ScalarRing ring, std::size_t n, std::size_t i) {
    Vector v = zero_vector(ring, n);
    v.at(i) = Scalar(ring, 1);
    return v;
}

inline Vector make_vector(ScalarRing ring, std::initializer_list<long> values) {
    Vector v;
    v.reserve(values.size());
    for (long x : values) v.emplace_back(ring, x);
    return v;
}

inline bool is_zero(const Vector& v) {
    for (const auto& s : v) {
        if (!s.is_zero()) return false;
    }
    return true;
}

inline Vector operator+(Vector a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vector operator-(Vector a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vector operator*(const Scalar& c, Vector v) {
    for (auto& s : v) s *= c;
    return v;
}

/// a += c * b
inline void axpy(Vector& a, const Scalar& c, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!b[i].is_zero()) a[i] += c * b[i];
    }
}

/// Index of the first nonzero entry, if any.
inline std::optional<std::size_t> leading_index(const Vector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) return i;
    }
    return std::nullopt;
}

/**
 * Dense row-major matrix over a single ScalarRing.
 */
class Matrix {
   public:
    Matrix() = default;
    Matrix(ScalarRing ring, std::size_t rows, std::size_t cols)
        : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Scalar(ring)) {}

    Matrix(ScalarRing ring, std::initializer_list<std::initializer_list<long>> rows) : ring_(ring) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionError("ragged matrix literal");
            for (long x : r) entries_.emplace_back(ring, x);
        }
    }

    static Matrix identity(ScalarRing ring, std::size_t n) {
        Matrix m(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(ring, 1);
        return m;
    }

    static Matrix from_rows(ScalarRing ring, std::size_t cols, const std::vector<Vector>& rows) {
        Matrix m(ring, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw DimensionError("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) {
                require_same_ring(ring, rows[i][j].ring());
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    static Matrix from_columns(ScalarRing ring, std::size_t rows, const std::vector<Vector>& cols) {
        return from_rows(ring, rows, cols).transpose();
    }

    /// Single-row matrix.
    static Matrix row_matrix(ScalarRing ring, const Vector& v) { return from_rows(ring, v.size(), {v}); }

    const ScalarRing& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Vector row(std::size_t i) const {
        return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    Vector column(std::size_t j) const {
        Vector v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    std::vector<Vector> row_list() const {
        std::vector<Vector> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    /// Entries in row-major order, viewing the matrix as a vector of length rows*cols.
    const std::vector<Scalar>& flat() const noexcept { return entries_; }

    static Matrix from_flat(ScalarRing ring, std::size_t rows, std::size_t cols, const Vector& flat) {
        if (flat.size() != rows * cols) throw DimensionError("flat length mismatch");
        Matrix m(ring, rows, cols);
        m.entries_ = flat;
        return m;
    }

    bool is_zero() const {
        for (const auto& s : entries_) {
            if (!s.is_zero()) return false;
        }
        return true;
    }

    Matrix transpose() const {
        Matrix t(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        }
        return t;
    }

    Matrix power(std::size_t k) const {
        require_square();
        Matrix result = identity(ring_, rows_);
        for (std::size_t i = 0; i < k; ++i) result = result * *this;
        return result;
    }

    Vector apply(const Vector& v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector length mismatch");
        Vector out = zero_vector(ring_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                const Scalar& a = (*this)(i, j);
                if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
            }
        }
        return out;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Scalar& c, Matrix m) {
        for (auto& s : m.entries_) s *= c;
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require_same_ring(a.ring_, b.ring_);
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        Matrix c(a.ring_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b(k, j);
                    if (!bkj.is_zero()) c(i, j) += aik * bkj;
                }
            }
        }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += (*this)(i, j).to_string();
            }
            s += "]";
        }
        return s + "]";
    }

   private:
    void require_square() const {
        if (!is_square()) throw DimensionError("matrix is not square");
    }
    void require_same_shape(const Matrix& o) const {
        require_same_ring(ring_, o.ring_);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
    }

    ScalarRing ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> entries_;
};

/// AB - BA
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace liealg
