#pragma once

/**
 * Canonical submodules of R^n and the linear-algebra kernel built on them.
 *
 * Over a field a submodule is stored as its reduced row echelon basis (leftmost
 * pivots, monic pivots). Over Z it is stored as the row-style Hermite normal form
 * of the generated lattice: echelon, positive pivots, entries above each pivot
 * reduced into [0, pivot). Both forms are unique, so equality of submodules is
 * equality of basis matrices.
 *
 * Integer elimination is fraction-free: rows are combined by unimodular 2x2
 * transforms built from extended gcds, and rows above a pivot are reduced as soon
 * as the pivot is fixed, which keeps entries bounded by the pivots.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace liealg {

namespace detail {

inline void swap_rows(std::vector<Vector>& rows, std::size_t a, std::size_t b) {
    if (a != b) std::swap(rows[a], rows[b]);
}

/// Replaces (ra, rb) by (s ra + t rb, u ra + w rb).
inline void combine_rows(Vector& ra, Vector& rb, const Scalar& s, const Scalar& t, const Scalar& u,
                         const Scalar& w) {
    for (std::size_t k = 0; k < ra.size(); ++k) {
        Scalar a = ra[k];
        Scalar b = rb[k];
        if (a.is_zero() && b.is_zero()) continue;
        ra[k] = s * a + t * b;
        rb[k] = u * a + w * b;
    }
}

inline Scalar floor_quotient(const Scalar& a, const Scalar& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.value().get_num_mpz_t(), b.value().get_num_mpz_t());
    return Scalar::from_rational(a.ring(), mpq_class(q));
}

/**
 * Row-reduces in place with invertible (unimodular over Z) row operations,
 * choosing pivots only among columns [0, pivot_limit).
 *
 * On return rows [0, pivots.size()) are the pivot rows in echelon order and every
 * later row is zero on columns [0, pivot_limit). With `reduce` set, pivots are
 * normalized (monic / positive) and entries above each pivot are cleared (fields)
 * or reduced into [0, pivot) (Z).
 */
inline std::vector<std::size_t> eliminate(std::vector<Vector>& rows, std::size_t pivot_limit, ScalarRing ring,
                                          bool reduce) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const bool integral = ring.kind() == RingKind::Integers;
    for (std::size_t c = 0; c < pivot_limit && r < rows.size(); ++c) {
        if (integral) {
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c].is_zero()) continue;
                mpz_class g, s, t;
                const mpz_class& a = rows[r][c].value().get_num();
                const mpz_class& b = rows[i][c].value().get_num();
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                mpz_class u = -b / g;
                mpz_class w = a / g;
                auto z = [&](const mpz_class& x) { return Scalar::from_rational(ring, mpq_class(x)); };
                combine_rows(rows[r], rows[i], z(s), z(t), z(u), z(w));
            }
            if (rows[r][c].is_zero()) continue;
            if (rows[r][c].sign() < 0) rows[r] = Scalar(ring, -1) * std::move(rows[r]);
            if (reduce) {
                for (std::size_t k = 0; k < r; ++k) {
                    Scalar q = floor_quotient(rows[k][c], rows[r][c]);
                    if (!q.is_zero()) axpy(rows[k], -q, rows[r]);
                }
            }
        } else {
            std::size_t found = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (!rows[i][c].is_zero()) {
                    found = i;
                    break;
                }
            }
            if (found == rows.size()) continue;
            swap_rows(rows, r, found);
            Scalar inv = rows[r][c].inverse();
            rows[r] = inv * std::move(rows[r]);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == r || (i < r && !reduce)) continue;
                if (!rows[i][c].is_zero()) axpy(rows[i], -rows[i][c], rows[r]);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

class Submodule;
Submodule canonicalize(ScalarRing ring, std::size_t ambient, std::vector<Vector> generators);

/**
 * A submodule of R^n held in canonical form (see file comment).
 */
class Submodule {
   public:
    Submodule() = default;

    static Submodule zero(ScalarRing ring, std::size_t n) { return Submodule(ring, n, {}, {}); }
    static Submodule full(ScalarRing ring, std::size_t n) {
        std::vector<Vector> rows;
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back(unit_vector(ring, n, i));
            piv.push_back(i);
        }
        return Submodule(ring, n, std::move(rows), std::move(piv));
    }

    const ScalarRing& ring() const noexcept { return ring_; }
    std::size_t ambient_rank() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    bool is_zero() const noexcept { return rows_.empty(); }

    const std::vector<Vector>& rows() const noexcept { return rows_; }
    const Vector& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Matrix basis() const { return Matrix::from_rows(ring_, ambient_, rows_); }

    /// Equal to the whole ambient module (identity basis).
    bool is_full() const { return *this == full(ring_, ambient_); }

    /**
     * Coefficients c with v = sum c_i row_i, if v lies in the submodule.
     *
     * Back-substitution against the echelon basis; over Z every coefficient must be
     * an exact integer quotient.
     */
    std::optional<Vector> coordinates(Vector v) const {
        if (v.size() != ambient_) throw DimensionError("vector length does not match ambient rank");
        for (const auto& s : v) require_same_ring(ring_, s.ring());
        Vector coeffs = zero_vector(ring_, rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Scalar& pivot = rows_[i][pivots_[i]];
            const Scalar& entry = v[pivots_[i]];
            if (entry.is_zero()) continue;
            if (!entry.divisible_by(pivot)) return std::nullopt;
            Scalar c = entry.divided_by(pivot);
            axpy(v, -c, rows_[i]);
            coeffs[i] = c;
        }
        if (!liealg::is_zero(v)) return std::nullopt;
        return coeffs;
    }

    bool contains(const Vector& v) const { return coordinates(v).has_value(); }

    bool contains(const Submodule& other) const {
        require_compatible(other);
        return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vector& r) { return contains(r); });
    }

    /// Linear combination of basis rows.
    Vector combine(const Vector& coeffs) const {
        if (coeffs.size() != rows_.size()) throw DimensionError("coefficient count does not match rank");
        Vector v = zero_vector(ring_, ambient_);
        for (std::size_t i = 0; i < rows_.size(); ++i) axpy(v, coeffs[i], rows_[i]);
        return v;
    }

    void require_compatible(const Submodule& other) const {
        require_same_ring(ring_, other.ring_);
        if (ambient_ != other.ambient_) throw DimensionError("ambient rank mismatch");
    }

    friend bool operator==(const Submodule& a, const Submodule& b) {
        return a.ring_ == b.ring_ && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }

   private:
    friend Submodule canonicalize(ScalarRing ring, std::size_t ambient, std::vector<Vector> generators);

    Submodule(ScalarRing ring, std::size_t ambient, std::vector<Vector> rows, std::vector<std::size_t> pivots)
        : ring_(ring), ambient_(ambient), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

    ScalarRing ring_;
    std::size_t ambient_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Canonical basis of the span of `generators` (span, not saturation, over Z).
inline Submodule canonicalize(ScalarRing ring, std::size_t ambient, std::vector<Vector> generators) {
    for (const auto& g : generators) {
        if (g.size() != ambient) throw DimensionError("generator length does not match ambient rank");
        for (const auto& s : g) require_same_ring(ring, s.ring());
    }
    auto pivots = detail::eliminate(generators, ambient, ring, true);
    generators.resize(pivots.size());
    return Submodule(ring, ambient, std::move(generators), std::move(pivots));
}

inline Submodule canonicalize(const Matrix& generators) {
    return canonicalize(generators.ring(), generators.cols(), generators.row_list());
}

inline Submodule span_of(ScalarRing ring, std::size_t ambient, std::vector<Vector> generators) {
    return canonicalize(ring, ambient, std::move(generators));
}

inline bool membership(const Submodule& s, const Vector& v) { return s.contains(v); }

inline Submodule sum(const Submodule& a, const Submodule& b) {
    a.require_compatible(b);
    std::vector<Vector> gens = a.rows();
    gens.insert(gens.end(), b.rows().begin(), b.rows().end());
    return canonicalize(a.ring(), a.ambient_rank(), std::move(gens));
}

/**
 * {v : m v = 0}, computed by reducing [m^T | I] on its first block.
 *
 * Rows whose m^T part vanishes carry kernel vectors in the identity block. Over Z
 * the transform is unimodular, so these rows generate the full integer kernel.
 */
inline Submodule kernel(const Matrix& m) {
    const ScalarRing ring = m.ring();
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    std::vector<Vector> aug;
    aug.reserve(c);
    for (std::size_t j = 0; j < c; ++j) {
        Vector row = zero_vector(ring, r + c);
        for (std::size_t i = 0; i < r; ++i) row[i] = m(i, j);
        row[r + j] = Scalar(ring, 1);
        aug.push_back(std::move(row));
    }
    auto pivots = detail::eliminate(aug, r, ring, false);
    std::vector<Vector> gens;
    for (std::size_t i = pivots.size(); i < aug.size(); ++i) {
        gens.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(r), aug[i].end());
    }
    return canonicalize(ring, c, std::move(gens));
}

/// Column span of m inside its codomain.
inline Submodule image(const Matrix& m) { return canonicalize(m.transpose()); }

/// Lattice meet: {uA} for all (u, w) with uA = wB.
inline Submodule intersect(const Submodule& a, const Submodule& b) {
    a.require_compatible(b);
    const ScalarRing ring = a.ring();
    if (a.is_zero() || b.is_zero()) return Submodule::zero(ring, a.ambient_rank());
    std::vector<Vector> stacked = a.rows();
    for (const auto& row : b.rows()) stacked.push_back(Scalar(ring, -1) * row);
    Matrix s = Matrix::from_rows(ring, a.ambient_rank(), stacked);
    Submodule relations = kernel(s.transpose());
    std::vector<Vector> gens;
    for (const auto& rel : relations.rows()) {
        Vector u(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(a.rank()));
        gens.push_back(a.combine(u));
    }
    return canonicalize(ring, a.ambient_rank(), std::move(gens));
}

inline std::size_t rank(const Matrix& m) { return canonicalize(m).rank(); }

/**
 * Least k with m^k = 0, or a refutation carrying m^n.
 *
 * n = rank suffices: over Q, Z and GF(p) the matrix acts on a vector space over
 * the fraction field, where Cayley-Hamilton bounds the nilpotency index by n.
 */
struct NilpotencyIndex {
    std::optional<std::size_t> index;
    Matrix top_power;  ///< m^n when no index exists

    bool nilpotent() const noexcept { return index.has_value(); }
};

inline NilpotencyIndex is_nilpotent_endo(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("nilpotency test needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return {0, {}};
    Matrix p = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (p.is_zero()) return {k, {}};
        if (k < n) p = p * m;
    }
    return {std::nullopt, p};
}

/// Inverse over a field; throws PreconditionError for singular input.
inline Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("inverse needs a square matrix");
    const ScalarRing ring = m.ring();
    if (!ring.is_field()) throw UnsupportedRingError("matrix inverse needs field coefficients");
    const std::size_t n = m.rows();
    std::vector<Vector> aug;
    for (std::size_t i = 0; i < n; ++i) {
        Vector row = m.row(i);
        Vector id = unit_vector(ring, n, i);
        row.insert(row.end(), id.begin(), id.end());
        aug.push_back(std::move(row));
    }
    auto pivots = detail::eliminate(aug, n, ring, true);
    if (pivots.size() != n) throw PreconditionError("matrix is singular");
    Matrix inv(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug[i][n + j];
    }
    return inv;
}

/**
 * Coefficients c with sum c_i rows_i = v for linearly independent rows.
 *
 * Solved over the fraction field; over Z the unique solution must be integral.
 * Throws PreconditionError if the rows are dependent.
 */
inline std::optional<Vector> solve_combination(ScalarRing ring, const std::vector<Vector>& rows, const Vector& v) {
    const ScalarRing field = ring.kind() == RingKind::Integers ? ScalarRing::rationals() : ring;
    const std::size_t k = rows.size();
    const std::size_t n = v.size();
    auto lift = [&](const Scalar& s) { return Scalar::from_rational(field, s.value()); };
    // Columns of the system are the rows; one extra column carries v.
    std::vector<Vector> system;
    for (std::size_t j = 0; j < n; ++j) {
        Vector eq = zero_vector(field, k + 1);
        for (std::size_t i = 0; i < k; ++i) {
            if (rows[i].size() != n) throw DimensionError("row length mismatch");
            eq[i] = lift(rows[i][j]);
        }
        eq[k] = lift(v[j]);
        system.push_back(std::move(eq));
    }
    auto pivots = detail::eliminate(system, k + 1, field, true);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    if (pivots.size() != k) throw PreconditionError("rows are linearly dependent");
    Vector out;
    for (std::size_t i = 0; i < k; ++i) {
        const mpq_class& q = system[i][k].value();
        if (ring.kind() == RingKind::Integers && q.get_den() != 1) return std::nullopt;
        out.push_back(Scalar::from_rational(ring, q));
    }
    return out;
}

/**
 * Coefficients of det(tI - m), highest degree first, by Berkowitz's
 * division-free algorithm (valid over every supported ring).
 */
inline Vector characteristic_polynomial(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("characteristic polynomial needs a square matrix");
    const ScalarRing ring = m.ring();
    const std::size_t n = m.rows();
    if (n == 0) return {Scalar(ring, 1)};
    if (n == 1) return {Scalar(ring, 1), -m(0, 0)};
    Matrix sub(ring, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) sub(i - 1, j - 1) = m(i, j);
    }
    Vector row_r = zero_vector(ring, n - 1);
    Vector col_c = zero_vector(ring, n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        row_r[j - 1] = m(0, j);
        col_c[j - 1] = m(j, 0);
    }
    // Toeplitz diagonals: 1, -a, -R C, -R A C, ...
    Vector diags{Scalar(ring, 1), -m(0, 0)};
    Vector power_c = col_c;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Scalar dot(ring);
        for (std::size_t j = 0; j + 1 < n; ++j) dot += row_r[j] * power_c[j];
        diags.push_back(-dot);
        power_c = sub.apply(power_c);
    }
    Vector lower = characteristic_polynomial(sub);
    Vector out = zero_vector(ring, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j < n && j <= i; ++j) out[i] += diags[i - j] * lower[j];
    }
    return out;
}

/// Distinct rational roots of a polynomial over Q or Z (coefficients highest first), ascending.
inline std::vector<mpq_class> rational_roots(const Vector& coeffs) {
    std::vector<mpq_class> c;
    for (const auto& s : coeffs) c.push_back(s.value());
    while (!c.empty() && c.front() == 0) c.erase(c.begin());
    std::vector<mpq_class> roots;
    if (c.size() <= 1) return roots;
    if (c.back() == 0) {
        roots.emplace_back(0);
        while (c.back() == 0) c.pop_back();
    }
    mpz_class lcm = 1;
    for (const auto& q : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> z;
    for (const auto& q : c) z.push_back(mpz_class(q * lcm));
    auto divisors = [](mpz_class a) {
        a = abs(a);
        std::vector<mpz_class> small, large;
        for (mpz_class d = 1; d * d <= a; ++d) {
            if (a % d == 0) {
                small.push_back(d);
                if (d * d != a) large.push_back(a / d);
            }
        }
        small.insert(small.end(), large.rbegin(), large.rend());
        return small;
    };
    auto eval = [&](const mpq_class& x) {
        mpq_class acc = 0;
        for (const auto& a : z) acc = acc * x + a;
        return acc;
    };
    for (const auto& p : divisors(z.back())) {
        for (const auto& q : divisors(z.front())) {
            for (int sign : {1, -1}) {
                mpq_class x(sign * p, q);
                x.canonicalize();
                if (eval(x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace liealg
