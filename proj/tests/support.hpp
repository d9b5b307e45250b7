#pragma once

// Conversions between library values and the oracle's raw representations.

#include <liealg/liealg.hpp>

#include <vector>

#include "oracle.hpp"

namespace support {

inline oracle::Field field_of(const liealg::ScalarRing& ring) {
    return oracle::Field{ring.kind() == liealg::RingKind::PrimeField ? static_cast<long>(ring.characteristic()) : 0};
}

inline oracle::Vec raw(const liealg::Vector& v) {
    oracle::Vec out;
    for (const auto& s : v) out.push_back(s.value());
    return out;
}

inline std::vector<oracle::Vec> raw_rows(const liealg::Submodule& s) {
    std::vector<oracle::Vec> out;
    for (const auto& r : s.rows()) out.push_back(raw(r));
    return out;
}

inline oracle::Mat raw(const liealg::Matrix& m) {
    oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).value();
    return out;
}

inline liealg::Vector lift(const liealg::ScalarRing& ring, const oracle::Vec& v) {
    liealg::Vector out;
    for (const auto& q : v) out.push_back(liealg::Scalar::from_rational(ring, q));
    return out;
}

inline oracle::Table raw_table(const liealg::LieAlgebra& a) {
    oracle::Table t(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j) t.c[i][j] = raw(a.basis_bracket(i, j));
    return t;
}

inline std::vector<oracle::Mat> raw_action(const liealg::LieModule& m) {
    std::vector<oracle::Mat> out;
    for (std::size_t i = 0; i < m.algebra().rank(); ++i) out.push_back(raw(m.action(i)));
    return out;
}

/// Element of span(rows) from small integer coefficients.
inline liealg::Vector combination(const liealg::ScalarRing& ring, const std::vector<liealg::Vector>& rows,
                                  const std::vector<long>& coeffs, std::size_t n) {
    liealg::Vector v = liealg::zero_vector(ring, n);
    for (std::size_t i = 0; i < rows.size(); ++i) liealg::axpy(v, liealg::Scalar(ring, coeffs[i]), rows[i]);
    return v;
}


/// A corank-one ideal I containing [L, L] (so I is an ideal), and x outside I.
struct CorankOneSplit {
    liealg::LieIdeal ideal;
    liealg::Vector x;
};

inline CorankOneSplit corank_one_split(const liealg::LieAlgebra& a, liealg::CoefficientSampler& sampler) {
    using namespace liealg;
    const ScalarRing ring = a.ring();
    Submodule derived = ideal_bracket(adjoint(a), LieIdeal::top(a), LieSubmodule::top(adjoint(a))).carrier();
    // functionals vanishing on [L, L]
    Submodule annihilator = kernel(Matrix::from_rows(ring, a.rank(), derived.rows()));
    Vector f;
    do {
        f = annihilator.combine(sampler.element(ring, annihilator.rank()));
    } while (is_zero(f));
    Submodule hyperplane = kernel(Matrix::row_matrix(ring, f));
    Vector x = zero_vector(ring, a.rank());
    for (std::size_t j = 0; j < a.rank(); ++j) {
        if (!f[j].is_zero()) {
            x = a.basis_element(j);
            break;
        }
    }
    return {LieIdeal::make(a, hyperplane), x};
}


/// Basis of the commutator closure of the span of the given square matrices.
inline std::vector<liealg::Matrix> matrix_lie_closure(const liealg::ScalarRing& ring, const std::vector<liealg::Matrix>& gens) {
    using namespace liealg;
    const std::size_t m = gens.front().rows();
    std::vector<Vector> flats;
    for (const auto& g : gens) flats.push_back(g.flat());
    Submodule s = canonicalize(ring, m * m, flats);
    while (true) {
        std::vector<Vector> next = s.rows();
        for (std::size_t i = 0; i < s.rank(); ++i)
            for (std::size_t j = i + 1; j < s.rank(); ++j)
                next.push_back(commutator(Matrix::from_flat(ring, m, m, s.row(i)), Matrix::from_flat(ring, m, m, s.row(j))).flat());
        Submodule t = canonicalize(ring, m * m, next);
        if (t == s) break;
        s = t;
    }
    std::vector<Matrix> basis;
    for (const auto& r : s.rows()) basis.push_back(Matrix::from_flat(ring, m, m, r));
    return basis;
}

/// The tautological module of a matrix Lie algebra.
inline liealg::LieModule matrix_module(const liealg::ScalarRing& ring, const std::vector<liealg::Matrix>& basis) {
    using namespace liealg;
    return LieModule::create(matrix_algebra(ring, basis), basis.front().rows(), basis);
}

/// Random strictly upper triangular generators conjugated by a random unipotent-times-permutation matrix.
/// With `perturb`, a diagonal matrix joins the generators.
inline liealg::LieModule random_triangular_module(const liealg::ScalarRing& ring, std::size_t m,
                                                  liealg::CoefficientSampler& sampler, bool perturb) {
    using namespace liealg;
    Matrix p = Matrix::identity(ring, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) p(i, j) = Scalar(ring, sampler.coefficient());
    Matrix lower = Matrix::identity(ring, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) lower(i, j) = Scalar(ring, sampler.coefficient());
    Matrix conj = lower * p;
    Matrix conj_inv = inverse(conj);
    std::vector<Matrix> gens;
    std::size_t count = 1 + sampler.below(3);
    for (std::size_t g = 0; g < count; ++g) {
        Matrix s(ring, m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) s(i, j) = Scalar(ring, sampler.coefficient());
        gens.push_back(conj * s * conj_inv);
    }
    if (perturb) {
        Matrix d(ring, m, m);
        for (std::size_t i = 0; i < m; ++i) d(i, i) = Scalar(ring, static_cast<long>(i + 1));
        gens.push_back(conj * d * conj_inv);
    }
    bool all_zero = true;
    for (const auto& g : gens) all_zero = all_zero && g.is_zero();
    if (all_zero) gens.front()(0, m - 1) = Scalar(ring, 1);
    return matrix_module(ring, matrix_lie_closure(ring, gens));
}

}  // namespace support
