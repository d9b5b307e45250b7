#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lie_algebra.hpp"
#include "matrix.hpp"

namespace liealg {

/**
 * Checks phi([e_i, e_j]) = phi(e_i) phi(e_j) - phi(e_j) phi(e_i) for all i < j.
 *
 * Bilinearity of the action holds by the matrix representation, so this is the
 * whole Lie module axiom on a basis.
 */
inline ValidationReport validate_module(const LieAlgebra& algebra, const std::vector<Matrix>& action) {
    if (action.size() != algebra.rank()) throw DimensionError("one action matrix per algebra basis element required");
    const std::size_t m = action.empty() ? 0 : action.front().rows();
    for (const auto& a : action) {
        require_same_ring(algebra.ring(), a.ring());
        if (!a.is_square() || a.rows() != m) throw DimensionError("action matrices must be square of equal rank");
    }
    ValidationReport report;
    for (std::size_t i = 0; i < action.size(); ++i) {
        for (std::size_t j = i + 1; j < action.size(); ++j) {
            Matrix lhs(algebra.ring(), m, m);
            Vector c = algebra.basis_bracket(i, j);
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (!c[k].is_zero()) lhs += c[k] * action[k];
            }
            Matrix rhs = commutator(action[i], action[j]);
            if (lhs != rhs) report.violations.push_back({Axiom::ModuleBracket, {i, j}, lhs, rhs});
        }
    }
    return report;
}

/**
 * Finite-rank Lie module: one m x m action matrix per algebra basis element.
 */
class LieModule {
   public:
    LieModule() = default;

    /// Validates and builds; throws ValidationError with the full report.
    static LieModule create(LieAlgebra algebra, std::size_t rank, std::vector<Matrix> action) {
        for (const auto& a : action) {
            if (a.rows() != rank) throw DimensionError("action matrix rank does not match module rank");
        }
        ValidationReport report = validate_module(algebra, action);
        if (!report.passed()) throw ValidationError(std::move(report));
        LieModule mod;
        mod.algebra_ = std::move(algebra);
        mod.rank_ = rank;
        mod.action_ = std::move(action);
        return mod;
    }

    /// Zero action on R^rank.
    static LieModule trivial(LieAlgebra algebra, std::size_t rank) {
        std::vector<Matrix> action(algebra.rank(), Matrix(algebra.ring(), rank, rank));
        return create(std::move(algebra), rank, std::move(action));
    }

    const LieAlgebra& algebra() const noexcept { return algebra_; }
    const ScalarRing& ring() const noexcept { return algebra_.ring(); }
    std::size_t rank() const noexcept { return rank_; }
    const std::vector<Matrix>& action() const noexcept { return action_; }
    const Matrix& action(std::size_t k) const { return action_.at(k); }

    /// phi_x = sum_i x_i action[i]
    Matrix to_endomorphism(const Vector& x) const {
        algebra_.require_element(x);
        Matrix out(ring(), rank_, rank_);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i].is_zero()) out += x[i] * action_[i];
        }
        return out;
    }

    Vector act(const Vector& x, const Vector& v) const {
        require_element(v);
        return to_endomorphism(x).apply(v);
    }

    void require_element(const Vector& v) const {
        if (v.size() != rank_) throw DimensionError("module element has wrong length");
        for (const auto& s : v) require_same_ring(ring(), s.ring());
    }

    Vector zero() const { return zero_vector(ring(), rank_); }

   private:
    LieAlgebra algebra_;
    std::size_t rank_ = 0;
    std::vector<Matrix> action_;
};

inline Matrix to_endomorphism(const LieModule& mod, const Vector& x) { return mod.to_endomorphism(x); }
inline Vector act(const LieModule& mod, const Vector& x, const Vector& v) { return mod.act(x, v); }

/// ad_x matrix: column j holds the coordinates of [x, e_j].
inline Matrix ad_matrix(const LieAlgebra& a, const Vector& x) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < a.rank(); ++j) cols.push_back(a.bracket(x, a.basis_element(j)));
    return Matrix::from_columns(a.ring(), a.rank(), cols);
}

/// The adjoint module: L acting on itself by ad.
inline LieModule adjoint(const LieAlgebra& a) {
    std::vector<Matrix> action;
    for (std::size_t k = 0; k < a.rank(); ++k) action.push_back(ad_matrix(a, a.basis_element(k)));
    return LieModule::create(a, a.rank(), std::move(action));
}

}  // namespace liealg
