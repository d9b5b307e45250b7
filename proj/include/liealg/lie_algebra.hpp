#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "submodule.hpp"

namespace liealg {

/// Coefficient c of e_k in [e_i, e_j].
struct BracketEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    Scalar c;
};

/**
 * Candidate structure constants as written by a user, before validation.
 *
 * Entries with i < j define the bracket. Entries with i > j are optional
 * restatements that must agree with the negation of the (j, i) entry, and entries
 * with i == j must vanish.
 */
struct StructureTable {
    ScalarRing ring;
    std::size_t rank = 0;
    std::vector<BracketEntry> entries;
};

enum class Axiom { Alternation, Antisymmetry, Leibniz, ModuleBracket };

inline const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::Alternation: return "alternation";
        case Axiom::Antisymmetry: return "antisymmetry";
        case Axiom::Leibniz: return "leibniz";
        case Axiom::ModuleBracket: return "module_bracket";
    }
    return "?";
}

struct AxiomViolation {
    Axiom axiom;
    std::vector<std::size_t> tuple;  ///< basis indices of the failing instance
    Matrix lhs;                      ///< both sides evaluated (vectors as 1 x n)
    Matrix rhs;

    std::string describe() const {
        std::string s = std::string(axiom_name(axiom)) + " violated at (";
        for (std::size_t i = 0; i < tuple.size(); ++i) s += (i ? "," : "") + std::to_string(tuple[i]);
        return s + "): " + lhs.to_string() + " != " + rhs.to_string();
    }
};

/// Every failing basis tuple, in lexicographic order.
struct ValidationReport {
    std::vector<AxiomViolation> violations;

    bool passed() const noexcept { return violations.empty(); }

    std::string summary() const {
        if (passed()) return "valid";
        std::string s = std::to_string(violations.size()) + " violation(s); first: " + violations.front().describe();
        return s;
    }
};

class ValidationError : public std::runtime_error {
   public:
    explicit ValidationError(ValidationReport report)
        : std::runtime_error(report.summary()), report_(std::move(report)) {}
    const ValidationReport& report() const noexcept { return report_; }

   private:
    ValidationReport report_;
};

namespace detail {

using BracketMap = std::map<std::pair<std::size_t, std::size_t>, Vector>;

/// Dense bracket of basis elements from an i < j map.
inline Vector basis_bracket(const BracketMap& map, ScalarRing ring, std::size_t n, std::size_t i, std::size_t j) {
    if (i == j) return zero_vector(ring, n);
    if (i < j) {
        auto it = map.find({i, j});
        return it == map.end() ? zero_vector(ring, n) : it->second;
    }
    auto it = map.find({j, i});
    return it == map.end() ? zero_vector(ring, n) : Scalar(ring, -1) * it->second;
}

inline Vector bracket_vectors(const BracketMap& map, ScalarRing ring, std::size_t n, const Vector& x,
                              const Vector& y) {
    Vector out = zero_vector(ring, n);
    for (const auto& [key, value] : map) {
        auto [i, j] = key;
        // [x, y] picks up x_i y_j - x_j y_i on [e_i, e_j] for i < j
        Scalar c = x[i] * y[j] - x[j] * y[i];
        if (!c.is_zero()) axpy(out, c, value);
    }
    return out;
}

}  // namespace detail

/**
 * Validates a candidate table.
 *
 * Alternation is checked on the diagonal entries explicitly: over rings where 2
 * is a zero divisor, antisymmetry alone does not give [x, x] = 0. The Leibniz
 * identity [x,[y,z]] = [[x,y],z] + [y,[x,z]] is checked on every basis triple;
 * multilinearity extends both axioms to all elements.
 */
inline ValidationReport validate_algebra(const StructureTable& table) {
    const ScalarRing ring = table.ring;
    const std::size_t n = table.rank;
    ValidationReport report;
    std::map<std::array<std::size_t, 3>, Scalar> given;
    for (const auto& e : table.entries) {
        if (e.i >= n || e.j >= n || e.k >= n) throw DimensionError("structure constant index out of range");
        require_same_ring(ring, e.c.ring());
        auto [it, inserted] = given.emplace(std::array{e.i, e.j, e.k}, e.c);
        if (!inserted) throw DimensionError("duplicate structure constant entry");
    }
    detail::BracketMap map;
    for (const auto& [key, c] : given) {
        if (key[0] < key[1] && !c.is_zero()) {
            auto& v = map.try_emplace({key[0], key[1]}, zero_vector(ring, n)).first->second;
            v[key[2]] = c;
        }
    }
    auto row = [&](const Vector& v) { return Matrix::row_matrix(ring, v); };
    for (std::size_t i = 0; i < n; ++i) {
        Vector diag = zero_vector(ring, n);
        for (std::size_t k = 0; k < n; ++k) {
            auto it = given.find({i, i, k});
            if (it != given.end()) diag[k] = it->second;
        }
        if (!is_zero(diag)) {
            report.violations.push_back({Axiom::Alternation, {i, i}, row(diag), row(zero_vector(ring, n))});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            bool restated = false;
            Vector stated = zero_vector(ring, n);
            for (std::size_t k = 0; k < n; ++k) {
                auto it = given.find({i, j, k});
                if (it != given.end()) {
                    restated = true;
                    stated[k] = it->second;
                }
            }
            if (!restated) continue;
            Vector derived = detail::basis_bracket(map, ring, n, i, j);
            if (stated != derived) {
                report.violations.push_back({Axiom::Antisymmetry, {j, i}, row(derived), row(stated)});
            }
        }
    }
    std::vector<std::vector<Vector>> cube(n, std::vector<Vector>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) cube[i][j] = detail::basis_bracket(map, ring, n, i, j);
    }
    // sum_l coeffs_l [e_a, e_l]  (or [e_l, e_a] when `left` is false)
    auto expand = [&](const Vector& coeffs, std::size_t a, bool left) {
        Vector out = zero_vector(ring, n);
        for (std::size_t l = 0; l < n; ++l) {
            if (!coeffs[l].is_zero()) axpy(out, coeffs[l], left ? cube[a][l] : cube[l][a]);
        }
        return out;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Vector lhs = expand(cube[j][k], i, true);
                Vector rhs = expand(cube[i][j], k, false) + expand(cube[i][k], j, true);
                if (lhs != rhs) report.violations.push_back({Axiom::Leibniz, {i, j, k}, row(lhs), row(rhs)});
            }
        }
    }
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const AxiomViolation& a, const AxiomViolation& b) { return a.tuple < b.tuple; });
    return report;
}

/**
 * Finite-rank Lie algebra over R given by structure constants on a basis.
 *
 * Only brackets [e_i, e_j] with i < j are stored; [e_i, e_i] = 0 and
 * [e_j, e_i] = -[e_i, e_j] hold by representation. Basis names are labels only.
 */
class LieAlgebra {
   public:
    LieAlgebra() = default;

    /// Validates and builds; throws ValidationError with the full report.
    static LieAlgebra from_table(const StructureTable& table, std::vector<std::string> names = {}) {
        ValidationReport report = validate_algebra(table);
        if (!report.passed()) throw ValidationError(std::move(report));
        LieAlgebra a;
        a.ring_ = table.ring;
        a.rank_ = table.rank;
        a.names_ = std::move(names);
        if (a.names_.empty()) {
            for (std::size_t i = 0; i < a.rank_; ++i) a.names_.push_back("e" + std::to_string(i));
        }
        if (a.names_.size() != a.rank_) throw DimensionError("basis name count does not match rank");
        for (const auto& e : table.entries) {
            if (e.i < e.j && !e.c.is_zero()) {
                auto& v = a.brackets_.try_emplace({e.i, e.j}, zero_vector(a.ring_, a.rank_)).first->second;
                v[e.k] = e.c;
            }
        }
        return a;
    }

    static LieAlgebra abelian(ScalarRing ring, std::size_t n, std::vector<std::string> names = {}) {
        return from_table({ring, n, {}}, std::move(names));
    }

    const ScalarRing& ring() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return rank_; }
    const std::vector<std::string>& basis_names() const noexcept { return names_; }

    /// [e_i, e_j]
    Vector basis_bracket(std::size_t i, std::size_t j) const {
        if (i >= rank_ || j >= rank_) throw DimensionError("basis index out of range");
        return detail::basis_bracket(brackets_, ring_, rank_, i, j);
    }

    Vector bracket(const Vector& x, const Vector& y) const {
        require_element(x);
        require_element(y);
        return detail::bracket_vectors(brackets_, ring_, rank_, x, y);
    }

    /// The nonzero stored brackets, keyed by (i, j) with i < j.
    const std::map<std::pair<std::size_t, std::size_t>, Vector>& brackets() const noexcept { return brackets_; }

    StructureTable table() const {
        StructureTable t{ring_, rank_, {}};
        for (const auto& [key, v] : brackets_) {
            for (std::size_t k = 0; k < rank_; ++k) {
                if (!v[k].is_zero()) t.entries.push_back({key.first, key.second, k, v[k]});
            }
        }
        return t;
    }

    void require_element(const Vector& x) const {
        if (x.size() != rank_) throw DimensionError("algebra element has wrong length");
        for (const auto& s : x) require_same_ring(ring_, s.ring());
    }

    Vector zero() const { return zero_vector(ring_, rank_); }
    Vector basis_element(std::size_t i) const { return unit_vector(ring_, rank_, i); }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.ring_ == b.ring_ && a.rank_ == b.rank_ && a.brackets_ == b.brackets_;
    }

   private:
    ScalarRing ring_;
    std::size_t rank_ = 0;
    std::vector<std::string> names_;
    std::map<std::pair<std::size_t, std::size_t>, Vector> brackets_;
};

inline Vector bracket(const LieAlgebra& a, const Vector& x, const Vector& y) { return a.bracket(x, y); }

/**
 * The Lie algebra spanned by linearly independent matrices under the commutator.
 *
 * Structure constants are the coordinates of [B_i, B_j] in the given basis; the
 * span must be closed (over Z: integrally) or InvariantViolation is thrown.
 */
inline LieAlgebra matrix_algebra(ScalarRing ring, const std::vector<Matrix>& basis,
                                 std::vector<std::string> names = {}) {
    std::vector<Vector> flat;
    for (const auto& b : basis) {
        require_same_ring(ring, b.ring());
        flat.push_back(b.flat());
    }
    StructureTable table{ring, basis.size(), {}};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Matrix c = commutator(basis[i], basis[j]);
            auto coords = solve_combination(ring, flat, c.flat());
            if (!coords) throw InvariantViolation("matrix span is not closed under the commutator");
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if (!(*coords)[k].is_zero()) table.entries.push_back({i, j, k, (*coords)[k]});
            }
        }
    }
    return LieAlgebra::from_table(table, std::move(names));
}

}  // namespace liealg
