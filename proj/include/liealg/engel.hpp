#pragma once

/**
 * Engel's theorem in both directions, with certificates.
 *
 * "L acts nilpotently on M" quantifies over infinitely many x when R is Q or Z.
 * Engel's theorem makes it equivalent to nilpotency of M, which the lower
 * central series decides in finitely many steps, so that is how it is decided
 * here. Element enumeration only ever produces refuting witnesses.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "lie_algebra.hpp"
#include "lie_module.hpp"
#include "sampling.hpp"
#include "submodule.hpp"

namespace liealg {

inline constexpr std::size_t default_witness_budget = 256;

/// An x whose endomorphism phi_x is not nilpotent: phi_x^rank != 0.
struct NilpotencyWitnessElement {
    Vector element;
    Matrix endo;
    Matrix evidence;  ///< phi_x^rank(M), nonzero
    std::string stage;
};

struct WitnessSearchResult {
    std::optional<NilpotencyWitnessElement> witness;
    std::size_t candidates_tried = 0;

    bool exhausted() const noexcept { return !witness.has_value(); }
};

/**
 * Searches for x with phi_x not nilpotent, in order: basis elements, brackets of
 * basis pairs, brackets [e_i, [e_j, e_k]], then `budget` pseudo-random elements
 * with coefficients in {-2..2}. Requires a non-nilpotent module.
 */
inline WitnessSearchResult witness_search(const LieModule& mod, std::size_t budget = default_witness_budget,
                                          std::uint64_t seed = 0) {
    if (lower_central_series(mod).nilpotent()) throw PreconditionError("module is nilpotent; no witness exists");
    const LieAlgebra& a = mod.algebra();
    const std::size_t n = a.rank();
    WitnessSearchResult result;
    auto test = [&](const Vector& x, const char* stage) {
        if (is_zero(x)) return false;
        ++result.candidates_tried;
        Matrix phi = mod.to_endomorphism(x);
        NilpotencyIndex idx = is_nilpotent_endo(phi);
        if (idx.nilpotent()) return false;
        result.witness = NilpotencyWitnessElement{x, phi, idx.top_power, stage};
        return true;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (test(a.basis_element(i), "basis")) return result;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (test(a.basis_bracket(i, j), "bracket")) return result;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (test(a.bracket(a.basis_element(i), a.basis_bracket(j, k)), "iterated_bracket")) return result;
            }
        }
    }
    if (n == 0) return result;
    CoefficientSampler sampler(seed);
    for (std::size_t s = 0; s < budget; ++s) {
        if (test(sampler.element(a.ring(), n), "random")) return result;
    }
    return result;
}

/**
 * Flag 0 = M_0 < M_1 < ... < M_s = M with L M_{i+1} in M_i.
 *
 * Columns of `change_of_basis` are the lifted basis vectors of each step in flag
 * order; in that basis every action matrix is strictly upper triangular.
 */
struct EngelFlag {
    std::vector<LieSubmodule> flag;
    std::vector<std::size_t> block_sizes;
    Matrix change_of_basis;
};

/// A stage M_i < M whose quotient M / M_i has no nonzero trivial submodule.
struct FlagRefutation {
    std::size_t step = 0;
    LieSubmodule reached;
    QuotientModule offending;
};

/**
 * Builds the flag by setting M_{i+1} / M_i to the maximal trivial submodule of
 * M / M_i. Succeeds iff M is nilpotent. Field coefficients only.
 */
inline std::variant<EngelFlag, FlagRefutation> engel_flag(const LieModule& mod) {
    if (!mod.ring().is_field()) throw UnsupportedRingError("Engel flags need field coefficients");
    const ScalarRing ring = mod.ring();
    EngelFlag result;
    LieSubmodule current = LieSubmodule::bottom(mod);
    result.flag.push_back(current);
    std::vector<Vector> columns;
    while (current.rank() < mod.rank()) {
        QuotientModule q = quotient(mod, current.carrier());
        LieSubmodule triv = max_triv_submodule(q.module);
        if (triv.is_zero()) return FlagRefutation{result.flag.size() - 1, current, std::move(q)};
        std::vector<Vector> lifted;
        for (const auto& row : triv.carrier().rows()) lifted.push_back(q.section.apply(row));
        columns.insert(columns.end(), lifted.begin(), lifted.end());
        result.block_sizes.push_back(lifted.size());
        current = LieSubmodule::make(mod, sum(current.carrier(), canonicalize(ring, mod.rank(), lifted)));
        result.flag.push_back(current);
    }
    result.change_of_basis = Matrix::from_columns(ring, mod.rank(), columns);
    return result;
}

/// B^-1 A B for every action matrix A, with B the flag's change of basis.
inline std::vector<Matrix> conjugated_action(const LieModule& mod, const EngelFlag& flag) {
    std::vector<Matrix> out;
    if (mod.rank() == 0) return mod.action();
    Matrix inv = inverse(flag.change_of_basis);
    for (const auto& a : mod.action()) out.push_back(inv * a * flag.change_of_basis);
    return out;
}

inline bool is_strictly_upper_triangular(const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j <= i && j < m.cols(); ++j) {
            if (!m(i, j).is_zero()) return false;
        }
    }
    return true;
}

/// Re-checks L M_{i+1} in M_i for every step and strict triangularity after conjugation.
inline bool verify_flag(const LieModule& mod, const EngelFlag& flag) {
    if (flag.flag.empty() || !flag.flag.front().is_zero() || flag.flag.back().rank() != mod.rank()) return false;
    if (flag.flag.size() > mod.rank() + 1) return false;
    for (std::size_t i = 0; i + 1 < flag.flag.size(); ++i) {
        if (!(flag.flag[i + 1].contains(flag.flag[i])) || flag.flag[i + 1].rank() <= flag.flag[i].rank()) {
            return false;
        }
        for (const auto& a : mod.action()) {
            for (const auto& v : flag.flag[i + 1].carrier().rows()) {
                if (!flag.flag[i].carrier().contains(a.apply(v))) return false;
            }
        }
    }
    for (const auto& c : conjugated_action(mod, flag)) {
        if (!is_strictly_upper_triangular(c)) return false;
    }
    return true;
}

/**
 * Decision of "phi_x is nilpotent for every x", via nilpotency of M.
 *
 * When true over a field the Engel flag is attached; when false a witness search
 * is attached (the lcs certificate alone already proves the negative).
 */
struct EngelVerdict {
    bool acts_nilpotently = false;
    NilpotencyVerdict lcs;
    std::optional<EngelFlag> flag;
    std::optional<WitnessSearchResult> search;
};

inline EngelVerdict check_forall_nilpotent(const LieModule& mod, std::size_t budget = default_witness_budget,
                                           std::uint64_t seed = 0) {
    EngelVerdict v;
    v.lcs = is_nilpotent(mod);
    v.acts_nilpotently = v.lcs.nilpotent;
    if (v.acts_nilpotently) {
        if (mod.ring().is_field()) {
            auto flag = engel_flag(mod);
            if (!std::holds_alternative<EngelFlag>(flag)) {
                throw InvariantViolation("nilpotent module admits no Engel flag");
            }
            v.flag = std::get<EngelFlag>(std::move(flag));
        }
    } else {
        v.search = witness_search(mod, budget, seed);
    }
    return v;
}

/**
 * For a nilpotent module with lcs length K: checks phi_x^K = 0 on sampled x and
 * records each sample's least vanishing exponent.
 */
struct UniformExponentReport {
    std::size_t uniform_exponent = 0;
    std::vector<Vector> elements;
    std::vector<std::size_t> minimal_exponents;
    bool all_vanish = true;
};

inline UniformExponentReport uniform_exponent_check(const LieModule& mod, std::size_t samples,
                                                    std::uint64_t seed = 0) {
    LcsChain chain = lower_central_series(mod);
    if (!chain.nilpotent()) throw PreconditionError("module is not nilpotent");
    UniformExponentReport report;
    report.uniform_exponent = chain.index;
    CoefficientSampler sampler(seed);
    const LieAlgebra& a = mod.algebra();
    for (std::size_t s = 0; s < samples; ++s) {
        Vector x = sampler.element(a.ring(), a.rank());
        Matrix phi = mod.to_endomorphism(x);
        NilpotencyIndex idx = is_nilpotent_endo(phi);
        if (!idx.nilpotent()) throw InvariantViolation("element of a nilpotent module acts non-nilpotently");
        report.elements.push_back(std::move(x));
        report.minimal_exponents.push_back(*idx.index);
        if (!phi.power(report.uniform_exponent).is_zero()) report.all_vanish = false;
    }
    return report;
}

/**
 * For a nilpotent a (a^k = 0) inside a commutator-closed span of matrices: ad_a on
 * that span is nilpotent with exponent at most 2k - 1, since ad_a = L_a - R_a
 * with L_a, R_a commuting and each of index k.
 */
struct AdNilpotencyReport {
    std::size_t element_index = 0;  ///< k with a^k = 0
    std::size_t bound = 0;          ///< 2k - 1
    std::optional<std::size_t> ad_exponent;
    Matrix ad_matrix;  ///< ad_a in the canonical basis of the span
    Submodule span;    ///< flattened matrices

    bool holds() const noexcept { return ad_exponent && *ad_exponent <= bound; }
};

inline AdNilpotencyReport nilpotent_ad_of_nilpotent(const Matrix& a, const std::vector<Matrix>& subalgebra) {
    if (!a.is_square()) throw DimensionError("matrix must be square");
    const ScalarRing ring = a.ring();
    const std::size_t m = a.rows();
    std::vector<Vector> flats;
    for (const auto& b : subalgebra) {
        if (b.rows() != m || b.cols() != m) throw DimensionError("subalgebra matrices must match the element's shape");
        flats.push_back(b.flat());
    }
    AdNilpotencyReport report;
    report.span = canonicalize(ring, m * m, flats);
    if (!report.span.contains(a.flat())) throw PreconditionError("matrix does not lie in the subalgebra span");
    std::vector<Matrix> basis;
    for (const auto& row : report.span.rows()) basis.push_back(Matrix::from_flat(ring, m, m, row));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (!report.span.contains(commutator(basis[i], basis[j]).flat())) {
                throw PreconditionError("matrix span is not closed under the commutator");
            }
        }
    }
    NilpotencyIndex idx = is_nilpotent_endo(a);
    if (!idx.nilpotent()) throw PreconditionError("matrix is not nilpotent");
    report.element_index = *idx.index;
    report.bound = report.element_index == 0 ? 0 : 2 * report.element_index - 1;
    std::vector<Vector> cols;
    for (const auto& b : basis) cols.push_back(*report.span.coordinates(commutator(a, b).flat()));
    report.ad_matrix = Matrix::from_columns(ring, basis.size(), cols);
    report.ad_exponent = is_nilpotent_endo(report.ad_matrix).index;
    return report;
}

/**
 * L' = span of the action matrices inside End(M), as a Lie algebra on the
 * canonical basis of that span, with M as its tautological module.
 *
 * `phi` has column k equal to the coordinates of phi_{e_k} in that basis.
 */
struct RangeReduction {
    LieAlgebra image_algebra;
    LieModule module;
    Matrix phi;
};

inline RangeReduction range_reduction(const LieModule& mod) {
    const ScalarRing ring = mod.ring();
    const std::size_t m = mod.rank();
    std::vector<Vector> flats;
    for (const auto& a : mod.action()) flats.push_back(a.flat());
    Submodule span = canonicalize(ring, m * m, flats);
    std::vector<Matrix> basis;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < span.rank(); ++i) {
        basis.push_back(Matrix::from_flat(ring, m, m, span.row(i)));
        names.push_back("phi" + std::to_string(i));
    }
    StructureTable table{ring, basis.size(), {}};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            auto coords = span.coordinates(commutator(basis[i], basis[j]).flat());
            if (!coords) throw InvariantViolation("image of the action is not closed under the commutator");
            for (std::size_t k = 0; k < coords->size(); ++k) {
                if (!(*coords)[k].is_zero()) table.entries.push_back({i, j, k, (*coords)[k]});
            }
        }
    }
    LieAlgebra image = LieAlgebra::from_table(table, names);
    std::vector<Vector> cols;
    for (const auto& f : flats) cols.push_back(*span.coordinates(f));
    Matrix phi = Matrix::from_columns(ring, span.rank(), cols);
    LieModule taut = LieModule::create(image, m, basis);
    return {std::move(image), std::move(taut), std::move(phi)};
}

/// One enlargement K -> K' = K + span{x} of the ascent.
struct AscentStep {
    Submodule k;
    Vector x;
    Vector m0_class;  ///< the killed element of L'/K in complement coordinates
    Submodule k_next;
};

struct AscentFailure {
    std::size_t step = 0;
    Submodule k;
    NilpotencyVerdict quotient_verdict;
};

struct AscentResult {
    RangeReduction range;
    std::vector<AscentStep> steps;
    std::optional<AscentFailure> failure;

    bool complete() const noexcept { return !failure.has_value(); }
};

/**
 * Re-verifies a step from scratch: x not in K, [K, x] in K, K' = K + span{x} has
 * rank one more than K, K' is a subalgebra and K is an ideal of K'.
 */
inline bool verify_ascent_step(const LieAlgebra& lp, const AscentStep& step) {
    const ScalarRing ring = lp.ring();
    if (step.k.contains(step.x)) return false;
    for (const auto& row : step.k.rows()) {
        if (!step.k.contains(lp.bracket(row, step.x))) return false;
    }
    Submodule expected = sum(step.k, canonicalize(ring, lp.rank(), {step.x}));
    if (!(expected == step.k_next) || step.k_next.rank() != step.k.rank() + 1) return false;
    if (!is_subalgebra(lp, step.k_next)) return false;
    for (const auto& big : step.k_next.rows()) {
        for (const auto& small : step.k.rows()) {
            if (!step.k.contains(lp.bracket(big, small))) return false;
        }
    }
    return true;
}

/**
 * Grows Engelian subalgebras K of L' = range(phi) one dimension at a time.
 *
 * At each step L'/K is a K-module; when its lower central series terminates, a
 * nonzero m0 killed by K lifts to x in L' \ K with [K, x] in K, and K' = K + Rx.
 * The chain reaches L' whenever M is nilpotent. A step whose quotient is not
 * K-nilpotent is returned as the failure point.
 */
inline AscentResult engelian_ascent(const LieModule& mod) {
    if (!mod.ring().is_field()) throw UnsupportedRingError("the ascent needs field coefficients");
    AscentResult result{range_reduction(mod), {}, std::nullopt};
    const LieAlgebra& lp = result.range.image_algebra;
    const LieModule ad = adjoint(lp);
    const ScalarRing ring = lp.ring();
    Submodule k = Submodule::zero(ring, lp.rank());
    while (k.rank() < lp.rank()) {
        Subalgebra ksub = Subalgebra::make(lp, k);
        QuotientModule q = quotient(ad, k, ksub);
        NilpotencyVerdict verdict = is_nilpotent(q.module);
        if (!verdict.nilpotent) {
            result.failure = AscentFailure{result.steps.size(), k, std::move(verdict)};
            break;
        }
        Vector m0 = nontrivial_max_triv_witness(q.module);
        Vector x = q.section.apply(m0);
        Submodule next = sum(k, canonicalize(ring, lp.rank(), {x}));
        AscentStep step{k, std::move(x), std::move(m0), next};
        if (!verify_ascent_step(lp, step)) throw InvariantViolation("ascent step failed re-verification");
        result.steps.push_back(std::move(step));
        k = std::move(next);
    }
    return result;
}

}  // namespace liealg
