#pragma once

/**
 * Lie submodules, ideals and subalgebras; the ideal bracket [I, N]; the lower
 * central series with nilpotency certificates; maximal trivial submodules,
 * quotients and normalizers.
 *
 * Carriers are canonical Submodules. The typed wrappers verify their invariance
 * property at construction, so every function taking one may rely on it.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lie_algebra.hpp"
#include "lie_module.hpp"
#include "submodule.hpp"

namespace liealg {

/// True iff action[k] v lies in the carrier for every basis element e_k and carrier row v.
inline bool is_invariant(const LieModule& mod, const Submodule& carrier) {
    if (carrier.ambient_rank() != mod.rank()) throw DimensionError("carrier ambient rank does not match module");
    for (const auto& a : mod.action()) {
        for (const auto& v : carrier.rows()) {
            if (!carrier.contains(a.apply(v))) return false;
        }
    }
    return true;
}

class LieSubmodule {
   public:
    LieSubmodule() = default;

    /// Throws PreconditionError if the carrier is not L-invariant.
    static LieSubmodule make(const LieModule& mod, Submodule carrier) {
        require_same_ring(mod.ring(), carrier.ring());
        if (!is_invariant(mod, carrier)) throw PreconditionError("carrier is not invariant under the algebra action");
        return LieSubmodule(std::move(carrier));
    }
    static LieSubmodule top(const LieModule& mod) { return LieSubmodule(Submodule::full(mod.ring(), mod.rank())); }
    static LieSubmodule bottom(const LieModule& mod) { return LieSubmodule(Submodule::zero(mod.ring(), mod.rank())); }

    const Submodule& carrier() const noexcept { return carrier_; }
    std::size_t rank() const noexcept { return carrier_.rank(); }
    bool is_zero() const noexcept { return carrier_.is_zero(); }
    bool contains(const LieSubmodule& o) const { return carrier_.contains(o.carrier_); }

    friend bool operator==(const LieSubmodule& a, const LieSubmodule& b) { return a.carrier_ == b.carrier_; }

   private:
    explicit LieSubmodule(Submodule carrier) : carrier_(std::move(carrier)) {}
    Submodule carrier_;
};

class LieIdeal {
   public:
    LieIdeal() = default;

    /// Throws PreconditionError unless [L, I] is contained in I.
    static LieIdeal make(const LieAlgebra& a, Submodule carrier) {
        require_same_ring(a.ring(), carrier.ring());
        if (carrier.ambient_rank() != a.rank()) throw DimensionError("ideal carrier has wrong ambient rank");
        for (std::size_t k = 0; k < a.rank(); ++k) {
            for (const auto& v : carrier.rows()) {
                if (!carrier.contains(a.bracket(a.basis_element(k), v))) {
                    throw PreconditionError("carrier is not an ideal");
                }
            }
        }
        return LieIdeal(std::move(carrier));
    }
    static LieIdeal top(const LieAlgebra& a) { return LieIdeal(Submodule::full(a.ring(), a.rank())); }

    const Submodule& carrier() const noexcept { return carrier_; }

   private:
    explicit LieIdeal(Submodule carrier) : carrier_(std::move(carrier)) {}
    Submodule carrier_;
};

/// True iff the carrier is closed under the bracket.
inline bool is_subalgebra(const LieAlgebra& a, const Submodule& carrier) {
    const auto& rows = carrier.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (!carrier.contains(a.bracket(rows[i], rows[j]))) return false;
        }
    }
    return true;
}

class Subalgebra {
   public:
    Subalgebra() = default;

    /// Throws PreconditionError if the carrier is not bracket-closed.
    static Subalgebra make(const LieAlgebra& a, Submodule carrier) {
        require_same_ring(a.ring(), carrier.ring());
        if (carrier.ambient_rank() != a.rank()) throw DimensionError("subalgebra carrier has wrong ambient rank");
        if (!is_subalgebra(a, carrier)) throw PreconditionError("carrier is not closed under the bracket");
        return Subalgebra(std::move(carrier));
    }
    static Subalgebra top(const LieAlgebra& a) { return Subalgebra(Submodule::full(a.ring(), a.rank())); }

    const Submodule& carrier() const noexcept { return carrier_; }
    std::size_t rank() const noexcept { return carrier_.rank(); }

   private:
    explicit Subalgebra(Submodule carrier) : carrier_(std::move(carrier)) {}
    Submodule carrier_;
};

/// Smallest subalgebra containing the generators (iterated bracket closure).
inline Subalgebra generated_subalgebra(const LieAlgebra& a, std::vector<Vector> generators) {
    Submodule s = canonicalize(a.ring(), a.rank(), std::move(generators));
    while (true) {
        std::vector<Vector> gens = s.rows();
        for (std::size_t i = 0; i < s.rank(); ++i) {
            for (std::size_t j = i + 1; j < s.rank(); ++j) gens.push_back(a.bracket(s.row(i), s.row(j)));
        }
        Submodule next = canonicalize(a.ring(), a.rank(), std::move(gens));
        if (next == s) return Subalgebra::make(a, std::move(s));
        s = std::move(next);
    }
}

/**
 * The subalgebra as a Lie algebra in its own right, on the basis of carrier rows.
 *
 * Rows that are standard basis vectors keep their basis names.
 */
inline LieAlgebra subalgebra_algebra(const LieAlgebra& a, const Subalgebra& s) {
    const Submodule& c = s.carrier();
    StructureTable table{a.ring(), c.rank(), {}};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c.rank(); ++i) {
        auto lead = leading_index(c.row(i));
        bool unit = lead && c.row(i) == a.basis_element(*lead);
        names.push_back(unit ? a.basis_names()[*lead] : "s" + std::to_string(i));
        for (std::size_t j = i + 1; j < c.rank(); ++j) {
            auto coords = c.coordinates(a.bracket(c.row(i), c.row(j)));
            if (!coords) throw InvariantViolation("subalgebra carrier lost bracket closure");
            for (std::size_t k = 0; k < coords->size(); ++k) {
                if (!(*coords)[k].is_zero()) table.entries.push_back({i, j, k, (*coords)[k]});
            }
        }
    }
    return LieAlgebra::from_table(table, std::move(names));
}

/// The module restricted to a subalgebra, acting through its carrier basis.
inline LieModule restrict_module(const LieModule& mod, const Subalgebra& s) {
    LieAlgebra sub = subalgebra_algebra(mod.algebra(), s);
    std::vector<Matrix> action;
    for (const auto& row : s.carrier().rows()) action.push_back(mod.to_endomorphism(row));
    return LieModule::create(std::move(sub), mod.rank(), std::move(action));
}

/// A Lie submodule as a module in its own right, in the coordinates of its carrier basis.
inline LieModule submodule_module(const LieModule& mod, const LieSubmodule& n) {
    const Submodule& c = n.carrier();
    std::vector<Matrix> action;
    for (const auto& a : mod.action()) {
        std::vector<Vector> cols;
        for (const auto& v : c.rows()) {
            auto coords = c.coordinates(a.apply(v));
            if (!coords) throw InvariantViolation("submodule carrier lost invariance");
            cols.push_back(std::move(*coords));
        }
        action.push_back(Matrix::from_columns(mod.ring(), c.rank(), cols));
    }
    return LieModule::create(mod.algebra(), c.rank(), std::move(action));
}

/**
 * [I, N]: the span of [g, v] over ideal rows g and submodule rows v.
 *
 * When I is an ideal and N a submodule this span is already L-invariant by the
 * Leibniz identity; the result is verified and InvariantViolation signals a
 * broken input.
 */
inline LieSubmodule ideal_bracket(const LieModule& mod, const LieIdeal& ideal, const LieSubmodule& n) {
    if (ideal.carrier().ambient_rank() != mod.algebra().rank() || n.carrier().ambient_rank() != mod.rank()) {
        throw DimensionError("ideal or submodule does not belong to this module");
    }
    std::vector<Vector> gens;
    for (const auto& g : ideal.carrier().rows()) {
        Matrix phi = mod.to_endomorphism(g);
        for (const auto& v : n.carrier().rows()) gens.push_back(phi.apply(v));
    }
    Submodule span = canonicalize(mod.ring(), mod.rank(), std::move(gens));
    if (!is_invariant(mod, span)) throw InvariantViolation("ideal bracket span is not invariant");
    return LieSubmodule::make(mod, std::move(span));
}

enum class LcsVerdict { Terminated, Stabilized };

/**
 * Lower central series C_0 = M, C_{k+1} = [L, C_k], run to a verdict.
 *
 * Terminated(k): terms C_0..C_k with C_k = 0.
 * Stabilized(k): terms C_0..C_{k+1} with rank C_{k+1} = rank C_k > 0. Over a field
 * this means C_{k+1} = C_k. Over Z the lattices may keep shrinking in index
 * (e.g. x acting by 2 on Z gives C_k = 2^k Z), but equal rank means the rational
 * spans agree, so no later term can vanish.
 */
struct LcsChain {
    std::vector<LieSubmodule> terms;
    LcsVerdict verdict = LcsVerdict::Terminated;
    std::size_t index = 0;

    bool nilpotent() const noexcept { return verdict == LcsVerdict::Terminated; }
    /// For Stabilized: whether C_{k+1} = C_k exactly (always true over fields).
    bool exact_fixed_point() const { return !nilpotent() && terms[index] == terms[index + 1]; }
};

inline LcsChain lower_central_series(const LieModule& mod) {
    const LieIdeal top = LieIdeal::top(mod.algebra());
    LcsChain chain;
    chain.terms.push_back(LieSubmodule::top(mod));
    while (true) {
        const LieSubmodule& current = chain.terms.back();
        if (current.is_zero()) {
            chain.verdict = LcsVerdict::Terminated;
            chain.index = chain.terms.size() - 1;
            return chain;
        }
        LieSubmodule next = ideal_bracket(mod, top, current);
        if (next.rank() == current.rank()) {
            chain.verdict = LcsVerdict::Stabilized;
            chain.index = chain.terms.size() - 1;
            chain.terms.push_back(std::move(next));
            return chain;
        }
        chain.terms.push_back(std::move(next));
    }
}

/// I.lcs(M, k): k applications of N -> [I, N] starting from M.
inline LieSubmodule relative_lcs(const LieModule& mod, const LieIdeal& ideal, std::size_t k) {
    LieSubmodule n = LieSubmodule::top(mod);
    for (std::size_t i = 0; i < k && !n.is_zero(); ++i) n = ideal_bracket(mod, ideal, n);
    return n;
}

/**
 * Nilpotency verdict with a checkable certificate.
 *
 * Nilpotent: the chain replays in `index` ideal brackets from M to 0.
 * Not nilpotent: `self_reproducing` is a nonzero submodule N whose bracket [L, N]
 * has the same rank as N (equal to N over a field), so C_j never vanishes.
 */
struct NilpotencyVerdict {
    bool nilpotent = false;
    LcsChain chain;
    std::optional<LieSubmodule> self_reproducing;

    std::size_t index() const noexcept { return chain.index; }
};

inline NilpotencyVerdict is_nilpotent(const LieModule& mod) {
    NilpotencyVerdict v;
    v.chain = lower_central_series(mod);
    v.nilpotent = v.chain.nilpotent();
    if (!v.nilpotent) v.self_reproducing = v.chain.terms[v.chain.index];
    return v;
}

/// Re-checks a verdict from scratch using only ideal_bracket.
inline bool verify_certificate(const LieModule& mod, const NilpotencyVerdict& v) {
    const LieIdeal top = LieIdeal::top(mod.algebra());
    if (v.nilpotent) {
        LieSubmodule n = LieSubmodule::top(mod);
        for (std::size_t i = 0; i < v.chain.index; ++i) {
            if (!(n == v.chain.terms[i])) return false;
            n = ideal_bracket(mod, top, n);
        }
        return n.is_zero() && (v.chain.index == 0 || !v.chain.terms[v.chain.index - 1].is_zero());
    }
    if (!v.self_reproducing || v.self_reproducing->is_zero()) return false;
    const LieSubmodule& n = *v.self_reproducing;
    if (!is_invariant(mod, n.carrier())) return false;
    LieSubmodule image = ideal_bracket(mod, top, n);
    if (!n.contains(image) || image.rank() != n.rank()) return false;
    return !mod.ring().is_field() || image == n;
}

/// {m : [x, m] = 0 for all x}, the intersection of the kernels of the basis actions.
inline LieSubmodule max_triv_submodule(const LieModule& mod) {
    Submodule s = Submodule::full(mod.ring(), mod.rank());
    for (const auto& a : mod.action()) s = intersect(s, kernel(a));
    return LieSubmodule::make(mod, std::move(s));
}

/**
 * A nonzero m0 killed by every x, for a nonzero nilpotent module: the first basis
 * row of the last nonzero lower-central-series term.
 */
inline Vector nontrivial_max_triv_witness(const LieModule& mod) {
    if (mod.rank() == 0) throw PreconditionError("the zero module has no nonzero element");
    LcsChain chain = lower_central_series(mod);
    if (!chain.nilpotent()) throw PreconditionError("module is not nilpotent");
    Vector m0 = chain.terms[chain.index - 1].carrier().row(0);
    for (const auto& a : mod.action()) {
        if (!is_zero(a.apply(m0))) throw InvariantViolation("last lower central series term is not trivial");
    }
    return m0;
}

/**
 * M / N as a module over L (or over an acting subalgebra), presented on the
 * complement spanned by the non-pivot coordinates of N's echelon basis.
 *
 * `projection` maps M onto the complement coordinates and `section` embeds them
 * back, so projection * section = I and induced action = P A S.
 */
struct QuotientModule {
    LieModule module;
    Submodule denominator;
    std::vector<std::size_t> complement;
    Matrix projection;
    Matrix section;
};

inline QuotientModule quotient(const LieModule& mod, const Submodule& denominator,
                               const std::optional<Subalgebra>& acting = std::nullopt) {
    if (!mod.ring().is_field()) throw UnsupportedRingError("quotients need field coefficients");
    LieModule base = acting ? restrict_module(mod, *acting) : mod;
    LieSubmodule n = LieSubmodule::make(base, denominator);
    const ScalarRing ring = mod.ring();
    const std::size_t m = mod.rank();
    const auto& pivots = n.carrier().pivots();
    std::vector<std::size_t> complement;
    for (std::size_t j = 0, p = 0; j < m; ++j) {
        if (p < pivots.size() && pivots[p] == j) {
            ++p;
        } else {
            complement.push_back(j);
        }
    }
    Matrix proj(ring, complement.size(), m);
    for (std::size_t j = 0; j < m; ++j) {
        Vector v = unit_vector(ring, m, j);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (!v[pivots[i]].is_zero()) axpy(v, -v[pivots[i]], n.carrier().row(i));
        }
        for (std::size_t t = 0; t < complement.size(); ++t) proj(t, j) = v[complement[t]];
    }
    Matrix sect(ring, m, complement.size());
    for (std::size_t t = 0; t < complement.size(); ++t) sect(complement[t], t) = Scalar(ring, 1);
    std::vector<Matrix> action;
    for (const auto& a : base.action()) action.push_back(proj * a * sect);
    LieModule induced = LieModule::create(base.algebra(), complement.size(), std::move(action));
    return {std::move(induced), n.carrier(), std::move(complement), std::move(proj), std::move(sect)};
}

/**
 * {x : [x, h_i] in span(h) for every carrier row h_i}.
 *
 * Solved as one kernel in the unknowns (x, c) of [x, h_i] = sum_j c_ij h_j and
 * projected to x; over Z this encodes integral membership exactly.
 */
inline Submodule normalizer(const LieAlgebra& a, const Submodule& h) {
    require_same_ring(a.ring(), h.ring());
    if (h.ambient_rank() != a.rank()) throw DimensionError("subspace has wrong ambient rank");
    const ScalarRing ring = a.ring();
    const std::size_t n = a.rank();
    const std::size_t r = h.rank();
    if (r == 0) return Submodule::full(ring, n);
    Matrix system(ring, r * n, n + r * r);
    for (std::size_t i = 0; i < r; ++i) {
        // column j of the x-block: [e_j, h_i]
        for (std::size_t j = 0; j < n; ++j) {
            Vector col = a.bracket(a.basis_element(j), h.row(i));
            for (std::size_t t = 0; t < n; ++t) system(i * n + t, j) = col[t];
        }
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t t = 0; t < n; ++t) system(i * n + t, n + i * r + j) = -h.row(j)[t];
        }
    }
    Submodule sol = kernel(system);
    std::vector<Vector> xs;
    for (const auto& row : sol.rows()) xs.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    return canonicalize(ring, n, std::move(xs));
}

}  // namespace liealg
