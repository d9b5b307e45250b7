#pragma once

/**
 * Weight spaces relative to a nilpotent subalgebra H, the zero root subalgebra
 * L0, Cartan detection, and the check that H = L0 exactly when H is Cartan.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "lie_algebra.hpp"
#include "lie_module.hpp"
#include "submodule.hpp"

namespace liealg {

/**
 * A bracket-closed H whose own adjoint module is nilpotent. The lcs certificate of
 * that adjoint module is kept; non-nilpotent H are rejected.
 */
class NilpotentSubalgebra {
   public:
    static NilpotentSubalgebra make(const LieAlgebra& a, Submodule carrier) {
        NilpotentSubalgebra h;
        h.sub_ = Subalgebra::make(a, std::move(carrier));
        h.algebra_ = subalgebra_algebra(a, h.sub_);
        h.certificate_ = is_nilpotent(adjoint(h.algebra_));
        if (!h.certificate_.nilpotent) throw PreconditionError("subalgebra is not nilpotent");
        return h;
    }

    const Subalgebra& subalgebra() const noexcept { return sub_; }
    const Submodule& carrier() const noexcept { return sub_.carrier(); }
    std::size_t rank() const noexcept { return sub_.rank(); }
    /// H as a Lie algebra on its carrier basis.
    const LieAlgebra& as_algebra() const noexcept { return algebra_; }
    const NilpotencyVerdict& certificate() const noexcept { return certificate_; }

   private:
    NilpotentSubalgebra() = default;

    Subalgebra sub_;
    LieAlgebra algebra_;
    NilpotencyVerdict certificate_;
};

/// One value chi(h_i) per carrier basis row of H.
using Weight = Vector;

/// M as a module over H.
inline LieModule restrict(const LieModule& mod, const NilpotentSubalgebra& h) {
    return restrict_module(mod, h.subalgebra());
}

/**
 * Intersection over the H basis of ker (phi_{h_i} - chi_i)^rank(M).
 *
 * The uniform exponent rank(M) suffices by Cayley-Hamilton over the fraction
 * field, and a basis of H suffices for nilpotent H. H-invariance of the result
 * is verified; a failure raises InvariantViolation.
 */
inline LieSubmodule weight_space(const LieModule& mod_over_h, const Weight& chi) {
    const std::size_t r = mod_over_h.algebra().rank();
    if (chi.size() != r) throw DimensionError("weight length does not match subalgebra rank");
    const ScalarRing ring = mod_over_h.ring();
    const std::size_t m = mod_over_h.rank();
    Submodule s = Submodule::full(ring, m);
    for (std::size_t i = 0; i < r; ++i) {
        require_same_ring(ring, chi[i].ring());
        Matrix shifted = mod_over_h.action(i) - chi[i] * Matrix::identity(ring, m);
        s = intersect(s, kernel(shifted.power(m)));
    }
    if (!is_invariant(mod_over_h, s)) throw InvariantViolation("weight space is not invariant under H");
    return LieSubmodule::make(mod_over_h, std::move(s));
}

/**
 * L0, the zero weight space of the adjoint module restricted to H, verified to
 * be a subalgebra.
 */
inline Subalgebra zero_root_subalgebra(const LieAlgebra& a, const NilpotentSubalgebra& h) {
    LieModule adh = restrict(adjoint(a), h);
    LieSubmodule l0 = weight_space(adh, zero_vector(a.ring(), h.rank()));
    if (!is_subalgebra(a, l0.carrier())) throw InvariantViolation("zero root space is not a subalgebra");
    return Subalgebra::make(a, l0.carrier());
}

/// Nilpotent and self-normalizing; nilpotency is carried by h's certificate.
inline bool is_cartan(const LieAlgebra& a, const NilpotentSubalgebra& h) {
    return normalizer(a, h.carrier()) == h.carrier();
}

/**
 * Both sides of "H = L0 iff H is Cartan", evaluated independently, plus the
 * nilpotency of L0 as an H-module and the containment H in L0.
 */
struct CartanReport {
    Submodule zero_root;
    Submodule normalizer;
    bool zero_root_equals_h = false;
    bool is_cartan = false;
    bool h_in_zero_root = false;
    NilpotencyVerdict zero_root_nilpotency;

    bool consistent() const {
        return zero_root_equals_h == is_cartan && h_in_zero_root && zero_root_nilpotency.nilpotent;
    }
};

inline CartanReport cartan_iff_zero_root(const LieAlgebra& a, const NilpotentSubalgebra& h) {
    CartanReport report;
    LieModule adh = restrict(adjoint(a), h);
    LieSubmodule l0 = weight_space(adh, zero_vector(a.ring(), h.rank()));
    if (!is_subalgebra(a, l0.carrier())) throw InvariantViolation("zero root space is not a subalgebra");
    report.zero_root = l0.carrier();
    report.normalizer = normalizer(a, h.carrier());
    report.zero_root_equals_h = report.zero_root == h.carrier();
    report.is_cartan = report.normalizer == h.carrier();
    report.h_in_zero_root = report.zero_root.contains(h.carrier());
    report.zero_root_nilpotency = is_nilpotent(submodule_module(adh, l0));
    return report;
}

struct RootSpaceDecomposition {
    std::vector<std::pair<Weight, LieSubmodule>> spaces;
    /// Whether the found spaces sum to the whole module (observed, not asserted).
    bool spans_module = false;
};

inline constexpr std::size_t max_weight_scan = 4096;

/**
 * Nonzero weight spaces of a module over H (field coefficients).
 *
 * Candidates: the supplied weights if any; otherwise over GF(p) every one of the
 * p^rank(H) tuples (up to max_weight_scan), and over Q with rank(H) = 1 the
 * rational roots of the characteristic polynomial of the single action matrix.
 */
inline RootSpaceDecomposition weight_decomposition(const LieModule& mod_over_h,
                                                   const std::optional<std::vector<Weight>>& supplied = {}) {
    const ScalarRing ring = mod_over_h.ring();
    if (!ring.is_field()) throw UnsupportedRingError("weight decompositions need field coefficients");
    const std::size_t r = mod_over_h.algebra().rank();
    std::vector<Weight> candidates;
    if (supplied) {
        candidates = *supplied;
    } else if (ring.kind() == RingKind::PrimeField) {
        const std::uint64_t p = ring.characteristic();
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < r; ++i) {
            if (total > max_weight_scan / p + 1) throw PreconditionError("too many candidate weights to scan");
            total *= p;
        }
        if (total > max_weight_scan) throw PreconditionError("too many candidate weights to scan");
        for (std::uint64_t code = 0; code < total; ++code) {
            Weight w;
            std::uint64_t c = code;
            std::vector<long> digits(r);
            for (std::size_t i = r; i-- > 0;) {
                digits[i] = static_cast<long>(c % p);
                c /= p;
            }
            for (long d : digits) w.emplace_back(ring, d);
            candidates.push_back(std::move(w));
        }
    } else if (r == 0) {
        candidates.push_back({});
    } else if (r == 1) {
        for (const auto& q : rational_roots(characteristic_polynomial(mod_over_h.action(0)))) {
            candidates.push_back({Scalar::from_rational(ring, q)});
        }
    } else {
        throw PreconditionError("weights must be supplied when the subalgebra has rank above 1");
    }
    RootSpaceDecomposition dec;
    Submodule total = Submodule::zero(ring, mod_over_h.rank());
    for (auto& w : candidates) {
        LieSubmodule space = weight_space(mod_over_h, w);
        if (space.is_zero()) continue;
        total = sum(total, space.carrier());
        dec.spaces.emplace_back(std::move(w), std::move(space));
    }
    dec.spans_module = total.rank() == mod_over_h.rank();
    return dec;
}

}  // namespace liealg
