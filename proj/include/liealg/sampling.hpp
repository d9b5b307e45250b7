#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "matrix.hpp"

namespace liealg {

/**
 * Deterministic small-coefficient element generator.
 *
 * Coefficients are drawn from {-2, ..., 2} as (raw % 5) - 2 on the raw
 * std::mt19937_64 stream. The engine's output sequence is fixed by the standard,
 * unlike the std distributions, so samples agree across platforms.
 */
class CoefficientSampler {
   public:
    explicit CoefficientSampler(std::uint64_t seed) : engine_(seed) {}

    long coefficient() { return static_cast<long>(engine_() % 5) - 2; }

    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

    Vector element(ScalarRing ring, std::size_t n) {
        Vector v;
        v.reserve(n);
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(ring, coefficient());
        return v;
    }

    /// Redraws until the vector is nonzero in the ring (n must be positive).
    Vector nonzero_element(ScalarRing ring, std::size_t n) {
        while (true) {
            Vector v = element(ring, n);
            if (!is_zero(v)) return v;
        }
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace liealg
