#pragma once

/**
 * Exact coefficient rings: the rationals, the integers and prime fields GF(p).
 *
 * Every value is held as a GMP rational. Integers always have denominator 1 and
 * prime-field residues are integers reduced into [0, p). No operation rounds.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace liealg {

enum class RingKind { Rationals, Integers, PrimeField };

class ScalarRing {
   public:
    static constexpr std::uint64_t max_characteristic = (std::uint64_t{1} << 31) - 1;

    constexpr ScalarRing() noexcept = default;

    static constexpr ScalarRing rationals() noexcept { return ScalarRing(RingKind::Rationals, 0); }
    static constexpr ScalarRing integers() noexcept { return ScalarRing(RingKind::Integers, 0); }

    /// Throws std::invalid_argument unless p is a prime below 2^31.
    static ScalarRing prime_field(std::uint64_t p) {
        if (p > max_characteristic) {
            throw std::invalid_argument(std::to_string(p) + " exceeds the supported prime range");
        }
        if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        return ScalarRing(RingKind::PrimeField, p);
    }

    static constexpr bool is_prime(std::uint64_t n) noexcept {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    }

    constexpr RingKind kind() const noexcept { return kind_; }
    /// The prime p for GF(p), zero otherwise.
    constexpr std::uint64_t characteristic() const noexcept { return p_; }
    constexpr bool is_field() const noexcept { return kind_ != RingKind::Integers; }

    std::string name() const {
        switch (kind_) {
            case RingKind::Rationals: return "Q";
            case RingKind::Integers: return "Z";
            case RingKind::PrimeField: return "GF(" + std::to_string(p_) + ")";
        }
        return "?";
    }

    constexpr bool operator==(const ScalarRing&) const noexcept = default;

   private:
    constexpr ScalarRing(RingKind kind, std::uint64_t p) noexcept : kind_(kind), p_(p) {}

    RingKind kind_ = RingKind::Rationals;
    std::uint64_t p_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ScalarRing& ring) { return os << ring.name(); }

inline void require_same_ring(const ScalarRing& a, const ScalarRing& b) {
    if (a != b) throw DimensionError("ring mismatch: " + a.name() + " vs " + b.name());
}

class Scalar {
   public:
    Scalar() = default;
    explicit Scalar(ScalarRing ring) : ring_(ring) {}
    Scalar(ScalarRing ring, long value) : ring_(ring), value_(value) { normalize(); }

    /// Maps an exact rational into the ring. Non-integers are rejected over Z and
    /// denominators divisible by p over GF(p).
    static Scalar from_rational(ScalarRing ring, const mpq_class& q) {
        Scalar s(ring);
        switch (ring.kind()) {
            case RingKind::Rationals: s.value_ = q; break;
            case RingKind::Integers:
                if (q.get_den() != 1) {
                    throw std::invalid_argument(q.get_str() + " is not an integer");
                }
                s.value_ = q;
                break;
            case RingKind::PrimeField: {
                mpz_class p = static_cast<unsigned long>(ring.characteristic());
                mpz_class den = q.get_den();
                mpz_class inv;
                if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
                    throw std::invalid_argument(q.get_str() + " has no image in " + ring.name());
                }
                s.value_ = mpq_class(mpz_class(q.get_num() * inv));
                s.normalize();
                break;
            }
        }
        return s;
    }

    /// Parses "a" or "a/b" (decimal, optional sign) and maps it into the ring.
    static Scalar parse(ScalarRing ring, std::string_view text) {
        std::string s(text);
        auto valid = [](const std::string& part) {
            std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
            if (start == part.size()) return false;
            for (std::size_t i = start; i < part.size(); ++i) {
                if (part[i] < '0' || part[i] > '9') return false;
            }
            return true;
        };
        auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+') {
            throw std::invalid_argument("malformed scalar \"" + s + "\"");
        }
        if (num[0] == '+') num.erase(0, 1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
        mpq_class q(n, d);
        q.canonicalize();
        return from_rational(ring, q);
    }

    const ScalarRing& ring() const noexcept { return ring_; }
    const mpq_class& value() const noexcept { return value_; }

    bool is_zero() const noexcept { return sgn(value_) == 0; }
    bool is_one() const noexcept { return value_ == 1; }

    /// Sign of the exact value (residues over GF(p) are non-negative).
    int sign() const noexcept { return sgn(value_); }

    bool is_unit() const noexcept {
        switch (ring_.kind()) {
            case RingKind::Integers: return value_ == 1 || value_ == -1;
            default: return !is_zero();
        }
    }

    Scalar inverse() const {
        if (!is_unit()) throw std::domain_error(to_string() + " is not invertible in " + ring_.name());
        Scalar r(ring_);
        if (ring_.kind() == RingKind::PrimeField) {
            mpz_class p = static_cast<unsigned long>(ring_.characteristic());
            mpz_class num = value_.get_num();
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
            r.value_ = mpq_class(inv);
        } else {
            r.value_ = 1 / value_;
        }
        return r;
    }

    /// Exact quotient. Over Z the division must leave no remainder.
    Scalar divided_by(const Scalar& d) const {
        require_same_ring(ring_, d.ring_);
        if (d.is_zero()) throw std::domain_error("division by zero");
        if (ring_.kind() == RingKind::Integers) {
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value_.get_num_mpz_t(), d.value_.get_num_mpz_t());
            if (r != 0) throw std::domain_error(to_string() + " is not divisible by " + d.to_string());
            Scalar out(ring_);
            out.value_ = mpq_class(q);
            return out;
        }
        return *this * d.inverse();
    }

    /// True iff d divides this value in the ring (always, for nonzero d over a field).
    bool divisible_by(const Scalar& d) const {
        require_same_ring(ring_, d.ring_);
        if (d.is_zero()) return is_zero();
        if (ring_.kind() != RingKind::Integers) return true;
        return mpz_divisible_p(value_.get_num_mpz_t(), d.value_.get_num_mpz_t()) != 0;
    }

    std::string to_string() const { return value_.get_str(); }

    Scalar& operator+=(const Scalar& o) {
        require_same_ring(ring_, o.ring_);
        value_ += o.value_;
        normalize();
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        require_same_ring(ring_, o.ring_);
        value_ -= o.value_;
        normalize();
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        require_same_ring(ring_, o.ring_);
        value_ *= o.value_;
        normalize();
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator-(Scalar a) {
        a.value_ = -a.value_;
        a.normalize();
        return a;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.ring_ == b.ring_ && a.value_ == b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

   private:
    void normalize() {
        if (ring_.kind() == RingKind::PrimeField) {
            mpz_fdiv_r_ui(value_.get_num_mpz_t(), value_.get_num_mpz_t(),
                          static_cast<unsigned long>(ring_.characteristic()));
        }
    }

    ScalarRing ring_;
    mpq_class value_ = 0;
};

}  // namespace liealg
