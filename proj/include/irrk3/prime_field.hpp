#pragma once

#include "irrk3/integer.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>

namespace irrk3::ff {

using Elem = std::uint64_t;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    for (; e; e >>= 1, a = mulmod(a, a, m))
        if (e & 1) r = mulmod(r, a, m);
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Uniform integer in [0, n) by rejection; independent of the standard
/// library's distribution implementations so runs replay across toolchains.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % n;
}

/// Arithmetic in Z/qZ for a prime q < 2^62.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t q) : q_(q) {
        if (q >= (1ULL << 62)) throw DomainError("field size must be < 2^62");
        if (!is_prime(q)) throw DomainError("field size " + std::to_string(q) + " is not prime");
    }

    std::uint64_t size() const { return q_; }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + q_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : q_ - a; }
    Elem mul(Elem a, Elem b) const { return detail::mulmod(a, b, q_); }
    Elem pow(Elem a, std::uint64_t e) const { return detail::powmod(a, e, q_); }
    Elem inv(Elem a) const {
        if (a % q_ == 0) throw DomainError("inverse of zero in GF(" + std::to_string(q_) + ")");
        return pow(a, q_ - 2);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(std::int64_t v) const {
        const auto m = static_cast<std::int64_t>(q_);
        std::int64_t r = v % m;
        return static_cast<Elem>(r < 0 ? r + m : r);
    }
    /// Canonical representative of an arbitrary integer.
    Elem from_integer(const Integer& v) const {
        Integer r = v % Integer(q_);
        if (r < 0) r += q_;
        return r.convert_to<Elem>();
    }

    Elem random(std::mt19937_64& rng) const { return uniform_below(rng, q_); }
    Elem random_nonzero(std::mt19937_64& rng) const { return 1 + uniform_below(rng, q_ - 1); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint64_t q_;
};

/// Smallest field size the fiber experiments accept.
inline constexpr std::uint64_t kMinFieldSize = 101;
inline constexpr std::uint64_t kDefaultFieldSize = 997;

struct PrimeFieldConfig {
    std::uint64_t q = kDefaultFieldSize;
    std::uint64_t seed = 0;

    PrimeFieldConfig() = default;
    PrimeFieldConfig(std::uint64_t q_, std::uint64_t seed_) : q(q_), seed(seed_) {
        if (q < kMinFieldSize) throw DomainError("field size must be >= 101, got " + std::to_string(q));
        if (!is_prime(q)) throw DomainError("field size " + std::to_string(q) + " is not prime");
    }
    PrimeField field() const { return PrimeField(q); }
};

using Point = std::array<Elem, 3>;

}  // namespace irrk3::ff
