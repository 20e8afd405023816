#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wold/common.hpp"

namespace wold {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes; // ascending, all primes <= limit
};

// Odd-wheel sieve of Eratosthenes.
inline PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
    PrimeTable t;
    t.limit = limit;
    t.primes.push_back(2);
    if (limit < 3) return t;
    const std::uint64_t half = (limit - 1) / 2; // odd k -> number 2k+1
    std::vector<std::uint8_t> composite(half + 1, 0);
    for (std::uint64_t k = 1; (2 * k + 1) * (2 * k + 1) <= limit; ++k) {
        if (composite[k]) continue;
        const std::uint64_t p = 2 * k + 1;
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = 1;
    }
    for (std::uint64_t k = 1; k <= half; ++k)
        if (!composite[k]) t.primes.push_back(static_cast<std::uint32_t>(2 * k + 1));
    return t;
}

// sum_{p <= x} p^a log p, exact over the sieved primes.
inline double chebyshev_power_sum(const PrimeTable& table, double x, double a) {
    if (a <= -1.0)
        throw std::domain_error("chebyshev_power_sum: requires a > -1");
    if (x < 2.0)
        throw std::domain_error("chebyshev_power_sum: requires x >= 2");
    if (x > static_cast<double>(table.limit))
        throw std::domain_error("chebyshev_power_sum: prime table too small (limit " +
                                std::to_string(table.limit) + " < x)");
    long double acc = 0.0L;
    for (std::uint32_t p : table.primes) {
        if (static_cast<double>(p) > x) break;
        const double lp = std::log(static_cast<double>(p));
        acc += static_cast<long double>(std::pow(static_cast<double>(p), a)) * lp;
    }
    return static_cast<double>(acc);
}

namespace detail {
inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}
} // namespace detail

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace wold
