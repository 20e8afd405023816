#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wold/common.hpp"
#include "wold/primes.hpp"

namespace wold {

// The multiplicative structure mod a prime q: least primitive root g and the
// discrete-log table n = g^k (mod q) -> k. Characters mod q are indexed by an
// exponent j in [0, q-2] with chi_j(g^k) = e(jk/(q-1)); one shared table
// serves all q-1 of them.
struct CharacterGroup {
    std::uint32_t q = 0;
    std::uint32_t g = 0;
    std::vector<std::uint32_t> dlog;  // size q; dlog[0] unused
    std::vector<cplx> roots;          // roots[t] = e(t/(q-1)), t in [0, q-2]

    std::uint32_t order() const { return q - 1; }

    // chi_j(n); 0 when q | n
    cplx chi(std::uint32_t j, std::uint64_t n) const {
        const std::uint64_t r = n % q;
        if (r == 0) return 0.0;
        const std::uint64_t t = (static_cast<std::uint64_t>(j) * dlog[r]) % order();
        return roots[t];
    }
};

namespace detail {
inline std::vector<std::uint32_t> prime_factors_of(std::uint32_t n) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}
} // namespace detail

inline CharacterGroup build_group(std::uint32_t q) {
    if (q == 2) throw std::domain_error("build_group: q = 2 has no non-principal characters");
    if (!is_prime(q) || q < 3)
        throw std::domain_error("build_group: modulus " + std::to_string(q) + " is not an odd prime");

    CharacterGroup G;
    G.q = q;
    const std::uint32_t ord = q - 1;
    const auto factors = detail::prime_factors_of(ord);

    for (std::uint32_t g = 2; g < q; ++g) {
        bool primitive = true;
        for (std::uint32_t r : factors) {
            if (detail::powmod_u64(g, ord / r, q) == 1) { primitive = false; break; }
        }
        if (primitive) { G.g = g; break; }
    }
    if (G.g == 0) throw std::logic_error("build_group: no primitive root found");

    G.dlog.assign(q, 0);
    std::uint64_t x = 1;
    for (std::uint32_t k = 0; k < ord; ++k) {
        G.dlog[x] = k;
        x = x * G.g % q;
    }
    if (x != 1) throw std::logic_error("build_group: primitive root verification failed");

    G.roots.resize(ord);
    for (std::uint32_t t = 0; t < ord; ++t)
        G.roots[t] = unit_phase(static_cast<double>(t) / ord);
    return G;
}

struct DirichletCharacter {
    const CharacterGroup* group = nullptr;
    std::uint32_t j = 0;

    bool is_principal() const { return j == 0; }
    std::uint32_t q() const { return group->q; }
};

inline DirichletCharacter character(const CharacterGroup& G, std::uint32_t j) {
    if (j >= G.order()) throw std::out_of_range("character: index out of range");
    return {&G, j};
}

inline cplx chi_eval(const DirichletCharacter& chi, std::uint64_t n) {
    return chi.group->chi(chi.j, n);
}

inline DirichletCharacter conjugate(const DirichletCharacter& chi) {
    const std::uint32_t ord = chi.group->order();
    return {chi.group, chi.j == 0 ? 0u : ord - chi.j};
}

// chi(-1). Since dlog(q-1) = (q-1)/2, this is e(j/2) = (-1)^j, exactly.
inline int parity(const DirichletCharacter& chi) {
    return (chi.j % 2 == 0) ? +1 : -1;
}

// tau(chi) = sum_a chi(a) e(a/q); |tau| = sqrt(q) for non-principal chi.
inline cplx gauss_sum(const DirichletCharacter& chi) {
    if (chi.is_principal())
        throw std::domain_error("gauss_sum: principal character");
    const CharacterGroup& G = *chi.group;
    cplx acc = 0.0;
    for (std::uint32_t a = 1; a < G.q; ++a)
        acc += G.chi(chi.j, a) * unit_phase(static_cast<double>(a) / G.q);
    return acc;
}

} // namespace wold
