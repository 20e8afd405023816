#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wold/characters.hpp"
#include "wold/gammafn.hpp"
#include "wold/parallel.hpp"
#include "wold/zeta.hpp"

namespace wold {

// Working envelope for l_value. The 1e-10 relative-accuracy guarantee is
// stated for Re s in [0.2, 3], |Im s| <= 200; the evaluation itself stays
// sound on this wider box (the functional-equation checks and the zero-count
// contour both need the full open strip).
inline bool l_value_domain_ok(cplx s) {
    return s.real() >= -1.0 && s.real() <= 3.5 && std::abs(s.imag()) <= 220.0;
}

// zeta(s, a/q) for a = 1..q-1.
inline std::vector<cplx> hurwitz_vector(std::uint32_t q, cplx s) {
    std::vector<cplx> z(q);
    parallel_for(q - 1, [&](std::size_t i) {
        const std::uint32_t a = static_cast<std::uint32_t>(i) + 1;
        z[a] = hurwitz_zeta(s, static_cast<double>(a) / q);
    });
    return z;
}

namespace detail {

// acc[j] += sum_a chi_j(a) * z[a] for j in [j0, j1). Walks the root table
// with stride dlog(a) instead of reducing j*dlog(a) mod (q-1) per element.
inline void char_inner_products(const CharacterGroup& G, const std::vector<cplx>& z,
                                std::uint32_t j0, std::uint32_t j1, cplx* acc) {
    const std::uint32_t ord = G.order();
    for (std::uint32_t a = 1; a < G.q; ++a) {
        const std::uint32_t d = G.dlog[a];
        const cplx za = z[a];
        std::uint64_t idx = static_cast<std::uint64_t>(j0) * d % ord;
        for (std::uint32_t j = j0; j < j1; ++j) {
            acc[j - j0] += G.roots[idx] * za;
            idx += d;
            if (idx >= ord) idx -= ord;
        }
    }
}

inline cplx l_at_one(const CharacterGroup& G, std::uint32_t j) {
    // L(1, chi) = -(1/q) sum_a chi(a) psi(a/q), valid for non-principal chi.
    cplx acc = 0.0;
    for (std::uint32_t a = 1; a < G.q; ++a)
        acc += G.chi(j, a) * digamma(cplx(static_cast<double>(a) / G.q, 0.0));
    return -acc / static_cast<double>(G.q);
}

} // namespace detail

// L(s, chi_j) for every j in [0, q-2] at once, via the Hurwitz decomposition
// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q). One shared zeta vector, then
// one inner product per character.
inline std::vector<cplx> l_values_all(const CharacterGroup& G, cplx s) {
    const std::uint32_t ord = G.order();
    const std::vector<cplx> z = hurwitz_vector(G.q, s);
    std::vector<cplx> L(ord, 0.0);
    const cplx qs = cpow_real(static_cast<double>(G.q), -s);
    const std::uint32_t block = std::max<std::uint32_t>(1, ord / (4 * worker_count()) + 1);
    const std::uint32_t nblocks = (ord + block - 1) / block;
    parallel_for(nblocks, [&](std::size_t bi) {
        const std::uint32_t j0 = static_cast<std::uint32_t>(bi) * block;
        const std::uint32_t j1 = std::min(ord, j0 + block);
        detail::char_inner_products(G, z, j0, j1, L.data() + j0);
    });
    for (auto& v : L) v *= qs;
    return L;
}

inline cplx l_value(const CharacterGroup& G, const DirichletCharacter& chi, cplx s) {
    if (chi.is_principal())
        throw std::domain_error("l_value: principal character not in the family");
    if (!l_value_domain_ok(s))
        throw std::domain_error("l_value: s outside the accuracy-guaranteed domain");
    if (std::abs(s - cplx(1.0, 0.0)) < kZetaPoleRadius)
        return detail::l_at_one(G, chi.j);
    const std::vector<cplx> z = hurwitz_vector(G.q, s);
    cplx acc = 0.0;
    detail::char_inner_products(G, z, chi.j, chi.j + 1, &acc);
    return acc * cpow_real(static_cast<double>(G.q), -s);
}

struct LSeriesValue {
    cplx value;
    double tail_bound; // zeta-tail estimate int_N^inf x^{-sigma} dx
};

// Plain truncated Dirichlet series; independent test oracle for Re s > 1.
inline LSeriesValue l_series_oracle(const DirichletCharacter& chi, cplx s,
                                    std::uint64_t n_terms) {
    if (s.real() <= 1.0)
        throw std::domain_error("l_series_oracle: requires Re s > 1");
    const CharacterGroup& G = *chi.group;
    cplx acc = 0.0;
    for (std::uint64_t n = 1; n <= n_terms; ++n) {
        if (n % G.q == 0) continue;
        acc += G.chi(chi.j, n) * cpow_real(static_cast<double>(n), -s);
    }
    const double sigma = s.real();
    const double tail = std::pow(static_cast<double>(n_terms), 1.0 - sigma) / (sigma - 1.0);
    return {acc, tail};
}

// Per-character data for the completed L-function: parity bit a and root
// number eps(chi) = tau(chi) / (i^a sqrt(q)).
struct LContext {
    const CharacterGroup* group = nullptr;
    std::vector<int> parity_bit;       // a in {0, 1}; indexed by j
    std::vector<cplx> root_number;     // eps(chi_j); j = 0 unused
    std::vector<double> half_arg_eps;  // arg(eps)/2, fixed phase per character

    const CharacterGroup& G() const { return *group; }
};

inline LContext make_lcontext(const CharacterGroup& G) {
    LContext ctx;
    ctx.group = &G;
    const std::uint32_t ord = G.order();
    ctx.parity_bit.assign(ord, 0);
    ctx.root_number.assign(ord, 0.0);
    ctx.half_arg_eps.assign(ord, 0.0);

    std::vector<cplx> eq(G.q); // e(a/q)
    for (std::uint32_t a = 1; a < G.q; ++a)
        eq[a] = unit_phase(static_cast<double>(a) / G.q);

    parallel_for(ord - 1, [&](std::size_t i) {
        const std::uint32_t j = static_cast<std::uint32_t>(i) + 1;
        const int a = (j % 2 == 0) ? 0 : 1;
        ctx.parity_bit[j] = a;
        cplx tau = 0.0;
        for (std::uint32_t n = 1; n < G.q; ++n) tau += G.chi(j, n) * eq[n];
        const cplx ia = (a == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
        const cplx eps = tau / (ia * std::sqrt(static_cast<double>(G.q)));
        ctx.root_number[j] = eps;
        ctx.half_arg_eps[j] = 0.5 * std::arg(eps);
    });
    return ctx;
}

// Lambda(s, chi) = (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi); satisfies
// Lambda(s, chi) = eps(chi) Lambda(1-s, conj(chi)).
inline cplx completed_l(const LContext& ctx, const DirichletCharacter& chi, cplx s) {
    const int a = ctx.parity_bit[chi.j];
    const cplx half = 0.5 * (s + static_cast<double>(a));
    const cplx pref = std::exp(half * std::log(static_cast<double>(chi.q()) / kPi) +
                               log_gamma(half));
    return pref * l_value(ctx.G(), chi, s);
}

// Phase theta(t, chi) with Z(t) = Re[e^{i theta} L(1/2+it, chi)] real up to
// rounding: theta = (t/2) log(q/pi) + Im log Gamma((1/2+a)/2 + it/2) - arg(eps)/2.
inline double hardy_theta(const LContext& ctx, std::uint32_t j, double t) {
    const int a = ctx.parity_bit[j];
    const cplx half(0.25 + 0.5 * a, 0.5 * t);
    return 0.5 * t * std::log(static_cast<double>(ctx.G().q) / kPi) +
           log_gamma(half).imag() - ctx.half_arg_eps[j];
}

// Hardy rotation applied to a precomputed L(1/2+it) value (batch scans).
inline cplx hardy_rotate(const LContext& ctx, std::uint32_t j, double t, cplx lval) {
    const double th = hardy_theta(ctx, j, t);
    return cplx(std::cos(th), std::sin(th)) * lval;
}

inline cplx hardy_z_complex(const LContext& ctx, const DirichletCharacter& chi, double t) {
    return hardy_rotate(ctx, chi.j, t, l_value(ctx.G(), chi, cplx(0.5, t)));
}

inline double hardy_z(const LContext& ctx, const DirichletCharacter& chi, double t) {
    return hardy_z_complex(ctx, chi, t).real();
}

} // namespace wold
