#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "wold/gammafn.hpp"
#include "wold/lfunctions.hpp"
#include "wold/zeta.hpp"

namespace wold {

// Brute-force vs formula-side twisted second moment at (q, s, s', m, n).
struct MomentReport {
    std::uint32_t q = 0;
    cplx s, s_prime;
    std::uint64_t m = 1, n = 1;
    cplx brute;
    cplx main_term;
    cplx observed_error;
    double normalized_error = 0.0;
};

// Owns the character group for one q and caches one L-value vector per s
// (each additional twist by (m, n) then costs O(q)).
class MomentEngine {
  public:
    explicit MomentEngine(std::uint32_t q) : group_(build_group(q)) {}

    const CharacterGroup& group() const { return group_; }

    const std::vector<cplx>& l_vector(cplx s) {
        const auto key = std::make_pair(s.real(), s.imag());
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, l_values_all(group_, s)).first;
        return it->second;
    }

  private:
    CharacterGroup group_;
    std::map<std::pair<double, double>, std::vector<cplx>> cache_;
};

namespace detail {
inline void check_twist(std::uint32_t q, std::uint64_t m, std::uint64_t n) {
    if (std::gcd(m, n) != 1)
        throw std::domain_error("twisted moment: m and n must be coprime");
    if (m % q == 0 || n % q == 0)
        throw std::domain_error("twisted moment: m, n must be coprime to q");
}
} // namespace detail

// sum_{chi in F_q} L(s, chi) L(s', conj chi) chi(m) conj(chi(n)),
// exact finite sum over the q-2 non-principal characters.
inline cplx brute_twisted_moment(MomentEngine& eng, cplx s, cplx s_prime,
                                 std::uint64_t m, std::uint64_t n) {
    const CharacterGroup& G = eng.group();
    detail::check_twist(G.q, m, n);
    const auto& Ls = eng.l_vector(s);
    const auto& Lsp = eng.l_vector(s_prime);
    const std::uint32_t ord = G.order();
    const std::uint32_t dm = G.dlog[m % G.q];
    const std::uint32_t dn = G.dlog[n % G.q];
    const std::uint32_t d = (dm + ord - dn) % ord; // exponent of chi(m) conj(chi(n))
    cplx acc = 0.0;
    std::uint64_t idx = d; // = j*d at j = 1
    for (std::uint32_t j = 1; j < ord; ++j) {
        acc += Ls[j] * Lsp[ord - j] * G.roots[idx];
        idx += d;
        if (idx >= ord) idx -= ord;
    }
    return acc;
}

// Both displayed main terms of Selberg's formula; diagonal s + s' = 1 is
// served by the closed forms below instead.
inline cplx selberg_main_term(std::uint32_t q, cplx s, cplx s_prime,
                              std::uint64_t m, std::uint64_t n) {
    detail::check_twist(q, m, n);
    if (std::abs(s + s_prime - 1.0) <= 1e-6)
        throw std::domain_error(
            "selberg_main_term: s + s' = 1 diagonal; use central_main_term / bettin_main_term");
    const double qd = static_cast<double>(q);
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    const cplx first = (qd - 1.0) / (cpow_real(md, s_prime) * cpow_real(nd, s)) *
                       riemann_zeta(s + s_prime);
    const cplx second = (qd - 1.0) * cpow_real(qd, 1.0 - s - s_prime) /
                        (cpow_real(md, 1.0 - s) * cpow_real(nd, 1.0 - s_prime)) *
                        cpow_real(kTwoPi, s + s_prime - 1.0) / kPi *
                        cgamma(1.0 - s) * cgamma(1.0 - s_prime) *
                        std::cos(kPi / 2.0 * (s - s_prime)) *
                        riemann_zeta(2.0 - s - s_prime);
    return first + second;
}

// (q-1) m^{-1/2} (log q - log m + gamma - log 8 pi): the L'Hopital limit of
// Selberg's main term at s = s' = 1/2, n = 1.
inline double central_main_term(std::uint32_t q, std::uint64_t m) {
    if (std::gcd(static_cast<std::uint64_t>(q), m) != 1)
        throw std::domain_error("central_main_term: m must be coprime to q");
    const double qd = static_cast<double>(q), md = static_cast<double>(m);
    return (qd - 1.0) / std::sqrt(md) *
           (std::log(qd) - std::log(md) + kEulerGamma - kLog8Pi);
}

// (q-1) (mn)^{-1/2} (log(q/(mn)) + gamma - log 8 pi), valid for q >= 4mn.
inline double bettin_main_term(std::uint32_t q, std::uint64_t m, std::uint64_t n) {
    detail::check_twist(q, m, n);
    if (static_cast<std::uint64_t>(q) < 4 * m * n)
        throw std::domain_error("bettin_main_term: requires q >= 4mn");
    const double qd = static_cast<double>(q);
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    return (qd - 1.0) / std::sqrt(mn) * (std::log(qd / mn) + kEulerGamma - kLog8Pi);
}

// (q-1)^2 / q * log q: the classical second-moment asymptotic.
inline double paley_moment(std::uint32_t q) {
    const double qd = static_cast<double>(q);
    return (qd - 1.0) * (qd - 1.0) / qd * std::log(qd);
}

// Main term of the normalized weight ratio sum |L|^2 chi(m) / sum |L|^2:
// m^{-s} for s in (1/2, 1), and m^{-1/2}(1 - log m / log q) at s = 1/2.
inline double predict_weight_ratio(std::uint32_t q, double s, std::uint64_t m) {
    if (!(s >= 0.5 && s < 1.0))
        throw std::domain_error("predict_weight_ratio: requires s in [1/2, 1)");
    if (std::gcd(static_cast<std::uint64_t>(q), m) != 1)
        throw std::domain_error("predict_weight_ratio: m must be coprime to q");
    const double md = static_cast<double>(m);
    if (s == 0.5)
        return 1.0 / std::sqrt(md) * (1.0 - std::log(md) / std::log(static_cast<double>(q)));
    return std::pow(md, -s);
}

// Normalization scale for the observed error: Bettin's error scale on the
// diagonal, Selberg's (m q^{1-sigma} + n q^{1-sigma'} + mn q^{1-sigma-sigma'})
// off it.
inline double moment_error_scale(std::uint32_t q, cplx s, cplx s_prime,
                                 std::uint64_t m, std::uint64_t n) {
    const double qd = static_cast<double>(q);
    const double md = static_cast<double>(m), nd = static_cast<double>(n);
    if (std::abs(s + s_prime - 1.0) <= 1e-6)
        return std::sqrt(md * nd) * std::sqrt(qd) * std::log(qd);
    const double sg = s.real(), sgp = s_prime.real();
    return md * std::pow(qd, 1.0 - sg) + nd * std::pow(qd, 1.0 - sgp) +
           md * nd * std::pow(qd, 1.0 - sg - sgp);
}

inline MomentReport moment_report(MomentEngine& eng, cplx s, cplx s_prime,
                                  std::uint64_t m, std::uint64_t n) {
    MomentReport r;
    r.q = eng.group().q;
    r.s = s;
    r.s_prime = s_prime;
    r.m = m;
    r.n = n;
    r.brute = brute_twisted_moment(eng, s, s_prime, m, n);
    if (std::abs(s + s_prime - 1.0) <= 1e-6) {
        if (std::abs(s - cplx(0.5, 0.0)) > 1e-9 || std::abs(s_prime - cplx(0.5, 0.0)) > 1e-9)
            throw std::domain_error(
                "moment_report: diagonal s + s' = 1 supported only at s = s' = 1/2");
        // n = 1 takes the central form, which has no q >= 4mn restriction
        // (its value may go non-positive for large m; callers flag that)
        r.main_term = (n == 1) ? central_main_term(r.q, m) : bettin_main_term(r.q, m, n);
    } else {
        r.main_term = selberg_main_term(r.q, s, s_prime, m, n);
    }
    r.observed_error = r.brute - r.main_term;
    r.normalized_error = std::abs(r.observed_error) / moment_error_scale(r.q, s, s_prime, m, n);
    return r;
}

} // namespace wold
