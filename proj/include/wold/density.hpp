#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wold/moments.hpp"
#include "wold/primes.hpp"
#include "wold/testfuncs.hpp"
#include "wold/zeros.hpp"

namespace wold {

// |L(s, chi)|^2 for every chi in F_q; the slot j = 0 (principal) stays zero.
struct WeightVector {
    std::uint32_t q = 0;
    double s = 0.0;
    std::vector<double> w;
    double total = 0.0;
};

inline WeightVector weight_vector(const CharacterGroup& G, double s) {
    if (!(s >= 0.5 && s < 1.0))
        throw std::domain_error("weight_vector: requires s in [1/2, 1)");
    WeightVector wv;
    wv.q = G.q;
    wv.s = s;
    const std::vector<cplx> L = l_values_all(G, cplx(s, 0.0));
    wv.w.assign(G.order(), 0.0);
    for (std::uint32_t j = 1; j < G.order(); ++j) wv.w[j] = std::norm(L[j]);
    for (std::uint32_t j = 1; j < G.order(); ++j) wv.total += wv.w[j];
    if (!(wv.total > 0.0))
        throw std::runtime_error("weight_vector: vanishing total weight");
    return wv;
}

// sum_chi w_chi (chi(m) + conj chi(m)) / sum_chi w_chi, a real value in [-2, 2].
inline double weighted_char_avg(const CharacterGroup& G, const WeightVector& wv,
                                std::uint64_t m) {
    if (m % G.q == 0) return 0.0;
    if (std::gcd(m, static_cast<std::uint64_t>(G.q)) != 1)
        throw std::domain_error("weighted_char_avg: m must be coprime to q");
    const std::uint32_t ord = G.order();
    const std::uint32_t d = G.dlog[m % G.q];
    double acc = 0.0;
    std::uint64_t idx = d;
    for (std::uint32_t j = 1; j < ord; ++j) {
        acc += wv.w[j] * G.roots[idx].real();
        idx += d;
        if (idx >= ord) idx -= ord;
    }
    return 2.0 * acc / wv.total;
}

namespace detail {
// Primes contributing to M^{(k)}: p <= q^{alpha/k} (phi_hat vanishes beyond).
inline double prime_cutoff(std::uint32_t q, double alpha, int k) {
    return std::exp(alpha / k * std::log(static_cast<double>(q)));
}

inline void require_table(const PrimeTable& primes, double cutoff) {
    if (static_cast<double>(primes.limit) < cutoff)
        throw std::domain_error(
            "prime table too small: need primes up to " + std::to_string(cutoff) +
            " but table stops at " + std::to_string(primes.limit));
}

// Shared shape of the M^{(k)} sums; avg(p^k) supplies the character average.
template <class Avg>
double m_term_generic(std::uint32_t q, int k, const TestFunction& phi,
                      const PrimeTable& primes, Avg&& avg) {
    const double logq = std::log(static_cast<double>(q));
    const double cutoff = prime_cutoff(q, phi.alpha, k);
    require_table(primes, cutoff);
    double acc = 0.0;
    for (std::uint32_t p : primes.primes) {
        if (static_cast<double>(p) > cutoff + 0.5) break;
        const double lp = std::log(static_cast<double>(p));
        const double u = k * lp / logq;
        if (u > phi.alpha) continue;
        std::uint64_t pk = p;
        for (int i = 1; i < k; ++i) pk *= p;
        acc += avg(pk) * phi.phi_hat(u) * lp / std::pow(static_cast<double>(p), k / 2.0);
    }
    return acc / logq;
}
} // namespace detail

// M_q^{(k)}(s) = (1/log q) sum_p avg(p^k) phi_hat(k log p / log q) log p / p^{k/2}.
inline double m_term(const CharacterGroup& G, const WeightVector& wv, int k,
                     const TestFunction& phi, const PrimeTable& primes) {
    if (k != 1 && k != 2) throw std::domain_error("m_term: k must be 1 or 2");
    return detail::m_term_generic(G.q, k, phi, primes, [&](std::uint64_t pk) {
        return weighted_char_avg(G, wv, pk);
    });
}

// One value of the weighted one-level density with its component breakdown.
struct DensityStatistic {
    std::uint32_t q = 0;
    double s = 0.0;
    std::string phi;
    double alpha = 0.0;
    std::string mode; // prime_side or zero_side
    double value = 0.0;
    double phi_hat_zero = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double tail_bound = 0.0;
    bool support_ok = true;
};

// Theorem hypotheses on supp(phi_hat): [-2s/3, 2s/3] for s > 1/2; [-1/3, 1/3]
// at s = 1/2 (the widened [-1/2, 1/2] variant sits behind widen_support).
inline bool support_hypothesis_ok(double s, double alpha, bool widen_support) {
    const double tol = 1e-12;
    if (s == 0.5) return alpha <= (widen_support ? 0.5 : 1.0 / 3.0) + tol;
    return alpha <= 2.0 * s / 3.0 + tol;
}

inline DensityStatistic one_level_primeside(const CharacterGroup& G,
                                            const WeightVector& wv,
                                            const TestFunction& phi,
                                            const PrimeTable& primes,
                                            bool widen_support = false) {
    DensityStatistic st;
    st.q = G.q;
    st.s = wv.s;
    st.phi = phi.name;
    st.alpha = phi.alpha;
    st.mode = "prime_side";
    st.phi_hat_zero = phi.phi_hat(0.0);
    st.m1 = m_term(G, wv, 1, phi, primes);
    st.m2 = m_term(G, wv, 2, phi, primes);
    st.value = st.phi_hat_zero - st.m1 - st.m2;
    st.support_ok = support_hypothesis_ok(wv.s, phi.alpha, widen_support);
    return st;
}

// Explicit-formula prime side of D(chi, phi) for a single character,
// truncated form: phi_hat(0) - S_1 - S_2 (the archimedean terms and k >= 3
// prime powers land in the O(1/log q) remainder).
inline ZeroSideSum d_primeside_char(const CharacterGroup& G, const DirichletCharacter& chi,
                                    const TestFunction& phi, const PrimeTable& primes) {
    double s1 = detail::m_term_generic(G.q, 1, phi, primes, [&](std::uint64_t pk) {
        return 2.0 * chi_eval(chi, pk).real();
    });
    double s2 = detail::m_term_generic(G.q, 2, phi, primes, [&](std::uint64_t pk) {
        return 2.0 * chi_eval(chi, pk).real();
    });
    return {phi.phi_hat(0.0) - s1 - s2, 0.0};
}

// Archimedean side of the exact explicit formula:
// (1/log q) int phi(x) [log(q/pi) + Re psi((1/2+a)/2 + i pi x / log q)] dx.
// The log(q/pi) piece integrates to phi_hat(0) exactly; the digamma piece is
// quadrature on [0, X] plus the analytic mean-envelope tail.
inline double archimedean_term(const TestFunction& phi, std::uint32_t q, int parity_bit) {
    const double logq = std::log(static_cast<double>(q));
    const double c = 0.25 + 0.5 * parity_bit;
    const double scale = kPi / logq;
    const double X = phi.decay_order >= 4 ? 300.0 : 4000.0;

    auto integrand = [&](double x) {
        return phi.phi(x) * digamma(cplx(c, scale * x)).real();
    };
    double psi_int = 0.0;
    const double chunk = 0.5 * phi.osc_period;
    double x0 = 0.0;
    while (x0 < X) {
        const double x1 = std::min(X, x0 + chunk);
        psi_int += adaptive_simpson(integrand, x0, x1, 1e-9);
        x0 = x1;
    }
    psi_int *= 2.0; // even integrand
    // tail: phi(x) ~ env_coeff * env_tail_mean / x^d on average, Re psi ~ log(scale x)
    const double d = static_cast<double>(phi.decay_order);
    psi_int += 2.0 * phi.env_coeff * phi.env_tail_mean * std::pow(X, 1.0 - d) *
               (std::log(scale * X) / (d - 1.0) + 1.0 / ((d - 1.0) * (d - 1.0)));

    return (std::log(static_cast<double>(q) / kPi) * phi.phi_hat(0.0) + psi_int) / logq;
}

// Exact explicit formula for D(chi, phi): archimedean term minus the prime
// power sums over every k with q^{alpha/k} >= 2. No O(1/log q) remainder;
// what is left against a certified zero list is only the zero-sum tail and
// quadrature truncation.
inline ZeroSideSum d_primeside_char_exact(const CharacterGroup& G,
                                          const DirichletCharacter& chi,
                                          const TestFunction& phi,
                                          const PrimeTable& primes) {
    const double logq = std::log(static_cast<double>(G.q));
    const int parity_bit = (chi.j % 2 == 0) ? 0 : 1;
    double value = archimedean_term(phi, G.q, parity_bit);
    const int k_max = std::max(1, static_cast<int>(phi.alpha * logq / std::log(2.0)));
    for (int k = 1; k <= k_max; ++k) {
        value -= detail::m_term_generic(G.q, k, phi, primes, [&](std::uint64_t pk) {
            return 2.0 * chi_eval(chi, pk).real();
        });
    }
    return {value, 0.0};
}

// Weighted zero-side statistic from precomputed family zero lists (the lists
// are s-independent, so sweeps reuse them across weights and test functions).
inline DensityStatistic one_level_zeroside_from_lists(const WeightVector& wv,
                                                      const std::vector<ZeroList>& lists,
                                                      const TestFunction& phi,
                                                      bool widen_support = false) {
    DensityStatistic st;
    st.q = wv.q;
    st.s = wv.s;
    st.phi = phi.name;
    st.alpha = phi.alpha;
    st.mode = "zero_side";
    st.phi_hat_zero = phi.phi_hat(0.0);
    st.support_ok = support_hypothesis_ok(wv.s, phi.alpha, widen_support);
    double num = 0.0, tail = 0.0;
    for (const ZeroList& zl : lists) {
        const ZeroSideSum d = one_level_from_zeros(zl, phi); // throws if incomplete
        num += wv.w[zl.j] * d.value;
        tail += wv.w[zl.j] * d.tail_bound;
    }
    st.value = num / wv.total;
    st.tail_bound = tail / wv.total;
    return st;
}

inline std::vector<ZeroList> family_zero_lists(const LContext& ctx, double T) {
    std::vector<std::uint32_t> js;
    for (std::uint32_t j = 1; j < ctx.G().order(); ++j) js.push_back(j);
    return scan_zeros_many(ctx, js, T);
}

// Weighted zero side: sum_chi w_chi D(chi, phi) / sum_chi w_chi from certified
// zero lists of every character in the family.
inline DensityStatistic one_level_zeroside(const LContext& ctx, double s,
                                           const TestFunction& phi, double T,
                                           bool widen_support = false) {
    const WeightVector wv = weight_vector(ctx.G(), s);
    return one_level_zeroside_from_lists(wv, family_zero_lists(ctx, T), phi,
                                         widen_support);
}

// Unweighted zero side: (1 / #F_q) sum_chi D(chi, phi).
inline DensityStatistic unweighted_zeroside(const LContext& ctx, const TestFunction& phi,
                                            double T) {
    const CharacterGroup& G = ctx.G();
    const std::vector<ZeroList> lists = family_zero_lists(ctx, T);
    DensityStatistic st;
    st.q = G.q;
    st.s = -1.0; // unweighted
    st.phi = phi.name;
    st.alpha = phi.alpha;
    st.mode = "zero_side";
    st.phi_hat_zero = phi.phi_hat(0.0);
    st.support_ok = phi.alpha <= 2.0 + 1e-12;
    double num = 0.0, tail = 0.0;
    for (const ZeroList& zl : lists) {
        const ZeroSideSum d = one_level_from_zeros(zl, phi);
        num += d.value;
        tail += d.tail_bound;
    }
    const double count = static_cast<double>(lists.size());
    st.value = num / count;
    st.tail_bound = tail / count;
    return st;
}

// Unweighted prime side. The character average over the full group vanishes
// for p^k != 1 (mod q) by orthogonality, and no prime power below q^alpha is
// 1 mod q when alpha < 1, so the value is exactly phi_hat(0) there. (Dropping
// the principal character shifts the average by O(1/q), inside the stated
// remainder.)
inline DensityStatistic unweighted_primeside(const CharacterGroup& G,
                                             const TestFunction& phi,
                                             const PrimeTable& primes) {
    DensityStatistic st;
    st.q = G.q;
    st.s = -1.0;
    st.phi = phi.name;
    st.alpha = phi.alpha;
    st.mode = "prime_side";
    st.phi_hat_zero = phi.phi_hat(0.0);
    st.support_ok = phi.alpha <= 2.0 + 1e-12;
    auto avg = [&](std::uint64_t pk) { return pk % G.q == 1 ? 2.0 : 0.0; };
    st.m1 = detail::m_term_generic(G.q, 1, phi, primes, avg);
    st.m2 = detail::m_term_generic(G.q, 2, phi, primes, avg);
    st.value = st.phi_hat_zero - st.m1 - st.m2;
    return st;
}

struct ExperimentConfig {
    std::vector<std::uint32_t> qs;
    std::vector<double> ss;
    std::vector<TestFunction> phis;
    std::string mode = "prime"; // prime | zero
    double T = 30.0;
    bool widen_support = false;
};

struct ExperimentRow {
    DensityStatistic stat;
    double target = 0.0;
    double dev = 0.0;
};

inline double density_target(const TestFunction& phi, double s) {
    if (s == 0.5) return kernel_integral(phi, kernel_wu1());
    return kernel_integral(phi, kernel_wu());
}

// The sweep behind the density CLI: rows in config order (q, then s, then phi).
inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
    std::vector<ExperimentRow> rows;
    double max_alpha = 0.0;
    for (const auto& f : cfg.phis) max_alpha = std::max(max_alpha, f.alpha);
    std::uint64_t max_q = 0;
    for (std::uint32_t q : cfg.qs) max_q = std::max<std::uint64_t>(max_q, q);
    // support-violating runs still compute, so size the sieve for alpha up to 2
    const double cutoff = std::pow(static_cast<double>(max_q), std::min(max_alpha, 2.0));
    const PrimeTable primes = sieve_primes(std::max<std::uint64_t>(
        8, static_cast<std::uint64_t>(cutoff) + 2));

    for (std::uint32_t q : cfg.qs) {
        const CharacterGroup G = build_group(q); // validates primality
        std::vector<ZeroList> lists;
        if (cfg.mode == "zero") {
            const LContext ctx = make_lcontext(G);
            lists = family_zero_lists(ctx, cfg.T); // shared across (s, phi)
        }
        std::vector<WeightVector> wvs;
        for (double s : cfg.ss) wvs.push_back(weight_vector(G, s));
        for (std::size_t si = 0; si < cfg.ss.size(); ++si) {
            for (const TestFunction& phi : cfg.phis) {
                ExperimentRow row;
                if (cfg.mode == "zero") {
                    row.stat = one_level_zeroside_from_lists(wvs[si], lists, phi,
                                                             cfg.widen_support);
                } else {
                    row.stat = one_level_primeside(G, wvs[si], phi, primes,
                                                   cfg.widen_support);
                }
                row.target = density_target(phi, cfg.ss[si]);
                row.dev = row.stat.value - row.target;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

} // namespace wold
