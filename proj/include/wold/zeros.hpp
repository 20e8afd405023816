#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wold/lfunctions.hpp"
#include "wold/testfuncs.hpp"

namespace wold {

// Critical-line ordinates of one L(s, chi) in [-T, T], with a completeness
// certificate from an argument-principle count.
struct ZeroList {
    std::uint32_t q = 0;
    std::uint32_t j = 0;
    double T = 0.0; // effective height (jittered if the contour needed it)
    std::vector<double> ordinates;
    std::size_t found_count = 0;
    double expected_count = 0.0;
    bool complete = false;
    std::vector<std::pair<double, double>> failed_brackets;
};

namespace detail {

struct ContourNearZero : std::runtime_error {
    ContourNearZero() : std::runtime_error("contour passes near a zero") {}
};

// Lambda(s) for Re s >= 1/2, eps * Lambda(1-s, conj chi) otherwise; both sides
// agree by the functional equation, so the walk stays continuous across 1/2.
inline cplx contour_value(const LContext& ctx, std::uint32_t j, cplx s) {
    const CharacterGroup& G = ctx.G();
    if (s.real() >= 0.5) return completed_l(ctx, character(G, j), s);
    const std::uint32_t jc = G.order() - j;
    return ctx.root_number[j] * completed_l(ctx, character(G, jc), 1.0 - s);
}

inline double phase_walk_segment(const LContext& ctx, std::uint32_t j, cplx sa,
                                 cplx sb, cplx fa, cplx fb, int depth) {
    if (std::abs(fa) == 0.0 || std::abs(fb) == 0.0) throw ContourNearZero{};
    const double dphi = std::arg(fb / fa);
    if (std::abs(dphi) <= 1.0) return dphi;
    if (depth <= 0) throw ContourNearZero{};
    const cplx sm = 0.5 * (sa + sb);
    const cplx fm = contour_value(ctx, j, sm);
    return phase_walk_segment(ctx, j, sa, sm, fa, fm, depth - 1) +
           phase_walk_segment(ctx, j, sm, sb, fm, fb, depth - 1);
}

// Winding number of Lambda around the rectangle [1/2-w, 1/2+w] x [-T, T].
inline double winding_count(const LContext& ctx, std::uint32_t j, double T) {
    const double w = 1.0;
    const double q = static_cast<double>(ctx.G().q);
    const double step_v =
        std::min(0.25, 2.0 / std::log(q * (T + 3.0) / kTwoPi));
    const cplx corners[5] = {
        {0.5 + w, -T}, {0.5 + w, T}, {0.5 - w, T}, {0.5 - w, -T}, {0.5 + w, -T}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        const cplx a = corners[e], b = corners[e + 1];
        const double len = std::abs(b - a);
        const double step = (e % 2 == 0) ? step_v : 0.125;
        const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
        cplx fa = contour_value(ctx, j, a);
        for (int i = 0; i < n; ++i) {
            const cplx sa = a + (b - a) * (static_cast<double>(i) / n);
            const cplx sb = a + (b - a) * (static_cast<double>(i + 1) / n);
            const cplx fb = contour_value(ctx, j, sb);
            total += phase_walk_segment(ctx, j, sa, sb, fa, fb, 28);
            fa = fb;
        }
    }
    return total / kTwoPi;
}

} // namespace detail

// Argument-principle count of zeros with |Im rho| <= T. If the contour runs
// too close to a zero, the height is nudged upward and retried; the height
// actually used is reported through *t_used.
inline double expected_count(const LContext& ctx, const DirichletCharacter& chi,
                             double T, double* t_used = nullptr) {
    if (T <= 0.0) throw std::domain_error("expected_count: requires T > 0");
    double t = T;
    for (int attempt = 0; attempt < 5; ++attempt) {
        try {
            const double c = detail::winding_count(ctx, chi.j, t);
            if (t_used) *t_used = t;
            return c;
        } catch (const detail::ContourNearZero&) {
            t = T + 0.0137 * (attempt + 1);
        }
    }
    throw std::runtime_error("expected_count: contour near a zero after 5 jitter attempts (q=" +
                             std::to_string(ctx.G().q) + ", j=" + std::to_string(chi.j) + ")");
}

inline double zero_scan_step(std::uint32_t q, double T) {
    // one eighth of the mean zero gap 2*pi / log(qT / 2*pi)
    const double mean_gap = kTwoPi / std::log(static_cast<double>(q) * std::max(T, 1.0) / kTwoPi);
    return mean_gap / 8.0;
}

namespace detail {

inline void refine_brackets(const LContext& ctx, std::uint32_t j,
                            const std::vector<std::pair<double, double>>& brackets,
                            double t_cap, ZeroList& out) {
    const CharacterGroup& G = ctx.G();
    const DirichletCharacter chi = character(G, j);
    for (auto [a, b] : brackets) {
        double fa = hardy_z(ctx, chi, a);
        double fb = hardy_z(ctx, chi, b);
        if (std::isnan(fa) || std::isnan(fb) ||
            (fa < 0.0) == (fb < 0.0)) {
            out.failed_brackets.emplace_back(a, b);
            continue;
        }
        bool ok = true;
        while (b - a > 1e-9) {
            const double m = 0.5 * (a + b);
            const double fm = hardy_z(ctx, chi, m);
            if (std::isnan(fm)) { ok = false; break; }
            if ((fm < 0.0) == (fa < 0.0)) { a = m; fa = fm; }
            else { b = m; fb = fm; }
        }
        if (!ok) { out.failed_brackets.emplace_back(a, b); continue; }
        const double gamma = 0.5 * (a + b);
        if (std::abs(gamma) <= t_cap) out.ordinates.push_back(gamma);
    }
}

} // namespace detail

namespace detail {

// One batched scan pass at grid step h: sign-change brackets are gathered from
// shared Hurwitz vectors, refined per character, and certified.
inline void scan_pass(const LContext& ctx, const std::vector<std::uint32_t>& js,
                      std::vector<ZeroList*> lists, double t_max, double h) {
    const CharacterGroup& G = ctx.G();
    const std::uint32_t q = G.q;
    const std::size_t nj = js.size();
    const std::size_t npts = static_cast<std::size_t>(std::ceil(2.0 * t_max / h)) + 1;
    const double dt = 2.0 * t_max / static_cast<double>(npts - 1);

    // grid values Z_j(t_i), laid out per grid point
    std::vector<double> zgrid(npts * nj);
    parallel_for(npts, [&](std::size_t i) {
        const double t = -t_max + dt * static_cast<double>(i);
        const std::vector<cplx> zv = hurwitz_vector(q, cplx(0.5, t));
        const cplx qs = cpow_real(static_cast<double>(q), cplx(-0.5, -t));
        for (std::size_t k = 0; k < nj; ++k) {
            cplx acc = 0.0;
            detail::char_inner_products(G, zv, js[k], js[k] + 1, &acc);
            zgrid[i * nj + k] = hardy_rotate(ctx, js[k], t, acc * qs).real();
        }
    });

    parallel_for(nj, [&](std::size_t k) {
        ZeroList& zl = *lists[k];
        zl.ordinates.clear();
        zl.failed_brackets.clear();
        std::vector<std::pair<double, double>> brackets;
        const double cap = zl.T;
        for (std::size_t i = 0; i + 1 < npts; ++i) {
            const double ta = -t_max + dt * static_cast<double>(i);
            const double tb = ta + dt;
            if (tb < -cap || ta > cap) continue;
            const double fa = zgrid[i * nj + k];
            const double fb = zgrid[(i + 1) * nj + k];
            if ((fa < 0.0) != (fb < 0.0)) brackets.emplace_back(ta, tb);
        }
        detail::refine_brackets(ctx, js[k], brackets, cap, zl);
        std::sort(zl.ordinates.begin(), zl.ordinates.end());
        zl.ordinates.erase(std::unique(zl.ordinates.begin(), zl.ordinates.end(),
                                       [](double a, double b) { return b - a < 2e-9; }),
                           zl.ordinates.end());
        zl.found_count = zl.ordinates.size();
        const double expect = zl.expected_count;
        zl.complete = std::abs(expect - std::round(expect)) <= 0.25 &&
                      static_cast<long long>(zl.found_count) ==
                          static_cast<long long>(std::llround(expect)) &&
                      zl.failed_brackets.empty();
    });
}

} // namespace detail

// Scans [-T, T] for several characters at once. The Hurwitz zeta vector at
// each grid height is shared across all requested characters; bracket
// refinement and counting then run per character. Characters whose count
// certificate fails (a close zero pair hiding inside one grid cell) are
// rescanned on finer grids before being reported incomplete.
inline std::vector<ZeroList> scan_zeros_many(const LContext& ctx,
                                             const std::vector<std::uint32_t>& js,
                                             double T) {
    if (T <= 0.0) throw std::domain_error("scan_zeros: requires T > 0");
    const CharacterGroup& G = ctx.G();
    const std::uint32_t q = G.q;
    const std::size_t nj = js.size();

    std::vector<ZeroList> lists(nj);
    parallel_for(nj, [&](std::size_t i) {
        lists[i].q = q;
        lists[i].j = js[i];
        lists[i].expected_count =
            expected_count(ctx, character(G, js[i]), T, &lists[i].T);
    });

    double t_max = T;
    for (const auto& zl : lists) t_max = std::max(t_max, zl.T);
    const double h = zero_scan_step(q, t_max);

    std::vector<ZeroList*> ptrs(nj);
    for (std::size_t i = 0; i < nj; ++i) ptrs[i] = &lists[i];
    detail::scan_pass(ctx, js, ptrs, t_max, h);

    for (double divisor : {6.0, 36.0}) {
        std::vector<std::uint32_t> retry_js;
        std::vector<ZeroList*> retry_ptrs;
        for (std::size_t i = 0; i < nj; ++i) {
            if (!lists[i].complete) {
                retry_js.push_back(js[i]);
                retry_ptrs.push_back(&lists[i]);
            }
        }
        if (retry_js.empty()) break;
        detail::scan_pass(ctx, retry_js, retry_ptrs, t_max, h / divisor);
    }
    return lists;
}

inline ZeroList scan_zeros(const LContext& ctx, const DirichletCharacter& chi, double T) {
    return scan_zeros_many(ctx, {chi.j}, T).front();
}

// Reported bound on sum_{|gamma| > T} |phi((log q / 2 pi) gamma)| using the
// decay envelope of phi and the mean zero density (1/2 pi) log(q t / 2 pi).
inline double zero_sum_tail_bound(const TestFunction& phi, std::uint32_t q, double T) {
    const double lambda = std::log(static_cast<double>(q)) / kTwoPi;
    const double d = static_cast<double>(phi.decay_order);
    const double c = phi.env_coeff / std::pow(lambda, d);
    const double t0 = std::max(T, 1.0);
    double bound = (c / kPi) * std::pow(t0, 1.0 - d) *
                   (std::log(static_cast<double>(q) * t0) / (d - 1.0) +
                    1.0 / ((d - 1.0) * (d - 1.0)));
    if (T < 1.0) {
        bound += (c / kPi) * std::log(3.0 * static_cast<double>(q)) *
                 (std::pow(T, 1.0 - d) - 1.0) / (d - 1.0);
    }
    return bound;
}

struct ZeroSideSum {
    double value = 0.0;
    double tail_bound = 0.0;
};

// D(chi, phi) = sum_gamma phi((log q / 2 pi) gamma) over the certified list.
inline ZeroSideSum one_level_from_zeros(const ZeroList& zl, const TestFunction& phi) {
    if (!zl.complete) {
        const long long deficit = static_cast<long long>(std::llround(zl.expected_count)) -
                                  static_cast<long long>(zl.found_count);
        throw std::runtime_error("one_level_from_zeros: incomplete zero list (q=" +
                                 std::to_string(zl.q) + ", j=" + std::to_string(zl.j) +
                                 ", deficit=" + std::to_string(deficit) + ")");
    }
    const double lambda = std::log(static_cast<double>(zl.q)) / kTwoPi;
    double acc = 0.0;
    for (double g : zl.ordinates) acc += phi.phi(lambda * g);
    return {acc, zero_sum_tail_bound(phi, zl.q, zl.T)};
}

} // namespace wold
