#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "wold/common.hpp"
#include "wold/constants.hpp"

namespace wold {

inline constexpr double kZetaPoleRadius = 1e-8;

// Hurwitz zeta by Euler-Maclaurin with injectable correction coefficients
// (the selftest uses this hook for fault injection). coeffs[k] = B_{2k}/(2k)!.
inline cplx hurwitz_zeta_em(cplx s, double a, std::span<const double> coeffs) {
    if (!(a > 0.0 && a <= 1.0))
        throw std::domain_error("hurwitz_zeta: requires a in (0, 1]");
    if (std::abs(s - cplx(1.0, 0.0)) < kZetaPoleRadius)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");

    // Shift length N = max(30, ceil(2|Im s|)); correction depth 25.
    const int N = std::max(30, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
    cplx acc = 0.0;
    for (int n = 0; n < N; ++n) acc += cpow_real(n + a, -s);

    const double w = N + a;
    acc += cpow_real(w, 1.0 - s) / (s - 1.0);
    const cplx wms = cpow_real(w, -s);
    acc += 0.5 * wms;

    const double w2inv = 1.0 / (w * w);
    cplx rising = s;          // (s)_{2k-1} = s(s+1)...(s+2k-2)
    cplx wpow = wms / w;      // w^{-s-2k+1}
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        const cplx term = coeffs[k] * rising * wpow;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        wpow *= w2inv;
    }
    return acc;
}

inline cplx hurwitz_zeta(cplx s, double a) {
    const auto& c = em_coefficients();
    return hurwitz_zeta_em(s, a, std::span<const double>(c.data(), c.size()));
}

inline cplx riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

} // namespace wold
