#pragma once

#include <cmath>
#include <stdexcept>

#include "wold/common.hpp"
#include "wold/constants.hpp"

namespace wold {

namespace detail {

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 &&
           z.real() == std::floor(z.real());
}

// Stirling series, requires Re z reasonably large (callers shift first).
inline cplx log_gamma_stirling(cplx z) {
    const auto& c = stirling_coefficients();
    const cplx lz = std::log(z);
    cplx acc = (z - 0.5) * lz - z + 0.5 * std::log(kTwoPi);
    const cplx z2inv = 1.0 / (z * z);
    cplx zpow = 1.0 / z; // z^{-(2k-1)}
    for (int k = 1; k <= 12; ++k) {
        acc += c[static_cast<std::size_t>(k - 1)] * zpow;
        zpow *= z2inv;
    }
    return acc;
}

// log(sin(pi z)) with overflow protection for large |Im z|. The value always
// exponentiates to sin(pi z); the branch is principal only for moderate |Im|.
inline cplx log_sin_pi(cplx z) {
    if (std::abs(z.imag()) < 16.0) return std::log(std::sin(kPi * z));
    const cplx ipz = cplx(0.0, kPi) * z;
    const cplx log_half_i = cplx(-std::log(2.0), kPi / 2.0); // log(i/2)
    if (z.imag() > 0.0)
        return -ipz + std::log(1.0 - std::exp(2.0 * ipz)) + log_half_i;
    return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) + std::conj(log_half_i);
}

} // namespace detail

// Principal branch of log Gamma for Re z > 0 (continuous, real on the
// positive axis). For Re z < 1/2 the reflection formula is used; there the
// value still satisfies exp(log_gamma(z)) == Gamma(z) but the imaginary part
// may differ from the analytic continuation by a multiple of 2*pi.
inline cplx log_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        return std::log(kPi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }
    cplx shift = 0.0;
    while (z.real() < 16.0 && std::abs(z) < 40.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return detail::log_gamma_stirling(z) - shift;
}

inline cplx cgamma(cplx z) { return std::exp(log_gamma(z)); }

inline cplx digamma(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw std::domain_error("digamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // psi(z) = psi(1-z) - pi*cot(pi*z)
        cplx cot;
        if (std::abs(z.imag()) > 16.0) {
            cot = (z.imag() > 0.0) ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
        } else {
            cot = std::cos(kPi * z) / std::sin(kPi * z);
        }
        return digamma(1.0 - z) - kPi * cot;
    }
    cplx shift = 0.0;
    while (z.real() < 16.0 && std::abs(z) < 40.0) {
        shift += 1.0 / z;
        z += 1.0;
    }
    const cplx z2inv = 1.0 / (z * z);
    cplx acc = std::log(z) - 0.5 / z;
    cplx zpow = z2inv; // z^{-2k}
    for (int k = 1; k <= 12; ++k) {
        // B_{2k}/(2k) * z^{-2k}
        acc -= bernoulli_even(k) / (2.0 * k) * zpow;
        zpow *= z2inv;
    }
    return acc - shift;
}

} // namespace wold
