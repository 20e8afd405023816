#pragma once

#include <complex>
#include <stdexcept>
#include <cmath>
#include <cstdint>

namespace wold {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
// Euler-Mascheroni constant, lim (H_n - log n)
inline constexpr double kEulerGamma = 0.57721566490153286061;
// log(8*pi), the constant appearing in the central second-moment main term
inline constexpr double kLog8Pi = 3.22417142752923593851;

// exp(s * log(base)) for base > 0; cheaper than std::pow(complex, complex)
inline cplx cpow_real(double base, cplx s) {
    const double lb = std::log(base);
    const double mag = std::exp(s.real() * lb);
    const double ang = s.imag() * lb;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

// e^{2 pi i x}
inline cplx unit_phase(double x) {
    return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

} // namespace wold
