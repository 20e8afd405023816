#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wold/common.hpp"
#include "wold/quadrature.hpp"

namespace wold {

inline double sinc(double u) {
    if (std::abs(u) < 1e-6) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

// A Paley-Wiener pair: phi on the x side, phi_hat supported in [-alpha, alpha]
// (Fourier convention phi_hat(xi) = int phi(x) e^{-2 pi i xi x} dx). The tail
// envelope |phi(x)| <= env_coeff * |x|^{-decay_order} feeds truncation bounds.
struct TestFunction {
    std::string name;
    double alpha = 0.0;
    int decay_order = 0;
    double env_coeff = 0.0;
    double env_tail_mean = 0.5;   // mean of phi(x) x^decay / env_coeff at large x
    double osc_period = 1.0;      // oscillation period of phi (quadrature chunking)
    std::vector<double> hat_knots; // kink locations of phi_hat in [0, alpha]
    std::function<double(double)> phi;
    std::function<double(double)> phi_hat;
};

// phi_hat(xi) = max(0, 1 - |xi|/beta); phi(x) = beta * sinc^2(pi beta x).
inline TestFunction triangle(double beta) {
    if (beta <= 0.0) throw std::domain_error("triangle: beta must be positive");
    TestFunction f;
    f.name = "triangle:" + std::to_string(beta);
    f.alpha = beta;
    f.decay_order = 2;
    f.env_coeff = 1.0 / (kPi * kPi * beta);
    f.env_tail_mean = 0.5; // mean of sin^2
    f.osc_period = 1.0 / beta;
    f.hat_knots = {0.0, beta};
    f.phi = [beta](double x) {
        const double s = sinc(kPi * beta * x);
        return beta * s * s;
    };
    f.phi_hat = [beta](double xi) {
        const double u = std::abs(xi) / beta;
        return u >= 1.0 ? 0.0 : 1.0 - u;
    };
    return f;
}

namespace detail {
// Cubic B-spline on [-2, 2] (fourfold convolution of the unit box).
inline double bspline3(double t) {
    t = std::abs(t);
    if (t >= 2.0) return 0.0;
    if (t <= 1.0) return 2.0 / 3.0 - t * t + 0.5 * t * t * t;
    const double u = 2.0 - t;
    return u * u * u / 6.0;
}
} // namespace detail

// phi_hat = normalized self-convolution of the triangle: (3/2) B3(xi/beta),
// supported in [-2 beta, 2 beta]; phi(x) = (3 beta / 2) sinc^4(pi beta x).
inline TestFunction triangle_conv(double beta) {
    if (beta <= 0.0) throw std::domain_error("triangle_conv: beta must be positive");
    TestFunction f;
    f.name = "triangle2:" + std::to_string(beta);
    f.alpha = 2.0 * beta;
    f.decay_order = 4;
    f.env_coeff = 1.5 / (kPi * kPi * kPi * kPi * beta * beta * beta);
    f.env_tail_mean = 0.375; // mean of sin^4
    f.osc_period = 1.0 / beta;
    f.hat_knots = {0.0, beta, 2.0 * beta};
    f.phi = [beta](double x) {
        const double s = sinc(kPi * beta * x);
        return 1.5 * beta * s * s * s * s;
    };
    f.phi_hat = [beta](double xi) { return 1.5 * detail::bspline3(xi / beta); };
    return f;
}

struct DensityKernel {
    std::string name;
    std::function<double(double)> eval;
};

// W_U = 1 (unitary symmetry type).
inline DensityKernel kernel_wu() {
    return {"W_U", [](double) { return 1.0; }};
}

// W_U^1(x) = 1 - sin^2(pi x)/(pi x)^2, the GUE pair-correlation kernel.
inline DensityKernel kernel_wu1() {
    return {"W_U1", [](double x) {
                const double u = kPi * x;
                if (std::abs(u) < 1e-4) return u * u / 3.0 - 2.0 * u * u * u * u / 45.0;
                const double s = std::sin(u) / u;
                return 1.0 - s * s;
            }};
}

inline double kernel_eval(const DensityKernel& k, double x) { return k.eval(x); }

// int phi W with the kernel folded to the hat side. W_U gives phi_hat(0);
// W_U^1 gives phi_hat(0) - phi(0) + int phi_hat(x)|x| dx, valid for alpha <= 1.
inline double kernel_integral(const TestFunction& f, const DensityKernel& k) {
    if (k.name == "W_U") return f.phi_hat(0.0);
    if (k.name != "W_U1")
        throw std::invalid_argument("kernel_integral: unknown kernel " + k.name);
    if (f.alpha > 1.0 + 1e-12)
        throw std::domain_error(
            "kernel_integral: W_U1 route requires supp(phi_hat) within [-1, 1]");
    // phi_hat|x| is even; integrate twice [0, alpha] split at the kinks.
    std::vector<double> knots = f.hat_knots;
    if (knots.empty() || knots.front() != 0.0) knots.insert(knots.begin(), 0.0);
    if (knots.back() < f.alpha) knots.push_back(f.alpha);
    const double weighted =
        2.0 * integrate_with_knots([&](double x) { return f.phi_hat(x) * x; }, knots);
    return f.phi_hat(0.0) - f.phi(0.0) + weighted;
}

// Transforms of the window eta = indicator of [-1,1] (1/2 at the endpoints)
// and of |x| eta(x): (2 sin(2 pi xi)/(2 pi xi), same - sin^2(pi xi)/(pi xi)^2).
inline std::pair<double, double> window_transforms(double xi) {
    const double a = 2.0 * sinc(kTwoPi * xi);
    const double s = sinc(kPi * xi);
    return {a, a - s * s};
}

// Parses the CLI naming convention "triangle:<beta>" / "triangle2:<beta>";
// beta accepts decimals or fractions like 1/3.
inline TestFunction parse_test_function(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("test function spec must be family:beta, got " + spec);
    const std::string family = spec.substr(0, colon);
    const std::string betas = spec.substr(colon + 1);
    double beta;
    if (const auto slash = betas.find('/'); slash != std::string::npos) {
        beta = std::stod(betas.substr(0, slash)) / std::stod(betas.substr(slash + 1));
    } else {
        beta = std::stod(betas);
    }
    if (family == "triangle") return triangle(beta);
    if (family == "triangle2") return triangle_conv(beta);
    throw std::invalid_argument("unknown test function family " + family);
}

} // namespace wold
