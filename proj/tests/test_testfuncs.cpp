#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wold/testfuncs.hpp"

TEST_CASE("triangle family closed forms") {
    auto f = wold::triangle(1.0 / 3.0);
    CHECK(f.alpha == doctest::Approx(1.0 / 3.0));
    CHECK(f.decay_order == 2);
    CHECK(f.phi_hat(0.0) == doctest::Approx(1.0));
    CHECK(f.phi(0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(f.phi(3.0) == doctest::Approx(0.0)); // sinc zero
    CHECK(f.phi(6.0) == doctest::Approx(0.0));
    CHECK(f.phi_hat(0.34) == 0.0);
    CHECK(f.phi_hat(1.0 / 3.0) == 0.0);
    CHECK_THROWS_AS(wold::triangle(0.0), std::domain_error);
}

TEST_CASE("triangle weighted hat integral") {
    auto f = wold::triangle(1.0 / 3.0);
    // int phi_hat(x)|x| dx = beta^2/3 = 1/27, by quadrature
    const double quad = 2.0 * wold::adaptive_simpson(
                                  [&](double x) { return f.phi_hat(x) * x; }, 0.0,
                                  f.alpha, 1e-12);
    CHECK(quad == doctest::Approx(1.0 / 27.0).epsilon(1e-9));
}

TEST_CASE("triangle_conv closed forms") {
    auto f = wold::triangle_conv(1.0 / 6.0);
    CHECK(f.alpha == doctest::Approx(1.0 / 3.0));
    CHECK(f.decay_order == 4);
    CHECK(f.phi_hat(0.0) == doctest::Approx(1.0));
    CHECK(f.phi(0.0) == doctest::Approx(0.25)); // 3 beta / 2
    CHECK(f.phi_hat(1.0 / 3.0) == 0.0);         // exactly zero at 2 beta
    CHECK(f.phi_hat(0.4) == 0.0);               // and beyond
    // int phi = phi_hat(0) = 1: x-side quadrature with DC tail
    auto e = oracle::triangle_conv_phi_oracle(1.0 / 6.0);
    const double total = oracle::kernel_x_integral_oracle(e, [](double) { return 1.0; }, 700.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("triangle_conv tail decay order") {
    auto f = wold::triangle_conv(1.0 / 6.0);
    double worst = 0.0;
    for (double x = 10.0; x <= 100.0; x += 0.37)
        worst = std::max(worst, std::abs(f.phi(x)) * x * x * x * x);
    CHECK(worst <= f.env_coeff * 1.0000001);
    CHECK(worst > 0.0);
}

TEST_CASE("fourier consistency of both families") {
    // forward transform against phi_hat, inside and outside the support
    auto f1 = wold::triangle(1.0 / 3.0);
    auto e1 = oracle::triangle_phi_oracle(1.0 / 3.0);
    for (double xi : {0.0, 0.1, 0.2, 1.0 / 3.0, 0.45, 0.55, 0.8, 1.1, 1.5, 2.3}) {
        const double direct = oracle::fourier_transform_oracle(e1, xi);
        CHECK(std::abs(direct - f1.phi_hat(xi)) < 1e-7);
    }
    auto f2 = wold::triangle_conv(1.0 / 6.0);
    auto e2 = oracle::triangle_conv_phi_oracle(1.0 / 6.0);
    for (double xi : {0.0, 0.05, 1.0 / 6.0, 0.25, 1.0 / 3.0, 0.45, 0.6, 0.9, 1.4, 2.0}) {
        const double direct = oracle::fourier_transform_oracle(e2, xi);
        CHECK(std::abs(direct - f2.phi_hat(xi)) < 1e-7);
    }
}

TEST_CASE("kernel evaluation") {
    auto w1 = wold::kernel_wu1();
    CHECK(wold::kernel_eval(w1, 0.0) == 0.0);
    CHECK(wold::kernel_eval(w1, 0.5) ==
          doctest::Approx(1.0 - 4.0 / (wold::kPi * wold::kPi)).epsilon(1e-13));
    for (int k = 1; k <= 5; ++k)
        CHECK(wold::kernel_eval(w1, static_cast<double>(k)) == doctest::Approx(1.0));
    // range [0, 1] on a dense grid
    for (double x = -10.0; x <= 10.0; x += 0.01) {
        const double v = wold::kernel_eval(w1, x);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    auto wu = wold::kernel_wu();
    CHECK(wold::kernel_eval(wu, 3.7) == 1.0);
}

TEST_CASE("kernel integrals") {
    auto f = wold::triangle(1.0 / 3.0);
    CHECK(wold::kernel_integral(f, wold::kernel_wu()) == doctest::Approx(1.0));
    // 1 - 1/3 + 1/27 = 19/27
    CHECK(wold::kernel_integral(f, wold::kernel_wu1()) ==
          doctest::Approx(19.0 / 27.0).epsilon(1e-10));
    auto f2 = wold::triangle_conv(1.0 / 6.0);
    // 1 - 3 beta/2 + 7 beta^2/10 = 1 - 1/4 + 7/360
    CHECK(wold::kernel_integral(f2, wold::kernel_wu1()) ==
          doctest::Approx(1.0 - 0.25 + 7.0 / 360.0).epsilon(1e-10));
    // hypothesis guard: alpha must stay within [-1, 1] for the W_U^1 route
    CHECK_THROWS_AS(wold::kernel_integral(wold::triangle(1.2), wold::kernel_wu1()),
                    std::domain_error);
    CHECK(wold::kernel_integral(wold::triangle(1.2), wold::kernel_wu()) ==
          doctest::Approx(1.0));
}

TEST_CASE("small-support limit of the W_U1 integral") {
    // as alpha -> 0 the weighted term vanishes like alpha^2
    for (double beta : {1e-2, 1e-3}) {
        auto f = wold::triangle(beta);
        const double v = wold::kernel_integral(f, wold::kernel_wu1());
        const double limit = f.phi_hat(0.0) - f.phi(0.0);
        CHECK(std::abs(v - limit) <= beta * beta);
    }
}

TEST_CASE("hat-side identity against direct x-side quadrature") {
    auto w1 = wold::kernel_wu1();
    auto f1 = wold::triangle(1.0 / 3.0);
    auto e1 = oracle::triangle_phi_oracle(1.0 / 3.0);
    const double direct1 = oracle::kernel_x_integral_oracle(e1, w1.eval, 1000.0);
    CHECK(std::abs(wold::kernel_integral(f1, w1) - direct1) < 1e-4);

    auto f2 = wold::triangle_conv(1.0 / 6.0);
    auto e2 = oracle::triangle_conv_phi_oracle(1.0 / 6.0);
    const double direct2 = oracle::kernel_x_integral_oracle(e2, w1.eval, 1000.0);
    CHECK(std::abs(wold::kernel_integral(f2, w1) - direct2) < 1e-4);
}

TEST_CASE("window transforms") {
    auto [a0, b0] = wold::window_transforms(0.0);
    CHECK(a0 == doctest::Approx(2.0));
    CHECK(b0 == doctest::Approx(1.0));
    auto [ah, bh] = wold::window_transforms(0.5);
    CHECK(ah == doctest::Approx(0.0));
    CHECK(bh == doctest::Approx(-4.0 / (wold::kPi * wold::kPi)).epsilon(1e-13));

    // against direct quadrature of the window and |x| * window
    for (double xi : {0.1, 0.7, 1.3, 0.35, 2.2}) {
        auto [wa, wb] = wold::window_transforms(xi);
        const double qa = 2.0 * wold::adaptive_simpson(
                                    [&](double x) { return std::cos(wold::kTwoPi * xi * x); },
                                    0.0, 1.0, 1e-12);
        const double qb = 2.0 * wold::adaptive_simpson(
                                    [&](double x) { return x * std::cos(wold::kTwoPi * xi * x); },
                                    0.0, 1.0, 1e-12);
        CHECK(std::abs(wa - qa) < 1e-8);
        CHECK(std::abs(wb - qb) < 1e-8);
    }
}

TEST_CASE("test function spec parsing") {
    auto f = wold::parse_test_function("triangle:0.25");
    CHECK(f.alpha == doctest::Approx(0.25));
    auto g = wold::parse_test_function("triangle2:1/6");
    CHECK(g.alpha == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(wold::parse_test_function("gauss:1"), std::invalid_argument);
    CHECK_THROWS_AS(wold::parse_test_function("triangle"), std::invalid_argument);
}
