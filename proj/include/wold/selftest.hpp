#pragma once

#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wold/density.hpp"
#include "wold/moments.hpp"
#include "wold/quadrature.hpp"
#include "wold/zeros.hpp"

namespace wold {

namespace selftest_detail {

// Second sieve implementation (Sundaram), kept separate from the library's
// wheel sieve so the cross-validation means something.
inline std::uint64_t prime_count_sundaram(std::uint64_t limit) {
    if (limit < 2) return 0;
    if (limit == 2) return 1;
    const std::uint64_t m = (limit - 1) / 2;
    std::vector<std::uint8_t> marked(m + 1, 0);
    for (std::uint64_t i = 1; i + i + 2 * i * i <= m; ++i)
        for (std::uint64_t j = i; i + j + 2 * i * j <= m; ++j)
            marked[i + j + 2 * i * j] = 1;
    std::uint64_t count = 1;
    for (std::uint64_t k = 1; k <= m; ++k)
        if (!marked[k]) ++count;
    return count;
}

// Euler-Maclaurin coefficients, optionally corrupted through the fault
// injection hook WOLD_SELFTEST_CORRUPT_BERNOULLI (test harness use).
inline std::vector<double> selftest_em_coeffs() {
    const auto& c = em_coefficients();
    std::vector<double> v(c.begin(), c.end());
    if (std::getenv("WOLD_SELFTEST_CORRUPT_BERNOULLI")) v[2] *= 1.001;
    return v;
}

struct Check {
    std::string name;
    std::function<std::string()> run; // empty string = pass, else detail
};

} // namespace selftest_detail

// Runs the invariant suite at small scale (q <= 211); returns 0 iff all pass.
// One line per check. The heavier acceptance grids live in the test suite.
inline int selftest_run(std::ostream& out) {
    using selftest_detail::Check;
    std::vector<Check> checks;

    checks.push_back({"bernoulli-table", []() -> std::string {
        if (kBernoulliEven[1].den != 6 || static_cast<long long>(kBernoulliEven[1].num) != 1)
            return "B_2 != 1/6";
        if (kBernoulliEven[2].den != 30 || static_cast<long long>(kBernoulliEven[2].num) != -1)
            return "B_4 != -1/30";
        return "";
    }});

    checks.push_back({"euler-gamma-limit", []() -> std::string {
        const int n = 100000;
        long double h = 0.0L;
        for (int i = 1; i <= n; ++i) h += 1.0L / i;
        const double approx = static_cast<double>(
            h - std::log(static_cast<long double>(n)) - 0.5L / n + 1.0L / (12.0L * n) / n);
        if (std::abs(approx - kEulerGamma) > 1e-12) return "limit mismatch";
        return "";
    }});

    checks.push_back({"sieve-crossvalidation", []() -> std::string {
        const std::uint64_t xs[] = {1000, 100000, 10000000};
        const std::uint64_t expected[] = {168, 9592, 664579};
        auto table = sieve_primes(10000000);
        for (int i = 0; i < 3; ++i) {
            std::uint64_t count = 0;
            for (auto p : table.primes)
                if (p <= xs[i]) ++count;
            if (count != expected[i])
                return "wheel sieve pi(" + std::to_string(xs[i]) + ") = " + std::to_string(count);
            if (selftest_detail::prime_count_sundaram(xs[i]) != expected[i])
                return "sundaram pi(" + std::to_string(xs[i]) + ") mismatch";
        }
        return "";
    }});

    checks.push_back({"hurwitz-identity", []() -> std::string {
        const auto coeffs = selftest_detail::selftest_em_coeffs();
        std::mt19937 rng(1234);
        std::uniform_real_distribution<double> re(0.05, 0.95), im(-50.0, 50.0);
        for (int i = 0; i < 50; ++i) {
            const cplx s(re(rng), im(rng));
            const cplx lhs = hurwitz_zeta_em(s, 0.5, coeffs);
            const cplx rhs = (std::pow(cplx(2.0, 0.0), s) - 1.0) * hurwitz_zeta_em(s, 1.0, coeffs);
            if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) {
                std::ostringstream ss;
                ss << "zeta(s,1/2) = (2^s-1) zeta(s) violated at s = (" << s.real() << ", "
                   << s.imag() << ")";
                return ss.str();
            }
        }
        return "";
    }});

    checks.push_back({"hurwitz-laurent", []() -> std::string {
        const auto coeffs = selftest_detail::selftest_em_coeffs();
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            const cplx v = hurwitz_zeta_em(cplx(1.0 + eps, 0.0), 1.0, coeffs);
            if (std::abs(v.real() - 1.0 / eps - kEulerGamma) > 3.0 * eps)
                return "laurent expansion off at s = 1 + " + std::to_string(eps);
        }
        return "";
    }});

    checks.push_back({"gamma-reflection", []() -> std::string {
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> re(-1.9, 2.9), im(-30.0, 30.0);
        int tested = 0;
        while (tested < 40) {
            const cplx s(re(rng), im(rng));
            if (std::abs(s.imag()) < 0.05 && std::abs(s.real() - std::round(s.real())) < 0.05)
                continue;
            const cplx lhs = std::exp(log_gamma(s) + log_gamma(1.0 - s)) *
                             std::sin(kPi * s) / kPi;
            if (std::abs(lhs - 1.0) > 1e-10) return "reflection identity violated";
            ++tested;
        }
        return "";
    }});

    checks.push_back({"character-orthogonality", []() -> std::string {
        for (std::uint32_t q : {5u, 101u, 211u}) {
            auto G = build_group(q);
            for (std::uint64_t m = 1; m < q; ++m) {
                cplx acc = 0.0;
                for (std::uint32_t j = 0; j < G.order(); ++j) acc += G.chi(j, m);
                const double expect = (m == 1) ? static_cast<double>(q - 1) : 0.0;
                if (std::abs(acc.imag()) > 1e-10 || std::abs(acc.real() - expect) > 1e-8)
                    return "orthogonality off at q = " + std::to_string(q);
            }
        }
        return "";
    }});

    checks.push_back({"character-multiplicativity", []() -> std::string {
        std::mt19937 rng(5);
        for (std::uint32_t q : {101u, 211u}) {
            auto G = build_group(q);
            std::uniform_int_distribution<std::uint64_t> pick(0, 3ULL * q);
            std::uniform_int_distribution<std::uint32_t> pj(0, G.order() - 1);
            for (int i = 0; i < 200; ++i) {
                const auto m = pick(rng), n = pick(rng);
                const std::uint32_t j = pj(rng);
                if (std::abs(G.chi(j, m * n) - G.chi(j, m) * G.chi(j, n)) > 1e-13)
                    return "multiplicativity off at q = " + std::to_string(q);
            }
        }
        return "";
    }});

    checks.push_back({"gauss-sum-modulus", []() -> std::string {
        for (std::uint32_t q : {101u, 211u}) {
            auto G = build_group(q);
            for (std::uint32_t j : {1u, 2u, (q - 1) / 2, q - 2}) {
                const cplx tau = gauss_sum(character(G, j));
                if (std::abs(std::abs(tau) - std::sqrt(static_cast<double>(q))) > 1e-9)
                    return "|tau| != sqrt(q) at q = " + std::to_string(q);
            }
        }
        return "";
    }});

    checks.push_back({"functional-equation", []() -> std::string {
        std::mt19937 rng(31337);
        std::uniform_real_distribution<double> re(0.05, 0.95), im(-20.0, 20.0);
        for (std::uint32_t q : {3u, 5u, 101u}) {
            auto G = build_group(q);
            auto ctx = make_lcontext(G);
            std::uniform_int_distribution<std::uint32_t> pj(1, G.order() - 1);
            for (int i = 0; i < 8; ++i) {
                const cplx s(re(rng), im(rng));
                const std::uint32_t j = pj(rng);
                const cplx lhs = completed_l(ctx, character(G, j), s);
                const cplx rhs = ctx.root_number[j] *
                                 completed_l(ctx, character(G, G.order() - j), 1.0 - s);
                if (std::abs(lhs - rhs) > 1e-9 * std::abs(lhs))
                    return "functional equation residual > 1e-9 at q = " + std::to_string(q);
            }
        }
        return "";
    }});

    checks.push_back({"series-oracle", []() -> std::string {
        for (std::uint32_t q : {3u, 5u, 101u}) {
            auto G = build_group(q);
            for (double sigma : {1.7, 2.2, 2.8}) {
                auto chi = character(G, 1);
                const cplx s(sigma, 0.7);
                const std::uint64_t n =
                    std::min<std::uint64_t>(8000000, 200000 * q / 3);
                const auto o = l_series_oracle(chi, s, n);
                const cplx lv = l_value(G, chi, s);
                if (std::abs(lv - o.value) > 1e-8)
                    return "series disagreement at q = " + std::to_string(q);
            }
        }
        return "";
    }});

    checks.push_back({"hardy-realness", []() -> std::string {
        for (std::uint32_t q : {3u, 5u, 101u}) {
            auto G = build_group(q);
            auto ctx = make_lcontext(G);
            std::mt19937 rng(q);
            std::uniform_int_distribution<std::uint32_t> pj(1, G.order() - 1);
            for (double t = -30.0; t <= 30.0; t += 3.7) {
                const cplx z = hardy_z_complex(ctx, character(G, pj(rng)), t);
                if (std::abs(z.imag()) > 1e-8) return "rotated value not real";
            }
        }
        return "";
    }});

    checks.push_back({"zero-completeness", []() -> std::string {
        for (std::uint32_t q : {3u, 5u}) {
            auto G = build_group(q);
            auto ctx = make_lcontext(G);
            std::vector<std::uint32_t> js;
            for (std::uint32_t j = 1; j < G.order(); ++j) js.push_back(j);
            for (const auto& zl : scan_zeros_many(ctx, js, 30.0))
                if (!zl.complete)
                    return "incomplete list at q = " + std::to_string(q) +
                           ", j = " + std::to_string(zl.j);
        }
        {
            auto G = build_group(101);
            auto ctx = make_lcontext(G);
            for (const auto& zl : scan_zeros_many(ctx, {1, 17, 33, 50, 68, 99}, 30.0))
                if (!zl.complete) return "incomplete list at q = 101, j = " + std::to_string(zl.j);
        }
        return "";
    }});

    checks.push_back({"kernel-identities", []() -> std::string {
        if (std::abs(kernel_integral(triangle(1.0 / 3.0), kernel_wu1()) - 19.0 / 27.0) > 1e-8)
            return "triangle(1/3) against W_U1 != 19/27";
        if (std::abs(kernel_integral(triangle(1.0 / 3.0), kernel_wu()) - 1.0) > 1e-12)
            return "triangle(1/3) against W_U != 1";
        auto [a0, b0] = window_transforms(0.0);
        if (std::abs(a0 - 2.0) > 1e-12 || std::abs(b0 - 1.0) > 1e-12)
            return "window transforms at 0";
        for (double xi : {0.1, 0.7, 1.3}) {
            auto [wa, wb] = window_transforms(xi);
            const double qa = 2.0 * adaptive_simpson(
                [&](double x) { return std::cos(kTwoPi * xi * x); }, 0.0, 1.0, 1e-12);
            const double qb = 2.0 * adaptive_simpson(
                [&](double x) { return x * std::cos(kTwoPi * xi * x); }, 0.0, 1.0, 1e-12);
            if (std::abs(wa - qa) > 1e-8 || std::abs(wb - qb) > 1e-8)
                return "window transform quadrature mismatch";
        }
        return "";
    }});

    checks.push_back({"moment-realness", []() -> std::string {
        for (std::uint32_t q : {101u, 211u}) {
            MomentEngine eng(q);
            for (double s : {0.5, 0.75}) {
                for (std::uint64_t m : {1ULL, 2ULL, 3ULL}) {
                    const cplx v = brute_twisted_moment(eng, s, s, m, 1);
                    if (std::abs(v.imag()) > 1e-8 * std::abs(v))
                        return "imaginary part too large at q = " + std::to_string(q);
                }
            }
        }
        return "";
    }});

    checks.push_back({"density-identities", []() -> std::string {
        auto G = build_group(211);
        auto primes = sieve_primes(1000);
        auto phi = triangle(1.0 / 3.0);
        auto wv = weight_vector(G, 0.5);
        auto st = one_level_primeside(G, wv, phi, primes);
        if (st.value != st.phi_hat_zero - st.m1 - st.m2) return "component identity broken";
        auto un = unweighted_primeside(G, phi, primes);
        if (un.value != un.phi_hat_zero) return "unweighted prime side not exact";
        if (std::abs(weighted_char_avg(G, wv, 1) - 2.0) > 1e-14) return "avg(1) != 2";
        return "";
    }});

    int failures = 0;
    for (auto& c : checks) {
        const std::string detail = c.run();
        if (detail.empty()) {
            out << "ok   " << c.name << "\n";
        } else {
            out << "FAIL " << c.name << ": " << detail << "\n";
            ++failures;
        }
    }
    out << (failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
        << checks.size() - failures << "/" << checks.size() << " checks)\n";
    return failures == 0 ? 0 : 1;
}

} // namespace wold
