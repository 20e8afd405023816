#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wold/characters.hpp"

using wold::cplx;

TEST_CASE("build_group small moduli") {
    auto G5 = wold::build_group(5);
    CHECK(G5.g == 2);
    CHECK(G5.dlog[1] == 0);
    CHECK(G5.dlog[2] == 1);
    CHECK(G5.dlog[4] == 2);
    CHECK(G5.dlog[3] == 3);

    auto G7 = wold::build_group(7);
    CHECK(G7.g == 3); // 2 has order 3 mod 7

    CHECK_THROWS_AS(wold::build_group(4), std::domain_error);
    CHECK_THROWS_AS(wold::build_group(2), std::domain_error);
}

TEST_CASE("primitive root order check at q = 1009") {
    auto G = wold::build_group(1009);
    // 1008 = 2^4 * 3^2 * 7
    for (std::uint32_t r : {2u, 3u, 7u})
        CHECK(wold::detail::powmod_u64(G.g, 1008 / r, 1009) != 1);
    // dlog is a bijection [1, q-1] -> [0, q-2]
    std::vector<std::uint8_t> seen(1008, 0);
    for (std::uint32_t n = 1; n < 1009; ++n) {
        CHECK(G.dlog[n] < 1008);
        seen[G.dlog[n]] = 1;
    }
    for (auto s : seen) CHECK(s == 1);
}

TEST_CASE("character evaluation mod 5") {
    auto G = wold::build_group(5);
    auto chi = wold::character(G, 1);
    CHECK(std::abs(wold::chi_eval(chi, 2) - cplx(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(wold::chi_eval(chi, 4) - cplx(-1.0, 0.0)) < 1e-14);
    CHECK(wold::chi_eval(chi, 5) == cplx(0.0, 0.0));
    CHECK(wold::chi_eval(chi, 10) == cplx(0.0, 0.0));
}

TEST_CASE("conjugation") {
    auto G = wold::build_group(5);
    CHECK(wold::conjugate(wold::character(G, 1)).j == 3);
    for (std::uint32_t j = 0; j < 4; ++j)
        CHECK(wold::conjugate(wold::conjugate(wold::character(G, j))).j == j);
    // quadratic character is self-conjugate
    CHECK(wold::conjugate(wold::character(G, 2)).j == 2);
    // conj(chi)(n) == conj(chi(n))
    auto chi = wold::character(G, 1);
    auto chibar = wold::conjugate(chi);
    for (std::uint32_t n = 1; n < 5; ++n)
        CHECK(std::abs(wold::chi_eval(chibar, n) - std::conj(wold::chi_eval(chi, n))) < 1e-14);
}

TEST_CASE("parity") {
    auto G5 = wold::build_group(5);
    CHECK(wold::parity(wold::character(G5, 2)) == 1); // quadratic, chi(4) = 1
    auto G3 = wold::build_group(3);
    CHECK(wold::parity(wold::character(G3, 1)) == -1);
    for (std::uint32_t j = 1; j < 4; ++j) {
        auto chi = wold::character(G5, j);
        CHECK(wold::parity(chi) == wold::parity(wold::conjugate(chi)));
        // parity is chi(-1) = chi(q-1)
        CHECK(std::abs(wold::chi_eval(chi, 4) -
                       cplx(static_cast<double>(wold::parity(chi)), 0.0)) < 1e-14);
    }
}

TEST_CASE("gauss sums") {
    auto G5 = wold::build_group(5);
    const cplx tau = wold::gauss_sum(wold::character(G5, 2));
    CHECK(tau.real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(std::abs(tau.imag()) < 1e-12);
    CHECK_THROWS_AS(wold::gauss_sum(wold::character(G5, 0)), std::domain_error);

    // q = 3: tau = e(1/3) - e(2/3) = i sqrt(3)
    auto G3 = wold::build_group(3);
    const cplx tau3 = wold::gauss_sum(wold::character(G3, 1));
    CHECK(std::abs(tau3 - cplx(0.0, std::sqrt(3.0))) < 1e-14);

    auto G101 = wold::build_group(101);
    for (std::uint32_t j = 1; j < 100; ++j) {
        auto chi = wold::character(G101, j);
        const cplx t = wold::gauss_sum(chi);
        CHECK(std::abs(t) == doctest::Approx(std::sqrt(101.0)).epsilon(1e-10));
        // tau(conj chi) = chi(-1) conj(tau(chi))
        const cplx tc = wold::gauss_sum(wold::conjugate(chi));
        const cplx rhs = static_cast<double>(wold::parity(chi)) * std::conj(t);
        CHECK(std::abs(tc - rhs) < 1e-9);
    }
}

TEST_CASE("orthogonality over the full character group") {
    for (std::uint32_t q : {5u, 101u}) {
        auto G = wold::build_group(q);
        for (std::uint64_t m = 1; m < q; ++m) {
            cplx acc = 0.0;
            for (std::uint32_t j = 0; j < G.order(); ++j)
                acc += G.chi(j, m);
            const double expect = (m % q == 1) ? static_cast<double>(q - 1) : 0.0;
            CHECK(std::abs(acc.imag()) < 1e-10);
            CHECK(std::abs(acc.real() - expect) < 1e-8);
        }
    }
}

TEST_CASE("complete multiplicativity") {
    std::mt19937 rng(99);
    for (std::uint32_t q : {5u, 101u, 1009u}) {
        auto G = wold::build_group(q);
        std::uniform_int_distribution<std::uint64_t> pick(0, 3ULL * q);
        std::uniform_int_distribution<std::uint32_t> pj(0, G.order() - 1);
        for (int i = 0; i < 200; ++i) {
            const auto m = pick(rng), n = pick(rng);
            auto chi = wold::character(G, pj(rng));
            const cplx lhs = wold::chi_eval(chi, m * n);
            const cplx rhs = wold::chi_eval(chi, m) * wold::chi_eval(chi, n);
            CHECK(std::abs(lhs - rhs) < 1e-13);
        }
    }
}

TEST_CASE("family size is q - 2") {
    for (std::uint32_t q : {3u, 5u, 101u}) {
        auto G = wold::build_group(q);
        std::size_t nonprincipal = 0;
        for (std::uint32_t j = 0; j < G.order(); ++j)
            if (!wold::character(G, j).is_principal()) ++nonprincipal;
        CHECK(nonprincipal == q - 2);
    }
}

TEST_CASE("unit modulus on units") {
    auto G = wold::build_group(101);
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::uint32_t> pj(1, 99), pn(1, 100);
    for (int i = 0; i < 100; ++i)
        CHECK(std::abs(std::abs(wold::chi_eval(wold::character(G, pj(rng)), pn(rng))) - 1.0) <
              1e-14);
}
