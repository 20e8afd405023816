#pragma once

#include <array>
#include <cstdint>

#include "wold/common.hpp"

namespace wold {

using int128 = __int128;

namespace detail {
// Assemble a 128-bit integer from (hi * 10^18 + lo); hi carries the sign,
// lo must be passed with the same sign.
constexpr int128 i128(long long hi, long long lo) {
    return static_cast<int128>(hi) * 1000000000000000000LL + lo;
}
} // namespace detail

struct BernoulliRational {
    int128 num;
    long long den;
    double value() const {
        return static_cast<double>(static_cast<long double>(num) /
                                   static_cast<long double>(den));
    }
};

inline constexpr int kBernoulliMaxK = 25; // table holds B_{2k}, k = 0..25

// Even-indexed Bernoulli numbers B_{2k} as exact rationals.
inline constexpr std::array<BernoulliRational, kBernoulliMaxK + 1> kBernoulliEven = {{
    {detail::i128(0, 1), 1},                                   // B_0
    {detail::i128(0, 1), 6},                                   // B_2
    {detail::i128(0, -1), 30},                                 // B_4
    {detail::i128(0, 1), 42},                                  // B_6
    {detail::i128(0, -1), 30},                                 // B_8
    {detail::i128(0, 5), 66},                                  // B_10
    {detail::i128(0, -691), 2730},                             // B_12
    {detail::i128(0, 7), 6},                                   // B_14
    {detail::i128(0, -3617), 510},                             // B_16
    {detail::i128(0, 43867), 798},                             // B_18
    {detail::i128(0, -174611), 330},                           // B_20
    {detail::i128(0, 854513), 138},                            // B_22
    {detail::i128(0, -236364091), 2730},                       // B_24
    {detail::i128(0, 8553103), 6},                             // B_26
    {detail::i128(0, -23749461029LL), 870},                    // B_28
    {detail::i128(0, 8615841276005LL), 14322},                 // B_30
    {detail::i128(0, -7709321041217LL), 510},                  // B_32
    {detail::i128(0, 2577687858367LL), 6},                     // B_34
    {detail::i128(-26, -315271553053477373LL), 1919190},       // B_36
    {detail::i128(0, 2929993913841559LL), 6},                  // B_38
    {detail::i128(-261, -82718496449122051LL), 13530},         // B_40
    {detail::i128(1520, 97643918070802691LL), 1806},           // B_42
    {detail::i128(-27833, -269579301024235023LL), 690},        // B_44
    {detail::i128(596451, 111593912163277961LL), 282},         // B_46
    {detail::i128(-5609403368LL, -997817686249127547LL), 46410}, // B_48
    {detail::i128(495057205LL, 241079648212477525LL), 66},     // B_50
}};

inline double bernoulli_even(int k) { return kBernoulliEven.at(k).value(); }

// Euler-Maclaurin correction coefficients B_{2k}/(2k)! for the Hurwitz zeta.
inline const std::array<double, kBernoulliMaxK + 1>& em_coefficients() {
    static const std::array<double, kBernoulliMaxK + 1> table = [] {
        std::array<double, kBernoulliMaxK + 1> c{};
        long double fact = 1.0L; // (2k)!
        for (int k = 0; k <= kBernoulliMaxK; ++k) {
            if (k > 0) fact *= static_cast<long double>(2 * k - 1) * (2 * k);
            const auto& b = kBernoulliEven[static_cast<std::size_t>(k)];
            c[static_cast<std::size_t>(k)] = static_cast<double>(
                static_cast<long double>(b.num) /
                (static_cast<long double>(b.den) * fact));
        }
        return c;
    }();
    return table;
}

// Stirling-series coefficients B_{2k}/(2k(2k-1)) for log-gamma and digamma.
inline const std::array<double, kBernoulliMaxK>& stirling_coefficients() {
    static const std::array<double, kBernoulliMaxK> table = [] {
        std::array<double, kBernoulliMaxK> c{};
        for (int k = 1; k <= kBernoulliMaxK; ++k) {
            const auto& b = kBernoulliEven[static_cast<std::size_t>(k)];
            c[static_cast<std::size_t>(k - 1)] = static_cast<double>(
                static_cast<long double>(b.num) /
                (static_cast<long double>(b.den) * (2 * k) * (2 * k - 1)));
        }
        return c;
    }();
    return table;
}

} // namespace wold
