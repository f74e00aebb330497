#pragma once

// Exact integer/rational helpers shared by every other header.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brieskorn/errors.hpp"

namespace brieskorn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Upper-bound sentinel for bounded_compositions.
inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ArgumentError("rational with zero denominator");
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
        return make_rational(BigInt(std::string(text.substr(0, slash))),
                             BigInt(std::string(text.substr(slash + 1))));
    } catch (const std::runtime_error&) {
        throw ArgumentError("malformed rational '" + std::string(text) + "'");
    }
}

inline BigInt floor_of(const Rational& r) {
    BigInt n = numerator_of(r);
    BigInt d = denominator_of(r);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

inline BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

namespace detail {

inline std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("64-bit product overflow");
    return out;
}

inline std::int64_t add_checked(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("64-bit sum overflow");
    return out;
}

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    return mul_checked(a / std::gcd(a, b), b);
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("value " + v.str() + " does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

}  // namespace detail

inline BigInt lcm_of(std::span<const std::int64_t> values) {
    BigInt out = 1;
    for (auto v : values) {
        BigInt bv = v;
        out = out / boost::multiprecision::gcd(out, bv) * bv;
    }
    return out;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

/// B_n with B_1 = -1/2, from sum_{k=0}^{n} C(n+1,k) B_k = 0. Memoized; thread safe.
inline Rational bernoulli(unsigned n) {
    static std::mutex mutex;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard lock(mutex);
    while (table.size() <= n) {
        const auto m = static_cast<std::int64_t>(table.size());
        Rational acc = 0;
        for (std::int64_t k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * table[k];
        table.push_back(-acc / (m + 1));
    }
    return table[n];
}

inline Rational bernoulli_even(std::int64_t index) {
    if (index < 2 || index % 2 != 0)
        throw ArgumentError("bernoulli_even needs an even index >= 2, got " + std::to_string(index));
    return bernoulli(static_cast<unsigned>(index));
}

struct BPOrder {
    std::int64_t m = 0;
    BigInt order;
};

/// |bP_{4m}| = 2^{2m-2} (2^{2m-1} - 1) numerator(|4 B_{2m} / m|).
inline BPOrder bp_order(std::int64_t m) {
    if (m < 2) throw ArgumentError("bp_order needs m >= 2, got " + std::to_string(m));
    Rational ratio = 4 * bernoulli_even(2 * m) / m;
    if (ratio < 0) ratio = -ratio;
    BigInt two_pow = BigInt(1) << static_cast<unsigned>(2 * m - 2);
    BigInt mersenne = (BigInt(1) << static_cast<unsigned>(2 * m - 1)) - 1;
    return {m, two_pow * mersenne * numerator_of(ratio)};
}

/// #{x in Z^parts : lo <= x_i <= hi, sum x_i = sigma} by inclusion-exclusion
/// over the upper bounds. hi == kUnbounded drops the upper bound.
inline BigInt bounded_compositions(std::int64_t sigma, std::int64_t parts, std::int64_t lo,
                                   std::int64_t hi) {
    if (lo > hi) throw ArgumentError("bounded_compositions needs lo <= hi");
    if (parts < 0) throw ArgumentError("bounded_compositions needs parts >= 0");
    // Shift to x_i >= 0.
    const BigInt rest = BigInt(sigma) - BigInt(parts) * lo;
    if (rest < 0) return 0;
    if (parts == 0) return rest == 0 ? 1 : 0;
    const std::int64_t free_sum = detail::to_int64(rest);
    if (hi == kUnbounded) return binomial(free_sum + parts - 1, parts - 1);
    const std::int64_t width = hi - lo + 1;
    BigInt total = 0;
    for (std::int64_t j = 0; j <= parts; ++j) {
        const BigInt left = BigInt(free_sum) - BigInt(j) * width;
        if (left < 0) break;
        BigInt term = binomial(parts, j) * binomial(detail::to_int64(left) + parts - 1, parts - 1);
        if (j % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

}  // namespace brieskorn
