#pragma once

// Generators for the infinite families of Sasaki-Einstein homotopy spheres
// and Brieskorn's reference spheres. Generators only build vectors and
// attach expectations; signatures are left to lattice.hpp.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brieskorn/arith.hpp"
#include "brieskorn/errors.hpp"
#include "brieskorn/stability.hpp"
#include "brieskorn/topology.hpp"

namespace brieskorn {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace detail

/// Deterministic for all 64-bit inputs (first twelve prime bases).
inline bool is_prime(std::int64_t value) {
    if (value < 2) return false;
    const auto n = static_cast<std::uint64_t>(value);
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto b : bases) {
        std::uint64_t x = detail::pow_mod(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Primes in the open interval (lo, hi), ascending.
inline std::vector<std::int64_t> primes_in_interval(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw ArgumentError("primes_in_interval needs lo < hi");
    std::vector<std::int64_t> out;
    const std::int64_t first = std::max<std::int64_t>(2, detail::to_int64(floor_of(lo)) + 1);
    const std::int64_t last = detail::to_int64(ceil_of(hi)) - 1;
    for (std::int64_t v = first; v <= last; ++v)
        if (is_prime(v)) out.push_back(v);
    return out;
}

enum class FamilyKind { OddDim, Standard, Exotic, BrieskornRef };

inline const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::OddDim: return "odd";
        case FamilyKind::Standard: return "standard";
        case FamilyKind::Exotic: return "exotic";
        case FamilyKind::BrieskornRef: return "ref";
    }
    return "?";
}

struct FamilySpec {
    FamilyKind kind = FamilyKind::OddDim;
    std::vector<std::pair<std::string, std::int64_t>> params;  // as supplied, in order
    std::vector<std::int64_t> vector;
    std::int64_t n = 0;
    BigInt d;  // lcm of the vector

    // Bookkeeping that only some variants fill.
    std::optional<std::int64_t> s, p, q, l;
    std::vector<std::int64_t> chosen_primes;
    Rational prime_interval_lo, prime_interval_hi;

    // Expectations.
    SphereCondition expected_condition = SphereCondition::None;
    std::optional<int> expected_arf;
    std::optional<BigInt> expected_tau;
    std::optional<BigInt> expected_class;  // in [0, |bP_{4m}|), when the construction guarantees it
    std::optional<BigInt> target_class;    // (-1)^m k mod |bP_{4m}| for the exotic family
    std::optional<BigInt> bp;              // |bP_{4m}| for even n
    std::optional<BigInt> index;           // I_a
    std::optional<bool> contact_distinguishable;  // m does not divide I_a

    [[nodiscard]] ExponentVector exponents() const { return ExponentVector(vector); }
};

namespace detail {

inline void attach_common(FamilySpec& spec) {
    spec.n = static_cast<std::int64_t>(spec.vector.size()) - 1;
    spec.d = lcm_of(spec.vector);
    BigInt index = -spec.d;
    for (auto v : spec.vector) index += spec.d / v;
    spec.index = index;
}

inline void require_se_sphere(const FamilySpec& spec, SphereCondition expected) {
    const auto a = spec.exponents();
    const auto sphere = classify_sphere(a);
    if (!sphere.is_homotopy_sphere || sphere.condition != expected)
        throw InvariantViolation(std::string("generated ") + to_string(spec.kind) +
                                 " vector is not a homotopy sphere via the expected condition");
    if (!k_stability(a).k_polystable)
        throw InvariantViolation(std::string("generated ") + to_string(spec.kind) + " vector is not K-polystable");
}

inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace detail

/// n = 2m+1: a = (2, 2, 2p_2, ..., 2p_{n-1}, p_n) with the n-2 largest
/// primes in ((n-2) p_n / (2(n-1)), p_n / 2).
inline FamilySpec gen_odd_dim(std::int64_t m, std::int64_t p_n) {
    if (m < 2) throw ArgumentError("gen_odd_dim needs m >= 2");
    if (!is_prime(p_n)) throw ArgumentError("gen_odd_dim needs a prime p_n, got " + std::to_string(p_n));
    const std::int64_t n = 2 * m + 1;
    FamilySpec spec;
    spec.kind = FamilyKind::OddDim;
    spec.params = {{"m", m}, {"p_n", p_n}};
    spec.prime_interval_lo = Rational((n - 2) * p_n, 2 * (n - 1));
    spec.prime_interval_hi = Rational(p_n, 2);
    const auto primes = primes_in_interval(spec.prime_interval_lo, spec.prime_interval_hi);
    if (static_cast<std::int64_t>(primes.size()) < n - 2)
        throw Refusal("gen_odd_dim: only " + std::to_string(primes.size()) + " primes in (" +
                      to_string(spec.prime_interval_lo) + ", " + to_string(spec.prime_interval_hi) + "), need " +
                      std::to_string(n - 2));
    spec.chosen_primes.assign(primes.end() - (n - 2), primes.end());
    spec.vector = {2, 2};
    for (auto q : spec.chosen_primes) spec.vector.push_back(2 * q);
    spec.vector.push_back(p_n);
    detail::attach_common(spec);
    spec.expected_condition = SphereCondition::Cond2;
    const auto residue = p_n % 8;
    spec.expected_arf = (residue == 3 || residue == 5) ? 1 : 0;
    detail::require_se_sphere(spec, SphereCondition::Cond2);
    return spec;
}

/// n = 2m, s = n-1: a = (s, ..., s, p, q) with p = sk+1, q = sp-1.
inline FamilySpec gen_standard(std::int64_t m, std::int64_t k) {
    if (m < 2) throw ArgumentError("gen_standard needs m >= 2");
    if (k < 2) throw ArgumentError("gen_standard needs k >= 2");
    const std::int64_t n = 2 * m;
    const std::int64_t s = n - 1;
    const std::int64_t p = detail::add_checked(detail::mul_checked(s, k), 1);
    const std::int64_t q = detail::mul_checked(s, p) - 1;
    if (std::gcd(s, p) != 1 || std::gcd(s, q) != 1 || std::gcd(p, q) != 1)
        throw Refusal("gen_standard: s, p, q are not pairwise coprime");
    if (!(s < p && p < q && q < s * p)) throw Refusal("gen_standard: s < p < q < sp fails");

    FamilySpec spec;
    spec.kind = FamilyKind::Standard;
    spec.params = {{"m", m}, {"k", k}};
    spec.vector.assign(static_cast<std::size_t>(n - 1), s);
    spec.vector.push_back(p);
    spec.vector.push_back(q);
    spec.s = s;
    spec.p = p;
    spec.q = q;
    detail::attach_common(spec);
    spec.bp = bp_order(m).order;
    spec.expected_condition = SphereCondition::Cond1;
    if (BigInt(k) % (16 * *spec.bp) == 0) spec.expected_class = BigInt(0);
    detail::require_se_sphere(spec, SphereCondition::Cond1);
    return spec;
}

/// I_a mod m for the exotic shape: -p^2 - 2pl - 2p - 3l.
inline std::int64_t exotic_index_residue(std::int64_t m, std::int64_t p, std::int64_t l) {
    const BigInt bp = p, bl = l;
    return static_cast<std::int64_t>(detail::mod_floor(-bp * bp - 2 * bp * bl - 2 * bp - 3 * bl, m));
}

/// l in {6k-3, 6k-1} making m not divide I_a (6k-3 preferred).
inline std::int64_t exotic_l_for(std::int64_t m, std::int64_t k, std::int64_t q) {
    for (std::int64_t l : {6 * k - 3, 6 * k - 1}) {
        const std::int64_t p = q * l * (l - 1) + 2;
        if (exotic_index_residue(m, p, l) != 0) return l;
    }
    throw Refusal("exotic_l_for: both l choices give m | I_a");
}

/// n = 2m: a_p = (2, 2, p, ..., p, p+1, p+l), p = q l(l-1) + 2, l in {6k-3, 6k-1}.
inline FamilySpec gen_exotic(std::int64_t m, std::int64_t k, std::int64_t l, std::int64_t q) {
    if (m < 2 || k < 1 || q < 1) throw ArgumentError("gen_exotic needs m >= 2, k >= 1, q >= 1");
    if (l != 6 * k - 3 && l != 6 * k - 1) throw ArgumentError("gen_exotic needs l = 6k-3 or 6k-1");
    const std::int64_t n = 2 * m;
    const std::int64_t p = detail::add_checked(detail::mul_checked(q, detail::mul_checked(l, l - 1)), 2);
    if (p % 2 != 0 || std::gcd(p, l) != 1 || std::gcd(p + 1, l - 1) != 1)
        throw InvariantViolation("gen_exotic: recipe produced a p violating the coprimality conditions");

    FamilySpec spec;
    spec.kind = FamilyKind::Exotic;
    spec.params = {{"m", m}, {"k", k}, {"l", l}, {"q", q}};
    spec.vector = {2, 2};
    for (std::int64_t i = 0; i < n - 3; ++i) spec.vector.push_back(p);
    spec.vector.push_back(p + 1);
    spec.vector.push_back(p + l);
    spec.p = p;
    spec.q = q;
    spec.l = l;

    const auto a = spec.exponents();
    const auto stab = k_stability(a);
    if (!stab.k_polystable) {
        const Rational deficit = stab.sum_recip - (1 + Rational(n, a.largest()));
        throw Refusal("gen_exotic: p = " + std::to_string(p) + " too small, sum 1/a_i exceeds 1 + n/a_n by " +
                      to_string(deficit));
    }
    detail::attach_common(spec);
    spec.bp = bp_order(m).order;
    spec.expected_condition = SphereCondition::Cond1;
    spec.target_class = detail::mod_floor((m % 2 == 0 ? 1 : -1) * BigInt(k), *spec.bp);
    if (BigInt(q) % (m * *spec.bp) == 0) spec.expected_class = spec.target_class;
    if (detail::mod_floor(*spec.index, m) != exotic_index_residue(m, p, l))
        throw InvariantViolation("gen_exotic: I_a disagrees with its residue formula mod m");
    spec.contact_distinguishable = *spec.index % m != 0;
    detail::require_se_sphere(spec, SphereCondition::Cond1);
    return spec;
}

/// (2, ..., 2, 3, 6k +- 1) of length n+1 with tau/8 = (-1)^m k.
inline FamilySpec brieskorn_reference(std::int64_t m, std::int64_t k, int sign) {
    if (m < 2 || k < 1) throw ArgumentError("brieskorn_reference needs m >= 2, k >= 1");
    if (sign != 1 && sign != -1) throw ArgumentError("brieskorn_reference sign must be +1 or -1");
    if (6 * k + sign < 5) throw ArgumentError("brieskorn_reference needs 6k + sign >= 5");
    const std::int64_t n = 2 * m;
    FamilySpec spec;
    spec.kind = FamilyKind::BrieskornRef;
    spec.params = {{"m", m}, {"k", k}, {"sign", sign}};
    spec.vector.assign(static_cast<std::size_t>(n - 1), 2);
    spec.vector.push_back(3);
    spec.vector.push_back(6 * k + sign);
    detail::attach_common(spec);
    spec.bp = bp_order(m).order;
    spec.expected_condition = SphereCondition::Cond1;  // 3 and 6k+-1 are both isolated
    spec.expected_tau = 8 * (m % 2 == 0 ? 1 : -1) * BigInt(k);
    spec.expected_class = detail::mod_floor(*spec.expected_tau / 8, *spec.bp);
    return spec;
}

}  // namespace brieskorn
