#pragma once

// Weighted monomial counts (moduli dimension of the deformed exotic
// family) and the orbit table behind the mean Euler characteristic.

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brieskorn/arith.hpp"
#include "brieskorn/errors.hpp"
#include "brieskorn/quasipoly.hpp"
#include "brieskorn/stability.hpp"
#include "brieskorn/topology.hpp"

namespace brieskorn {

/// #{e in Z_{>=0}^k : sum w_i e_i = degree}, coin-counting DP over a single array.
inline BigInt weighted_monomial_count(std::span<const std::int64_t> weights, std::int64_t degree) {
    if (degree < 0) throw ArgumentError("weighted_monomial_count needs degree >= 0");
    for (auto w : weights)
        if (w < 1) throw ArgumentError("weighted_monomial_count needs positive weights");
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(degree) + 1, 0);
    ways[0] = 1;
    for (auto w : weights)
        for (std::int64_t t = w; t <= degree; ++t)
            if (__builtin_add_overflow(ways[t], ways[t - w], &ways[t]))
                throw OverflowError("weighted_monomial_count exceeds 64 bits");
    return BigInt(ways[static_cast<std::size_t>(degree)]);
}

/// Side conditions of (2, 2, p, ..., p, p+1, p+l) with n = 2m.
struct ExoticShape {
    std::int64_t n = 0, p = 0, l = 0;
    std::vector<std::string> issues;  // empty when the shape is valid
    [[nodiscard]] bool valid() const { return issues.empty(); }
    [[nodiscard]] std::vector<std::int64_t> exponents() const {
        std::vector<std::int64_t> a{2, 2};
        for (std::int64_t i = 0; i < n - 3; ++i) a.push_back(p);
        a.push_back(p + 1);
        a.push_back(p + l);
        return a;
    }
};

inline ExoticShape exotic_shape(std::int64_t n, std::int64_t p, std::int64_t l) {
    if (n < 4 || n % 2 != 0) throw ArgumentError("exotic family needs even n >= 4");
    if (p < 2 || p % 2 != 0) throw ArgumentError("exotic family needs even p >= 2");
    if (l < 1) throw ArgumentError("exotic family needs l >= 1");
    ExoticShape shape{n, p, l, {}};
    if (l < 2) shape.issues.push_back("l < 2");
    if (std::gcd(p, l) != 1) shape.issues.push_back("gcd(p, l) != 1");
    if (std::gcd(p + 1, l - 1) != 1) shape.issues.push_back("gcd(p+1, l-1) != 1");
    return shape;
}

struct ModuliReport {
    std::int64_t n = 0, p = 0, l = 0;
    BigInt degree;                     // d = lcm
    std::vector<std::int64_t> weights; // d_i
    BigInt h0_degree;                  // h^0(O(d))
    std::vector<BigInt> h0_weights;    // h^0(O(d_i))
    BigInt dp_dimension;
    BigInt closed_form;                // C(p+n-4, n-4) - (n-3)^2 - 1
    bool in_regime = false;            // p >= 8
    [[nodiscard]] bool match() const { return dp_dimension == closed_form; }
};

/// h^0(O(d)) - sum h^0(O(d_i)) by DP, next to its closed form.
inline ModuliReport moduli_dimension(std::int64_t n, std::int64_t p, std::int64_t l) {
    if (n < 6) throw ArgumentError("moduli_dimension needs even n >= 6");
    const auto shape = exotic_shape(n, p, l);
    if (!shape.valid()) throw ArgumentError("moduli_dimension: invalid family shape (" + shape.issues.front() + ")");
    ModuliReport r;
    r.n = n;
    r.p = p;
    r.l = l;
    const auto a = shape.exponents();
    const std::int64_t d = detail::to_int64(lcm_of(a));
    r.degree = d;
    for (auto v : a) r.weights.push_back(d / v);
    r.h0_degree = weighted_monomial_count(r.weights, d);
    r.dp_dimension = r.h0_degree;
    for (auto w : r.weights) {
        r.h0_weights.push_back(weighted_monomial_count(r.weights, w));
        r.dp_dimension -= r.h0_weights.back();
    }
    r.closed_form = binomial(p + n - 4, n - 4) - (n - 3) * (n - 3) - 1;
    r.in_regime = p >= 8;
    return r;
}

struct MaslovReport {
    BigInt mu;
    std::optional<BigInt> twice_index;  // 2 I_a, when the shape is valid
    bool in_regime = false;
};

/// mu_P = 2((n-3)(p+1)(p+l) + p(2p+l+1)); equals 2 I_a on valid shapes.
inline MaslovReport maslov_index(std::int64_t n, std::int64_t p, std::int64_t l) {
    const auto shape = exotic_shape(n, p, l);
    const BigInt bp = p, bl = l;
    MaslovReport r;
    r.mu = 2 * ((n - 3) * (bp + 1) * (bp + bl) + bp * (2 * bp + bl + 1));
    r.in_regime = shape.valid() && p >= 4;
    if (shape.valid()) {
        r.twice_index = 2 * k_stability(ExponentVector(shape.exponents())).index;
        if (*r.twice_index != r.mu) throw InvariantViolation("mu_P != 2 I_a on a valid family shape");
    }
    return r;
}

struct OrbitStratum {
    std::string label;
    std::vector<std::int64_t> exponents;
    BigInt period;
    Rational chi;
    bool chi_from_model = false;  // the chi^{S^1}_p row
    BigInt frequency;
};

struct MeanEulerReport {
    std::int64_t n = 0, p = 0, l = 0;
    BigInt mu;
    std::vector<OrbitStratum> strata;
    BigInt phi_2;
    Rational chi_m;
    Polynomial chi_p_model;       // coefficients in p
    Rational chi_p_value;
    bool chi_p_approximate = false;  // default leading-term model
    bool in_regime = false;
    std::string chi_p_description;
};

/// Leading-term model p^{n-4} for chi^{S^1}_p.
inline Polynomial default_chi_p_model(std::int64_t n) {
    Polynomial model(static_cast<std::size_t>(n - 4) + 1);
    model.back() = 1;
    return model;
}

/// Orbit table of L(2,2,p,...,p,p+1,p+l) and chi_m = -(N1 + N2) / mu_P as
/// printed; the sum of chi * frequency over the table must agree.
inline MeanEulerReport mean_euler(std::int64_t n, std::int64_t p, std::int64_t l,
                                  std::optional<Polynomial> chi_p = std::nullopt) {
    const auto shape = exotic_shape(n, p, l);
    MeanEulerReport r;
    r.n = n;
    r.p = p;
    r.l = l;
    r.in_regime = shape.valid() && p >= 4;
    r.chi_p_approximate = !chi_p.has_value();
    r.chi_p_model = chi_p ? *chi_p : default_chi_p_model(n);
    poly::trim(r.chi_p_model);
    r.chi_p_value = poly::eval(r.chi_p_model, Rational(p));
    r.chi_p_description = chi_p ? "user polynomial" : "leading term p^" + std::to_string(n - 4) + " (approximate)";
    r.mu = maslov_index(n, p, l).mu;

    const BigInt P = p, L = l, half = p / 2;
    r.phi_2 = P * (P + 1) * (P + L) / 2 + 2 * P - P * P - P * L / 2;

    std::vector<std::int64_t> ps(static_cast<std::size_t>(n - 3), p);
    auto with = [&](std::vector<std::int64_t> head, std::vector<std::int64_t> mid, std::vector<std::int64_t> tail) {
        head.insert(head.end(), mid.begin(), mid.end());
        head.insert(head.end(), tail.begin(), tail.end());
        return head;
    };
    const Rational nn = n;
    r.strata = {
        {"L(2,2,p,...,p,p+1,p+l)", with({2, 2}, ps, {p + 1, p + l}), P * (P + 1) * (P + L), nn, false, 1},
        {"L(2,2,p+1,p+l)", {2, 2, p + 1, p + l}, 2 * (P + 1) * (P + L), 3, false, half - 1},
        {"L(p+1,p+l)", {p + 1, p + l}, (P + 1) * (P + L), 1, false, half},
        {"L(2,2,p,...,p,p+l)", with({2, 2}, ps, {p + l}), P * (P + L), nn - 1, false, P},
        {"L(2,2,p,...,p,p+1)", with({2, 2}, ps, {p + 1}), P * (P + 1), nn - 1, false, P + L - 1},
        {"L(2,2,p+l)", {2, 2, p + l}, 2 * (P + L), 2, false, P * (P + 1) / 2 - 3 * half},
        {"L(2,2,p+1)", {2, 2, p + 1}, 2 * (P + 1), 2, false, P * (P + L) / 2 - 3 * half - L + 1},
        {"L(2,2,p,...,p)", with({2, 2}, ps, {}), P, r.chi_p_value, true, (P + 1) * (P + L) - 2 * P - L},
        {"L(2,2)", {2, 2}, 2, 2, false, r.phi_2},
    };
    for (const auto& s : r.strata)
        if (s.frequency < 0)
            throw InvariantViolation("negative frequency " + s.frequency.str() + " for stratum " + s.label);

    // The two printed numerators.
    const Rational f6(r.strata[5].frequency), f7(r.strata[6].frequency), f8(r.strata[7].frequency);
    const Rational first = 2 * Rational(r.phi_2) + r.chi_p_value * f8 + 2 * f7 + 2 * f6;
    const Rational second = Rational((n - 1) * (P + L - 1) + (n - 1) * P + half + 3 * (half - 1) + n);
    r.chi_m = -(first + second) / Rational(r.mu);

    Rational table_sum = 0;
    for (const auto& s : r.strata) table_sum += s.chi * Rational(s.frequency);
    if (-table_sum / Rational(r.mu) != r.chi_m)
        throw InvariantViolation("mean Euler characteristic disagrees with the orbit table sum");
    return r;
}

}  // namespace brieskorn
