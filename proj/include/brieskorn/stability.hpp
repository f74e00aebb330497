#pragma once

// K-stability of the Fano cone (Y(a), xi) and the orbifold contact obstruction.

#include <bit>
#include <cstdint>
#include <vector>

#include "brieskorn/arith.hpp"
#include "brieskorn/topology.hpp"

namespace brieskorn {

enum class ContactObstruction { ObstructedOddDim, ObstructedIndivisible, Inconclusive };

struct StabilityReport {
    Rational sum_recip;       // sum 1/a_i
    bool log_fano = false;
    bool k_semistable = false;
    bool k_polystable = false;
    bool se_metric_exists = false;
    bool boundary = false;    // semistable but not polystable
    BigInt d;                 // lcm(a_i)
    std::vector<BigInt> weights;  // Reeb weights d_i = d / a_i, in sorted order
    BigInt index;             // I_a = sum d_i - d
    ContactObstruction contact = ContactObstruction::Inconclusive;
};

inline ContactObstruction contact_obstruction(std::int64_t n, const BigInt& index) {
    if (n % 2 != 0) return ContactObstruction::ObstructedOddDim;
    if (index % (n / 2) != 0) return ContactObstruction::ObstructedIndivisible;
    return ContactObstruction::Inconclusive;
}

inline ContactObstruction contact_obstruction(const ExponentVector& a) {
    BigInt d = lcm_of(a.values());
    BigInt index = -d;
    for (auto v : a.values()) index += d / v;
    return contact_obstruction(a.n(), index);
}

/// Closed-form test: polystable iff 1 < sum 1/a_i < 1 + n/a_n, semistable
/// with the right inequality relaxed. The index form 0 < I_a < n d_n is
/// computed alongside and must agree.
inline StabilityReport k_stability(const ExponentVector& a) {
    StabilityReport r;
    const auto n = a.n();
    for (auto v : a.values()) r.sum_recip += Rational(1, v);
    const Rational cap = 1 + Rational(n, a.largest());
    r.log_fano = r.sum_recip > 1;
    r.k_semistable = r.log_fano && r.sum_recip <= cap;
    r.k_polystable = r.log_fano && r.sum_recip < cap;
    r.se_metric_exists = r.k_polystable;
    r.boundary = r.k_semistable && !r.k_polystable;

    r.d = lcm_of(a.values());
    r.index = -r.d;
    for (auto v : a.values()) {
        r.weights.push_back(r.d / v);
        r.index += r.weights.back();
    }
    const bool index_form = r.index > 0 && r.index < n * r.weights.back();
    if (index_form != r.k_polystable)
        throw InvariantViolation("sum-form and index-form polystability disagree");
    r.contact = contact_obstruction(n, r.index);
    return r;
}

struct FujitaVerdict {
    bool polystable = false;
    bool semistable = false;
};

/// Evaluates k sum(1 - 1/a_i) - n sum_{j<=k}(1 - 1/a_{i_j}) over every
/// 1 <= k <= n-1 and every k-subset. Exponential; refused above n = 12.
inline FujitaVerdict fujita_subset_oracle(const ExponentVector& a) {
    const auto n = a.n();
    if (n > 12) throw Refusal("fujita_subset_oracle is test-scale only (n <= 12)");
    std::vector<Rational> co;
    Rational total = 0;
    Rational recip = 0;
    for (auto v : a.values()) {
        co.push_back(1 - Rational(1, v));
        total += co.back();
        recip += Rational(1, v);
    }
    const bool log_fano = recip > 1;
    bool all_positive = true;
    bool all_nonnegative = true;
    const std::uint32_t full = 1u << a.size();
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        const auto k = std::popcount(mask);
        if (k > n - 1) continue;
        Rational subset = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (mask & (1u << i)) subset += co[i];
        const Rational value = k * total - n * subset;
        if (value <= 0) all_positive = false;
        if (value < 0) all_nonnegative = false;
    }
    return {log_fano && all_positive, log_fano && all_nonnegative};
}

}  // namespace brieskorn
