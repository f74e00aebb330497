#pragma once

// Lattice-point counting: the Milnor-fiber signature tau (by full
// enumeration and by a two-coordinate kernel), generic rational simplex
// counts, and the closed-form triangle / strip counters used to show
// tau(a_p) is a quasi-polynomial.
//
// Everything is exact. Coordinates are scaled by a common denominator and
// compared as 64-bit integers with checked arithmetic; an OverflowError is
// raised rather than a wrong count.

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "brieskorn/arith.hpp"
#include "brieskorn/errors.hpp"
#include "brieskorn/topology.hpp"

namespace brieskorn {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

// ---------------------------------------------------------------------------
// Generic box / simplex counts

/// #{x in Z^k : lo_i <= x_i (< upper_i), sum x_i / denoms_i  <= threshold}
/// where lo_i is 1 for an open lower face and 0 otherwise, and the sum
/// comparison is strict when strict_upper is set.
struct CountSpec {
    std::vector<std::int64_t> denoms;
    Rational threshold;
    bool strict_upper = false;
    std::vector<bool> lower_open;
    std::vector<std::optional<std::int64_t>> upper;  // x_i < upper_i when present

    [[nodiscard]] std::size_t dim() const { return denoms.size(); }

    void validate() const {
        if (lower_open.size() != denoms.size() || upper.size() != denoms.size())
            throw ArgumentError("CountSpec: per-coordinate flags must match denoms");
        for (auto d : denoms)
            if (d < 1) throw ArgumentError("CountSpec: denominators must be positive");
    }
};

/// beta_eta: x_i >= 0, sum <= eta.
inline CountSpec beta_spec(std::vector<std::int64_t> denoms, Rational eta) {
    const auto k = denoms.size();
    return {std::move(denoms), std::move(eta), false, std::vector<bool>(k, false),
            std::vector<std::optional<std::int64_t>>(k)};
}

/// beta'_eta: x_i > 0, sum <= eta.
inline CountSpec beta_prime_spec(std::vector<std::int64_t> denoms, Rational eta) {
    auto spec = beta_spec(std::move(denoms), std::move(eta));
    spec.lower_open.assign(spec.dim(), true);
    return spec;
}

/// alpha_eta: 0 < x_i < a_i, sum <= eta.
inline CountSpec alpha_spec(std::vector<std::int64_t> denoms, Rational eta) {
    auto spec = beta_prime_spec(std::move(denoms), std::move(eta));
    for (std::size_t i = 0; i < spec.dim(); ++i) spec.upper[i] = spec.denoms[i];
    return spec;
}

/// delta_eta: (n-1) coordinates over p and one over p + l, all >= 0, sum <= eta.
inline CountSpec delta_spec(std::int64_t p, std::int64_t l, std::int64_t eta, std::int64_t n) {
    std::vector<std::int64_t> denoms(static_cast<std::size_t>(n - 1), p);
    denoms.push_back(p + l);
    return beta_spec(std::move(denoms), Rational(eta));
}

/// The beta_eta region of the exotic family: (n-3) coordinates over p, then p+1, p+l.
inline CountSpec family_beta_spec(std::int64_t p, std::int64_t l, std::int64_t eta, std::int64_t n) {
    std::vector<std::int64_t> denoms(static_cast<std::size_t>(n - 3), p);
    denoms.push_back(p + 1);
    denoms.push_back(p + l);
    return beta_spec(std::move(denoms), Rational(eta));
}

namespace detail {

// A CountSpec rescaled to integers: sum x_i * weight_i <= cap, lo_i <= x_i <= hi_i.
struct ScaledSpec {
    std::vector<std::int64_t> weight;
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
    std::int64_t cap = 0;
    bool empty = false;
};

inline ScaledSpec scale(const CountSpec& spec) {
    spec.validate();
    ScaledSpec s;
    std::int64_t common = detail::to_int64(denominator_of(spec.threshold));
    for (auto d : spec.denoms) common = lcm_checked(common, d);
    const BigInt scaled_threshold = numerator_of(spec.threshold) * (common / denominator_of(spec.threshold));
    s.cap = to_int64(spec.strict_upper ? scaled_threshold - 1 : scaled_threshold);

    for (std::size_t i = 0; i < spec.dim(); ++i) {
        s.weight.push_back(common / spec.denoms[i]);
        s.lo.push_back(spec.lower_open[i] ? 1 : 0);
        std::int64_t hi = s.cap < 0 ? -1 : floor_div(s.cap, s.weight.back());
        if (spec.upper[i]) hi = std::min(hi, *spec.upper[i] - 1);
        s.hi.push_back(hi);
        if (hi < s.lo.back()) s.empty = true;
    }
    // Minimal point must satisfy the cap.
    std::int64_t floor_sum = 0;
    for (std::size_t i = 0; i < spec.dim(); ++i) floor_sum = add_checked(floor_sum, mul_checked(s.lo[i], s.weight[i]));
    if (floor_sum > s.cap) s.empty = true;
    return s;
}

// #{(x, y) : xlo <= x <= xhi, ylo <= y <= yhi, x wx + y wy <= cap}, O(x range).
inline std::int64_t count_2d(std::int64_t wx, std::int64_t wy, std::int64_t cap, std::int64_t xlo,
                             std::int64_t xhi, std::int64_t ylo, std::int64_t yhi) {
    if (xlo > xhi || ylo > yhi) return 0;
    const std::int64_t reach = cap - mul_checked(wy, ylo);
    if (reach < 0) return 0;
    xhi = std::min(xhi, floor_div(reach, wx));
    std::int64_t total = 0;
    for (std::int64_t x = xlo; x <= xhi; ++x) {
        const std::int64_t top = std::min(yhi, floor_div(cap - x * wx, wy));
        if (top >= ylo) total = add_checked(total, top - ylo + 1);
    }
    return total;
}

inline std::int64_t count_1d(std::int64_t w, std::int64_t cap, std::int64_t lo, std::int64_t hi) {
    if (cap < 0) return 0;
    const std::int64_t top = std::min(hi, floor_div(cap, w));
    return top >= lo ? top - lo + 1 : 0;
}

}  // namespace detail

/// Direct enumeration; refuses once more than `budget` points are visited.
inline BigInt count_box_enumerate(const CountSpec& spec, std::uint64_t budget = kDefaultEnumerationBudget) {
    const auto s = detail::scale(spec);
    if (s.empty) return 0;
    if (spec.dim() == 0) return 1;
    std::uint64_t visited = 0;
    std::int64_t count = 0;
    const std::size_t k = spec.dim();
    std::vector<std::int64_t> x(s.lo);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum += x[i] * s.weight[i];
    // Odometer over the box, skipping ahead whenever the running sum exceeds the cap.
    while (true) {
        if (++visited > budget) throw Refusal("count_box enumeration budget exceeded; use the kernel path");
        if (sum <= s.cap) ++count;
        std::size_t i = k;
        while (i-- > 0) {
            if (x[i] < s.hi[i] && sum + s.weight[i] <= s.cap) {
                ++x[i];
                sum += s.weight[i];
                break;
            }
            sum -= (x[i] - s.lo[i]) * s.weight[i];
            x[i] = s.lo[i];
            if (i == 0) return count;
        }
    }
}

/// Outer coordinates enumerated, last two counted by a strip sum.
inline BigInt count_box_kernel(const CountSpec& spec) {
    const auto s = detail::scale(spec);
    if (s.empty) return 0;
    const std::size_t k = spec.dim();
    if (k == 0) return 1;
    if (k == 1) return detail::count_1d(s.weight[0], s.cap, s.lo[0], s.hi[0]);

    const std::size_t outer = k - 2;
    auto inner = [&](std::int64_t used) {
        return detail::count_2d(s.weight[k - 2], s.weight[k - 1], s.cap - used, s.lo[k - 2], s.hi[k - 2],
                                s.lo[k - 1], s.hi[k - 1]);
    };
    if (outer == 0) return inner(0);

    // Least possible contribution of the inner pair, for pruning.
    const std::int64_t inner_floor = s.lo[k - 2] * s.weight[k - 2] + s.lo[k - 1] * s.weight[k - 1];
    BigInt total = 0;
    std::vector<std::int64_t> x(s.lo.begin(), s.lo.begin() + static_cast<std::ptrdiff_t>(outer));
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < outer; ++i) sum += x[i] * s.weight[i];
    while (true) {
        if (sum + inner_floor <= s.cap) total += inner(sum);
        std::size_t i = outer;
        while (i-- > 0) {
            if (x[i] < s.hi[i] && sum + s.weight[i] + inner_floor <= s.cap) {
                ++x[i];
                sum += s.weight[i];
                break;
            }
            sum -= (x[i] - s.lo[i]) * s.weight[i];
            x[i] = s.lo[i];
            if (i == 0) return total;
        }
    }
}

inline BigInt count_box(const CountSpec& spec) { return count_box_kernel(spec); }

/// #{(x, y) : x/A + y/B < u} with per-axis open/closed lower faces and,
/// when bounded, x < A and y < B.
inline std::int64_t strip_count_2d(std::int64_t a_den, std::int64_t b_den, const Rational& u,
                                   std::pair<bool, bool> lower_open = {true, true}, bool bounded = true) {
    if (a_den < 2 || b_den < 2) throw ArgumentError("strip_count_2d needs A, B >= 2");
    CountSpec spec{{a_den, b_den}, u, true, {lower_open.first, lower_open.second}, {std::nullopt, std::nullopt}};
    if (bounded) spec.upper = {a_den, b_den};
    return detail::to_int64(count_box_kernel(spec));
}

// ---------------------------------------------------------------------------
// Signature of the Milnor fiber

enum class SignatureMethod { Brute, Kernel };

struct SignatureResult {
    BigInt tau;
    BigInt plus_count;
    BigInt minus_count;
    BigInt boundary_skipped;  // points with integral sum x_i / a_i
    SignatureMethod method = SignatureMethod::Kernel;
};

struct WindowTally {
    std::int64_t plus = 0;
    std::int64_t minus = 0;
    std::int64_t boundary = 0;
    [[nodiscard]] std::int64_t weight() const { return plus - minus; }
};

namespace detail {

// Parity windows of (offset_num / offset_den) + x/A + y/B over 0<x<A, 0<y<B.
inline WindowTally window_tally(std::int64_t offset_num, std::int64_t offset_den, std::int64_t a_den,
                                std::int64_t b_den) {
    const std::int64_t unit = lcm_checked(lcm_checked(offset_den, a_den), b_den);
    const std::int64_t wx = unit / a_den;
    const std::int64_t wy = unit / b_den;
    const std::int64_t base0 = mul_checked(offset_num, unit / offset_den);
    // Largest scaled sum stays below base0 + 2 * unit.
    add_checked(base0, mul_checked(unit, 3));

    WindowTally t;
    const std::int64_t inner = b_den - 1;
    for (std::int64_t x = 1; x < a_den; ++x) {
        const std::int64_t base = base0 + x * wx;
        const std::int64_t f = floor_div(base, unit);
        const std::int64_t gap = (f + 1) * unit - base;  // > 0
        std::int64_t low = std::clamp<std::int64_t>(ceil_div(gap, wy) - 1, 0, inner);
        std::int64_t edge = 0;
        if (gap % wy == 0) {
            const std::int64_t y = gap / wy;
            if (y >= 1 && y <= inner) edge = 1;
        }
        const std::int64_t high = inner - low - edge;
        const bool low_even = (f % 2 + 2) % 2 == 0;
        (low_even ? t.plus : t.minus) += low;
        (low_even ? t.minus : t.plus) += high;
        t.boundary += edge;
    }
    return t;
}

}  // namespace detail

/// Weighted count of c + x/A + y/B over the open box: +1 for (0,1) mod 2,
/// -1 for (1,2) mod 2; integral totals go to `boundary`.
inline std::pair<std::int64_t, std::int64_t> window_weight(const Rational& c, std::int64_t a_den,
                                                           std::int64_t b_den) {
    if (c < 0) throw ArgumentError("window_weight needs c >= 0");
    if (a_den < 1 || b_den < 1) throw ArgumentError("window_weight needs positive denominators");
    const auto t = detail::window_tally(detail::to_int64(numerator_of(c)), detail::to_int64(denominator_of(c)),
                                        a_den, b_den);
    return {t.weight(), t.boundary};
}

inline BigInt box_point_count(const ExponentVector& a) {
    BigInt points = 1;
    for (auto v : a.values()) points *= v - 1;
    return points;
}

/// Full enumeration of 0 < x_i < a_i.
inline SignatureResult tau_brute(const ExponentVector& a, std::uint64_t budget = kDefaultEnumerationBudget) {
    if (box_point_count(a) > budget)
        throw Refusal("tau_brute: " + box_point_count(a).str() + " points exceed the enumeration budget of " +
                      std::to_string(budget) + "; use tau_kernel");
    const auto& v = a.values();
    const std::size_t k = v.size();
    std::int64_t unit = 1;
    for (auto x : v) unit = detail::lcm_checked(unit, x);
    detail::mul_checked(unit, static_cast<std::int64_t>(2 * k + 2));
    const std::int64_t period = 2 * unit;
    std::vector<std::int64_t> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = unit / v[i];

    std::vector<std::int64_t> x(k, 1);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum += w[i];
    std::int64_t plus = 0, minus = 0, edge = 0;
    const std::int64_t last = v[k - 1] - 1;
    const std::int64_t wl = w[k - 1];
    while (true) {
        // Innermost coordinate swept in place.
        std::int64_t s = sum;
        for (std::int64_t xl = 1; xl <= last; ++xl, s += wl) {
            const std::int64_t r = s % period;
            if (r == 0 || r == unit)
                ++edge;
            else if (r < unit)
                ++plus;
            else
                ++minus;
        }
        std::size_t i = k - 1;
        while (true) {
            if (i == 0) {
                SignatureResult out;
                out.plus_count = plus;
                out.minus_count = minus;
                out.boundary_skipped = edge;
                out.tau = out.plus_count - out.minus_count;
                out.method = SignatureMethod::Brute;
                return out;
            }
            --i;
            if (x[i] < v[i] - 1) {
                ++x[i];
                sum += w[i];
                break;
            }
            sum -= (x[i] - 1) * w[i];
            x[i] = 1;
        }
    }
}

struct KernelOptions {
    unsigned threads = 1;
};

/// tau via the two largest exponents as a 2D kernel. The remaining
/// coordinates are grouped by repeated value: a group of c copies of v
/// contributes sigma/v with multiplicity bounded_compositions(sigma, c, 1, v-1),
/// and groups are merged by the residue of their offset mod 2, so each
/// distinct offset runs window_tally once.
inline SignatureResult tau_kernel(const ExponentVector& a, KernelOptions options = {}) {
    const auto& v = a.values();
    const std::size_t k = v.size();
    const std::int64_t a_den = v[k - 2];
    const std::int64_t b_den = v[k - 1];

    std::vector<std::pair<std::int64_t, std::int64_t>> groups;  // (value, copies)
    for (std::size_t i = 0; i + 2 < k; ++i) {
        if (!groups.empty() && groups.back().first == v[i])
            ++groups.back().second;
        else
            groups.emplace_back(v[i], 1);
    }
    std::int64_t outer_den = 1;
    for (auto [value, copies] : groups) outer_den = detail::lcm_checked(outer_den, value);
    const std::int64_t period = detail::mul_checked(outer_den, 2);

    // residue of (offset * outer_den) mod period -> multiplicity
    std::map<std::int64_t, BigInt> offsets{{0, BigInt(1)}};
    for (auto [value, copies] : groups) {
        const std::int64_t step = outer_den / value;
        std::map<std::int64_t, BigInt> next;
        for (std::int64_t sigma = copies; sigma <= copies * (value - 1); ++sigma) {
            const BigInt mult = bounded_compositions(sigma, copies, 1, value - 1);
            if (mult == 0) continue;
            const std::int64_t shift = detail::mul_checked(sigma % period, step) % period;
            for (const auto& [res, count] : offsets) next[(res + shift) % period] += count * mult;
        }
        offsets = std::move(next);
    }

    std::vector<std::pair<std::int64_t, BigInt>> work(offsets.begin(), offsets.end());
    auto fold = [&](std::size_t begin, std::size_t end) {
        std::array<BigInt, 3> acc{0, 0, 0};
        for (std::size_t i = begin; i < end; ++i) {
            const auto t = detail::window_tally(work[i].first, outer_den, a_den, b_den);
            acc[0] += work[i].second * t.plus;
            acc[1] += work[i].second * t.minus;
            acc[2] += work[i].second * t.boundary;
        }
        return acc;
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(work.size())));
    std::array<BigInt, 3> total{0, 0, 0};
    if (threads == 1) {
        total = fold(0, work.size());
    } else {
        std::vector<std::future<std::array<BigInt, 3>>> parts;
        const std::size_t chunk = (work.size() + threads - 1) / threads;
        for (std::size_t begin = 0; begin < work.size(); begin += chunk)
            parts.push_back(std::async(std::launch::async, fold, begin, std::min(work.size(), begin + chunk)));
        for (auto& part : parts) {
            auto acc = part.get();
            for (std::size_t i = 0; i < 3; ++i) total[i] += acc[i];
        }
    }
    SignatureResult out;
    out.plus_count = total[0];
    out.minus_count = total[1];
    out.boundary_skipped = total[2];
    out.tau = out.plus_count - out.minus_count;
    out.method = SignatureMethod::Kernel;
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form triangle and strip counts

/// Both sides of the min in the triangle formula, and their scaled
/// difference l(p+1)r - lj - R whose sign picks the smaller one.
struct MinBranch {
    std::int64_t big_r = 0;       // R = floor(lj/p)
    std::int64_t r_over_l = 0;    // floor(R/l)
    std::int64_t shifted = 0;     // floor((j - (p+1)r + R) / (l-1))
    std::int64_t scaled_gap = 0;  // l(p+1)r - lj - R
};

inline MinBranch min_branch(std::int64_t p, std::int64_t l, std::int64_t j, std::int64_t r) {
    if (p < 1 || l < 2 || j < 0 || r < 0) throw ArgumentError("min_branch needs p >= 1, l >= 2, j, r >= 0");
    MinBranch b;
    b.big_r = l * j / p;
    b.r_over_l = b.big_r / l;
    b.shifted = detail::floor_div(j - (p + 1) * r + b.big_r, l - 1);
    b.scaled_gap = l * (p + 1) * r - l * j - b.big_r;
    return b;
}

struct GammaBreakdown {
    std::int64_t j = 0;
    std::int64_t big_r = 0;
    std::int64_t first_term = 0;  // (j - floor(R/l))(j + floor(R/l) + 1) / 2
    std::int64_t strip_term = 0;  // (j+1)(R+1)
    std::int64_t min_sum = 0;     // sum_{r=0}^{R} min{floor(R/l), floor((j-(p+1)r+R)/(l-1))}
    std::int64_t total = 0;
};

/// #{(x, y) >= 0 : x/(p+1) + y/(p+l) <= j/p}, evaluated term by term.
inline GammaBreakdown gamma_triangle(std::int64_t p, std::int64_t l, std::int64_t j) {
    if (l < 2) throw ArgumentError("gamma_triangle needs l >= 2");
    if (p < 1 || j < 0) throw ArgumentError("gamma_triangle needs p >= 1 and j >= 0");
    GammaBreakdown g;
    g.j = j;
    g.big_r = detail::mul_checked(l, j) / p;
    const std::int64_t fl = g.big_r / l;
    g.first_term = detail::mul_checked(j - fl, j + fl + 1) / 2;
    g.strip_term = detail::mul_checked(j + 1, g.big_r + 1);
    for (std::int64_t r = 0; r <= g.big_r; ++r)
        g.min_sum += std::min(fl, detail::floor_div(j - (p + 1) * r + g.big_r, l - 1));
    g.total = g.first_term + g.strip_term + g.min_sum;
    return g;
}

/// gamma_j of the standard-sphere family p = sk+1, q = sp-1:
/// jk (sjk + 2j - s - 2) / 2.
inline std::int64_t gamma_family_closed(std::int64_t s, std::int64_t k, std::int64_t j) {
    if (s < 3 || s % 2 == 0) throw ArgumentError("gamma_family_closed needs odd s >= 3");
    if (k < 1) throw ArgumentError("gamma_family_closed needs k >= 1");
    if (j < 1 || j > s) throw ArgumentError("gamma_family_closed needs 1 <= j <= s");
    const std::int64_t jk = detail::mul_checked(j, k);
    return detail::mul_checked(jk, detail::mul_checked(s, jk) + 2 * j - s - 2) / 2;
}

/// delta_eta through the j / R decomposition:
/// sum_j F(eta p - j)(j+1) + sum_R R sum_{j=e_R^-}^{e_R^+} F(eta p - j) + F(0) eta l,
/// with F(s) = C(s + n - 2, n - 2) and e_R^- = ceil(pR/l), e_R^+ = floor((p(R+1)-1)/l).
inline BigInt delta_closed(std::int64_t p, std::int64_t l, std::int64_t eta, std::int64_t n) {
    if (p < 1 || l < 0 || eta < 0 || n < 2)
        throw ArgumentError("delta_closed needs p >= 1, l >= 0, eta >= 0, n >= 2");
    const std::int64_t top = detail::mul_checked(eta, p);
    auto F = [&](std::int64_t s) { return binomial(s + n - 2, n - 2); };
    BigInt total = 0;
    for (std::int64_t j = 0; j <= top; ++j) total += F(top - j) * (j + 1);
    for (std::int64_t big_r = 0; big_r < eta * l; ++big_r) {
        const std::int64_t lo = detail::ceil_div(p * big_r, l);
        const std::int64_t hi = detail::floor_div(p * (big_r + 1) - 1, l);
        BigInt band = 0;
        for (std::int64_t j = lo; j <= hi; ++j) band += F(top - j);
        total += band * big_r;
    }
    total += F(0) * (eta * l);
    return total;
}

/// beta_eta of the exotic family as sum_{j=0}^{eta p} F(eta p - j) gamma_j,
/// F(s) = C(s + n - 4, n - 4).
inline BigInt beta_via_gamma(std::int64_t p, std::int64_t l, std::int64_t eta, std::int64_t n) {
    if (n < 4) throw ArgumentError("beta_via_gamma needs n >= 4");
    if (l < 2 || p < 1) throw ArgumentError("beta_via_gamma needs p >= 1, l >= 2");
    if (eta < 0 || eta > n - 1) throw ArgumentError("beta_via_gamma needs 0 <= eta <= n - 1");
    const std::int64_t top = detail::mul_checked(eta, p);
    BigInt total = 0;
    for (std::int64_t j = 0; j <= top; ++j) total += binomial(top - j + n - 4, n - 4) * gamma_triangle(p, l, j).total;
    return total;
}

}  // namespace brieskorn
