#pragma once

// Exact quasi-polynomials in one integer variable: per-residue Newton
// interpolation, evaluation, falsifiable verification and prefix sums.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brieskorn/arith.hpp"
#include "brieskorn/errors.hpp"

namespace brieskorn {

/// Coefficients c_0 + c_1 x + ... in the variable itself.
using Polynomial = std::vector<Rational>;

namespace poly {

inline void trim(Polynomial& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Rational eval(const Polynomial& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline Polynomial add(Polynomial a, const Polynomial& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
}

inline Polynomial mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

inline Polynomial scale(Polynomial a, const Rational& c) {
    for (auto& v : a) v *= c;
    trim(a);
    return a;
}

/// p(inner(x)).
inline Polynomial compose(const Polynomial& p, const Polynomial& inner) {
    Polynomial acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = add(mul(acc, inner), Polynomial{*it});
    return acc;
}

/// sum_{d=0}^{N} d^e as a polynomial in N (Faulhaber, with B_1 = +1/2).
inline Polynomial power_sum(unsigned e) {
    if (e == 0) return {Rational(1), Rational(1)};
    Polynomial out(e + 2);
    for (unsigned j = 0; j <= e; ++j) {
        Rational b = bernoulli(j);
        if (j == 1) b = -b;
        out[e + 1 - j] += Rational(binomial(e + 1, j)) * b / (e + 1);
    }
    trim(out);
    return out;
}

/// Newton divided differences through the given points, returned in monomial form.
inline Polynomial interpolate(const std::vector<std::pair<std::int64_t, Rational>>& points) {
    const std::size_t k = points.size();
    std::vector<Rational> diff(k);
    for (std::size_t i = 0; i < k; ++i) diff[i] = points[i].second;
    for (std::size_t level = 1; level < k; ++level)
        for (std::size_t i = k - 1; i >= level; --i)
            diff[i] = (diff[i] - diff[i - 1]) / (points[i].first - points[i - level].first);
    Polynomial acc;
    for (std::size_t i = k; i-- > 0;) {
        acc = mul(acc, Polynomial{Rational(-points[i].first), Rational(1)});
        acc = add(acc, Polynomial{diff[i]});
    }
    return acc;
}

}  // namespace poly

/// A samples residue class that is not reproduced by the interpolant.
class NotQuasiPolynomial : public std::runtime_error {
public:
    NotQuasiPolynomial(std::int64_t residue, std::int64_t witness, Rational expected, Rational predicted)
        : std::runtime_error("residue class " + std::to_string(residue) + " is not a polynomial of the requested "
                             "degree: at x = " + std::to_string(witness) + " sample " + to_string(expected) +
                             " vs interpolant " + to_string(predicted)),
          residue(residue), witness(witness), expected(std::move(expected)), predicted(std::move(predicted)) {}

    std::int64_t residue;
    std::int64_t witness;
    Rational expected;
    Rational predicted;
};

struct QuasiPolynomial {
    std::int64_t period = 1;
    int degree_bound = 0;
    std::map<std::int64_t, Polynomial> branches;  // residue -> coefficients
    std::vector<std::int64_t> fit_points;
    std::vector<std::int64_t> verify_points;

    [[nodiscard]] std::int64_t residue(std::int64_t x) const { return ((x % period) + period) % period; }

    /// Largest degree among present branches (-1 for all-zero).
    [[nodiscard]] int fitted_degree() const {
        int deg = -1;
        for (const auto& [r, coeffs] : branches) deg = std::max(deg, static_cast<int>(coeffs.size()) - 1);
        return deg;
    }
};

/// Fits each sampled residue class exactly on its first degree_bound + 1
/// points and checks the remaining samples of that class.
inline QuasiPolynomial qp_fit(std::vector<std::pair<std::int64_t, Rational>> samples, std::int64_t period,
                              int degree_bound) {
    if (period < 1) throw ArgumentError("qp_fit needs period >= 1");
    if (degree_bound < 0) throw ArgumentError("qp_fit needs degree_bound >= 0");
    QuasiPolynomial qp;
    qp.period = period;
    qp.degree_bound = degree_bound;

    std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::map<std::int64_t, std::vector<std::pair<std::int64_t, Rational>>> classes;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && samples[i].first == samples[i - 1].first) {
            if (samples[i].second != samples[i - 1].second)
                throw NotQuasiPolynomial(qp.residue(samples[i].first), samples[i].first, samples[i].second,
                                         samples[i - 1].second);
            continue;
        }
        classes[qp.residue(samples[i].first)].push_back(samples[i]);
    }

    const auto need = static_cast<std::size_t>(degree_bound) + 1;
    for (auto& [res, pts] : classes) {
        if (pts.size() < need)
            throw ArgumentError("qp_fit: residue " + std::to_string(res) + " has " + std::to_string(pts.size()) +
                                " samples, needs " + std::to_string(need));
        std::vector<std::pair<std::int64_t, Rational>> head(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(need));
        Polynomial branch = poly::interpolate(head);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i < need) {
                qp.fit_points.push_back(pts[i].first);
                continue;
            }
            const Rational predicted = poly::eval(branch, Rational(pts[i].first));
            if (predicted != pts[i].second) throw NotQuasiPolynomial(res, pts[i].first, pts[i].second, predicted);
            qp.verify_points.push_back(pts[i].first);
        }
        qp.branches.emplace(res, std::move(branch));
    }
    std::sort(qp.fit_points.begin(), qp.fit_points.end());
    std::sort(qp.verify_points.begin(), qp.verify_points.end());
    return qp;
}

/// Retries qp_fit with degree_bound, degree_bound + 1, ..., max_degree.
inline QuasiPolynomial qp_fit_raising(const std::vector<std::pair<std::int64_t, Rational>>& samples,
                                      std::int64_t period, int degree_bound, int max_degree) {
    for (int degree = degree_bound;; ++degree) {
        try {
            return qp_fit(samples, period, degree);
        } catch (const NotQuasiPolynomial&) {
            if (degree >= max_degree) throw;
        }
    }
}

inline Rational qp_eval(const QuasiPolynomial& qp, std::int64_t x) {
    auto it = qp.branches.find(qp.residue(x));
    if (it == qp.branches.end())
        throw ArgumentError("qp_eval: no branch for residue " + std::to_string(qp.residue(x)));
    return poly::eval(it->second, Rational(x));
}

struct VerifyCheck {
    std::int64_t x = 0;
    std::optional<Rational> predicted;  // empty when the residue has no branch
    Rational actual;
    bool match = false;
    bool reused_fit_point = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    [[nodiscard]] bool all_match() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.match; });
    }
};

inline VerifyReport qp_verify(const QuasiPolynomial& qp, const std::function<Rational(std::int64_t)>& oracle,
                              const std::vector<std::int64_t>& points) {
    VerifyReport report;
    for (auto x : points) {
        VerifyCheck check;
        check.x = x;
        check.actual = oracle(x);
        check.reused_fit_point = std::binary_search(qp.fit_points.begin(), qp.fit_points.end(), x);
        if (qp.branches.count(qp.residue(x))) {
            check.predicted = qp_eval(qp, x);
            check.match = *check.predicted == check.actual;
        }
        report.checks.push_back(std::move(check));
    }
    return report;
}

/// s -> sum_{x=0}^{s} f(x), valid for s >= 0. For s in residue class rho,
/// the x = k (mod L) part is sum_{d=0}^{N} f_k(dL + k) with
/// N = floor((s-k)/L) = (s - rho)/L - [rho < k], summed by Faulhaber.
inline QuasiPolynomial qp_prefix_sum(const QuasiPolynomial& qp) {
    const std::int64_t period = qp.period;
    for (std::int64_t r = 0; r < period; ++r)
        if (!qp.branches.count(r)) throw ArgumentError("qp_prefix_sum needs every residue branch");

    // P_k(N) = sum_{d=0}^{N} f_k(dL + k)
    std::vector<Polynomial> partial(static_cast<std::size_t>(period));
    for (std::int64_t k = 0; k < period; ++k) {
        const Polynomial in_d = poly::compose(qp.branches.at(k), Polynomial{Rational(k), Rational(period)});
        Polynomial acc;
        for (std::size_t e = 0; e < in_d.size(); ++e)
            acc = poly::add(acc, poly::scale(poly::power_sum(static_cast<unsigned>(e)), in_d[e]));
        partial[static_cast<std::size_t>(k)] = std::move(acc);
    }

    QuasiPolynomial out;
    out.period = period;
    out.degree_bound = qp.degree_bound + 1;
    for (std::int64_t rho = 0; rho < period; ++rho) {
        Polynomial branch;
        for (std::int64_t k = 0; k < period; ++k) {
            const Rational shift = Rational(-rho, period) - (rho < k ? 1 : 0);
            const Polynomial n_of_s{shift, Rational(1, period)};
            branch = poly::add(branch, poly::compose(partial[static_cast<std::size_t>(k)], n_of_s));
        }
        out.branches.emplace(rho, std::move(branch));
    }
    return out;
}

}  // namespace brieskorn
