#include <gtest/gtest.h>

#include <set>

#include "brieskorn/moduli.hpp"
#include "oracles.hpp"

using namespace brieskorn;

namespace {

const std::vector<std::int64_t> kWeights{396, 396, 99, 99, 99, 88, 72};

}  // namespace

TEST(Monomials, Examples) {
    EXPECT_EQ(weighted_monomial_count(kWeights, 792), 80);
    EXPECT_EQ(weighted_monomial_count(std::vector<std::int64_t>{1, 1}, 2), 3);
    EXPECT_EQ(weighted_monomial_count(kWeights, 99), 3);
    EXPECT_EQ(weighted_monomial_count(kWeights, 0), 1);
    EXPECT_EQ(weighted_monomial_count(kWeights, 1), 0);
}

TEST(Monomials, AgreesWithEnumeration) {
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::int64_t> w;
        const auto len = oracle::uniform(1, 4);
        for (std::int64_t i = 0; i < len; ++i) w.push_back(oracle::uniform(1, 9));
        const auto degree = oracle::uniform(0, 40);
        EXPECT_EQ(weighted_monomial_count(w, degree), oracle::monomials(w, degree));
    }
}

TEST(Moduli, Examples) {
    auto r = moduli_dimension(6, 8, 3);
    EXPECT_EQ(r.h0_degree, 80);
    EXPECT_EQ(r.dp_dimension, 35);
    EXPECT_EQ(r.closed_form, 35);
    EXPECT_EQ(r.weights, kWeights);
    EXPECT_TRUE(r.match());
    r = moduli_dimension(6, 14, 3);
    EXPECT_EQ(r.dp_dimension, 110);
    EXPECT_TRUE(r.match());
    r = moduli_dimension(8, 8, 3);
    EXPECT_EQ(r.dp_dimension, 469);
    EXPECT_TRUE(r.match());
}

TEST(Moduli, ClosedFormInRegime) {
    for (std::int64_t n : {6, 8})
        for (std::int64_t p : {8, 14, 20}) {
            const auto r = moduli_dimension(n, p, 3);
            EXPECT_TRUE(r.in_regime);
            EXPECT_EQ(r.dp_dimension, binomial(p + n - 4, n - 4) - (n - 3) * (n - 3) - 1) << n << " " << p;
        }
}

TEST(Moduli, ShapeErrors) {
    EXPECT_THROW(moduli_dimension(4, 8, 3), ArgumentError);
    EXPECT_THROW(moduli_dimension(7, 8, 3), ArgumentError);
    EXPECT_THROW(moduli_dimension(6, 9, 3), ArgumentError);
    EXPECT_THROW(moduli_dimension(6, 9, 3), ArgumentError);
    EXPECT_THROW(moduli_dimension(6, 6, 3), ArgumentError);  // gcd(p, l) = 3
}

TEST(Maslov, Examples) {
    auto r = maslov_index(6, 8, 3);
    EXPECT_EQ(r.mu, 914);
    EXPECT_EQ(*r.twice_index, 914);
    r = maslov_index(4, 10, 3);
    EXPECT_EQ(r.mu, 766);
    r = maslov_index(6, 2, 1);
    EXPECT_FALSE(r.in_regime);
    EXPECT_EQ(r.mu, 2 * (3 * 3 * 3 + 2 * 6));
}

TEST(Maslov, TwiceIndexOnRandomInstances) {
    int checked = 0;
    while (checked < 100) {
        const std::int64_t n = 2 * oracle::uniform(2, 4), p = 2 * oracle::uniform(1, 80), l = oracle::uniform(2, 20);
        const auto shape = exotic_shape(n, p, l);
        if (!shape.valid()) continue;
        const auto r = maslov_index(n, p, l);
        EXPECT_EQ(r.mu, 2 * k_stability(ExponentVector(shape.exponents())).index);
        ++checked;
    }
}

TEST(MeanEuler, DefaultModel) {
    const auto r = mean_euler(6, 8, 3);
    EXPECT_EQ(r.phi_2, 336);
    std::vector<BigInt> freq;
    for (const auto& s : r.strata) freq.push_back(s.frequency);
    EXPECT_EQ(freq, (std::vector<BigInt>{1, 3, 4, 8, 10, 24, 30, 80, 336}));
    EXPECT_EQ(r.chi_p_value, 64);
    EXPECT_TRUE(r.chi_p_approximate);
    EXPECT_EQ(r.chi_m, Rational(-6009, 914));
    EXPECT_EQ(r.mu, 914);
}

TEST(MeanEuler, UserModel) {
    const auto r = mean_euler(6, 8, 3, Polynomial{Rational(0)});
    EXPECT_EQ(r.chi_m, Rational(-889, 914));
    EXPECT_FALSE(r.chi_p_approximate);
}

TEST(MeanEuler, DegenerateSmallP) {
    const auto r = mean_euler(6, 2, 1);
    EXPECT_FALSE(r.in_regime);
    for (const auto& s : r.strata) EXPECT_GE(s.frequency, 0);
}

TEST(MeanEuler, FrequenciesNonNegativeAndPhiFormula) {
    for (std::int64_t n : {4, 6, 8})
        for (std::int64_t p = 4; p <= 60; p += 2)
            for (std::int64_t l = 2; l <= 9; ++l) {
                if (!exotic_shape(n, p, l).valid()) continue;
                const auto r = mean_euler(n, p, l);
                for (const auto& s : r.strata) EXPECT_GE(s.frequency, 0);
                const BigInt P = p, L = l;
                EXPECT_EQ(2 * r.phi_2, P * ((P + 1) * (P + L) - 2 * P - L + 4));
                EXPECT_EQ(r.mu, maslov_index(n, p, l).mu);
            }
}

TEST(MeanEuler, PeriodsDivideDegree) {
    const auto r = mean_euler(6, 8, 3);
    const BigInt d = lcm_of(std::vector<std::int64_t>{2, 2, 8, 8, 8, 9, 11});
    for (const auto& s : r.strata) EXPECT_EQ(d % s.period, 0) << s.label;
}

TEST(MeanEuler, DistinctValuesAcrossFamily) {
    std::set<Rational> seen;
    for (std::int64_t p = 8; p <= 98; p += 6) {
        const auto r = mean_euler(6, p, 3);
        EXPECT_TRUE(seen.insert(r.chi_m).second) << p;
    }
    EXPECT_EQ(seen.size(), 16u);
}
