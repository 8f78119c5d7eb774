#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "attrisk/binomial.hpp"

using namespace attrisk;
using Catch::Matchers::WithinAbs;

namespace {

// n choose k as an exact integer, for small n.
unsigned long long choose(count_t n, count_t k) {
    unsigned long long r = 1;
    if (k > n - k) k = n - k;
    for (count_t i = 0; i < k; ++i) {
        r = r * static_cast<unsigned long long>(n - i) / static_cast<unsigned long long>(i + 1);
    }
    return r;
}

double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, carry = 0.0;
    for (const double x : xs) {
        const double t = sum + x;
        carry += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + carry;
}

}  // namespace

TEST_CASE("single trial masses") {
    const BinomialPmf pmf = binomial_pmf(1, 0.3);
    REQUIRE(pmf.weights.size() == 2);
    REQUIRE_THAT(pmf.weights[0], WithinAbs(0.7, 1e-15));
    REQUIRE_THAT(pmf.weights[1], WithinAbs(0.3, 1e-15));
}

TEST_CASE("symmetric two-trial masses") {
    const BinomialPmf pmf = binomial_pmf(2, 0.5);
    REQUIRE_THAT(pmf.weights[0], WithinAbs(0.25, 1e-16));
    REQUIRE_THAT(pmf.weights[1], WithinAbs(0.5, 1e-16));
    REQUIRE_THAT(pmf.weights[2], WithinAbs(0.25, 1e-16));
}

TEST_CASE("tail masses match direct powers") {
    const BinomialPmf pmf = binomial_pmf(10, 0.2);
    REQUIRE_THAT(pmf.weights[0], WithinAbs(0.1073741824, 1e-15));   // 0.8^10
    REQUIRE_THAT(pmf.weights[10], WithinAbs(1.024e-7, 1e-20));      // 0.2^10
}

TEST_CASE("rejects invalid parameters") {
    REQUIRE_THROWS_AS(binomial_pmf(0, 0.5), ValidationError);
    REQUIRE_THROWS_AS(binomial_pmf(10, 0.0), ValidationError);
    REQUIRE_THROWS_AS(binomial_pmf(10, 1.0), ValidationError);
    REQUIRE_THROWS_AS(binomial_pmf(10, -0.2), ValidationError);
    REQUIRE_THROWS_AS(binomial_pmf(10, 1.0000001), ValidationError);
}

TEST_CASE("weights form a probability distribution") {
    std::mt19937_64 rng(8101);
    std::uniform_real_distribution<double> unit(0.001, 0.999);
    for (const count_t n : {1, 2, 7, 59, 60, 61, 500, 2000, 10000}) {
        const double p = unit(rng);
        const BinomialPmf pmf = binomial_pmf(n, p);
        REQUIRE(pmf.weights.size() == static_cast<std::size_t>(n) + 1);
        for (const double w : pmf.weights) REQUIRE(w >= 0.0);
        REQUIRE_THAT(compensated_sum(pmf.weights), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("weights match the closed-form mass") {
    std::mt19937_64 rng(8102);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    for (int rep = 0; rep < 50; ++rep) {
        const count_t n = 1 + static_cast<count_t>(rng() % 30);
        const double p = unit(rng);
        const BinomialPmf pmf = binomial_pmf(n, p);
        for (count_t k = 0; k <= n; ++k) {
            const long double direct =
                static_cast<long double>(choose(n, k)) *
                std::pow(static_cast<long double>(p), static_cast<long double>(k)) *
                std::pow(1.0L - static_cast<long double>(p), static_cast<long double>(n - k));
            REQUIRE_THAT(pmf.weights[static_cast<std::size_t>(k)],
                         WithinAbs(static_cast<double>(direct),
                                   1e-13 * static_cast<double>(direct) + 1e-300));
        }
    }
}

TEST_CASE("pow_int agrees with std::pow and is exact at exponent one") {
    std::mt19937_64 rng(8103);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    for (int rep = 0; rep < 100; ++rep) {
        const double p = unit(rng);
        REQUIRE(pow_int(p, 1) == p);
        const count_t e = 1 + static_cast<count_t>(rng() % 200);
        REQUIRE_THAT(pow_int(p, e),
                     WithinAbs(std::pow(p, static_cast<double>(e)),
                               1e-13 * std::pow(p, static_cast<double>(e))));
    }
    REQUIRE(pow_int(0.5, 0) == 1.0);
}
