#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "attrisk/measures.hpp"

using namespace attrisk;
using Catch::Matchers::WithinAbs;

namespace {

TwoByTwoTable random_table(std::mt19937_64& rng, count_t max_cell, bool require_d_positive) {
    std::uniform_int_distribution<count_t> cell(0, max_cell);
    while (true) {
        const count_t a = cell(rng), b = cell(rng), c = cell(rng), d = cell(rng);
        if (require_d_positive && d == 0) continue;
        if (a + c < 1 || b + d < 1) continue;
        return {a, b, c, d};
    }
}

PopulationParams random_population(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double risk_unexposed = 0.001 + 0.089 * unit(rng);
    const double ratio = 0.1 + 9.9 * unit(rng);
    const double risk_exposed = std::min(0.9, risk_unexposed * ratio);
    const double prev = 0.05 + 0.9 * unit(rng);
    return {risk_exposed, risk_unexposed, prev};
}

}  // namespace

TEST_CASE("TwoByTwoTable rejects invalid counts") {
    REQUIRE_NOTHROW(TwoByTwoTable(0, 0, 1, 1));
    REQUIRE_THROWS_AS(TwoByTwoTable(-1, 0, 1, 1), ValidationError);
    REQUIRE_THROWS_AS(TwoByTwoTable(1, -2, 1, 1), ValidationError);
    REQUIRE_THROWS_AS(TwoByTwoTable(0, 1, 0, 1), ValidationError);  // no cases
    REQUIRE_THROWS_AS(TwoByTwoTable(1, 0, 1, 0), ValidationError);  // no controls
    const TwoByTwoTable t(2, 4, 8, 6);
    REQUIRE(t.cases() == 10);
    REQUIRE(t.controls() == 10);
}

TEST_CASE("CaseControlParams requires open-interval probabilities") {
    REQUIRE_NOTHROW(CaseControlParams(0.5, 0.5, 1, 1));
    REQUIRE_THROWS_AS(CaseControlParams(0.0, 0.5, 1, 1), ValidationError);
    REQUIRE_THROWS_AS(CaseControlParams(1.0, 0.5, 1, 1), ValidationError);
    REQUIRE_THROWS_AS(CaseControlParams(0.5, 0.0, 1, 1), ValidationError);
    REQUIRE_THROWS_AS(CaseControlParams(0.5, 1.0, 1, 1), ValidationError);
    REQUIRE_THROWS_AS(CaseControlParams(0.5, 0.5, 0, 1), ValidationError);
    REQUIRE_THROWS_AS(CaseControlParams(0.5, 0.5, 1, 0), ValidationError);
}

TEST_CASE("PopulationParams requires open-interval probabilities") {
    REQUIRE_NOTHROW(PopulationParams(0.02, 0.01, 0.5));
    REQUIRE_THROWS_AS(PopulationParams(0.0, 0.01, 0.5), ValidationError);
    REQUIRE_THROWS_AS(PopulationParams(0.02, 1.0, 0.5), ValidationError);
    REQUIRE_THROWS_AS(PopulationParams(0.02, 0.01, 0.0), ValidationError);
    REQUIRE_THAT(PopulationParams(0.02, 0.01, 0.5).disease_probability(),
                 WithinAbs(0.015, 1e-15));
}

TEST_CASE("ar_star reference points") {
    REQUIRE_THAT(ar_star({0.2, 0.4, 10, 10}), WithinAbs(-1.0 / 3.0, 1e-12));
    REQUIRE_THAT(ar_star({0.6, 0.6, 10, 10}), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(ar_star({0.2, 0.8, 10, 10}), WithinAbs(-3.0, 1e-12));
}

TEST_CASE("standard estimator") {
    const EstimateResult r1 = estimate_standard(TwoByTwoTable(2, 4, 8, 6));
    REQUIRE(r1.defined);
    REQUIRE(r1.estimator_kind == EstimatorKind::standard);
    REQUIRE_THAT(r1.value, WithinAbs(-1.0 / 3.0, 1e-12));

    // b = 0 kills the second term.
    REQUIRE_THAT(estimate_standard(TwoByTwoTable(5, 0, 5, 10)).value, WithinAbs(0.5, 0.0));

    // d = 0: value falls back to the corrected estimate, flagged undefined.
    const EstimateResult r3 = estimate_standard(TwoByTwoTable(1, 10, 9, 0));
    REQUIRE_FALSE(r3.defined);
    REQUIRE_THAT(r3.value, WithinAbs(-8.9, 1e-12));
    REQUIRE_THAT(r3.value,
                 WithinAbs(estimate_corrected(TwoByTwoTable(1, 10, 9, 0)).value, 0.0));

    REQUIRE_THAT(estimate_standard(TwoByTwoTable(10, 0, 0, 10)).value, WithinAbs(1.0, 0.0));
}

TEST_CASE("corrected estimator") {
    const EstimateResult r1 = estimate_corrected(TwoByTwoTable(2, 4, 8, 6));
    REQUIRE(r1.defined);
    REQUIRE(r1.estimator_kind == EstimatorKind::corrected);
    REQUIRE_THAT(r1.value, WithinAbs(-9.0 / 35.0, 1e-12));  // 0.2 - 32/70

    REQUIRE_THAT(estimate_corrected(TwoByTwoTable(5, 0, 5, 10)).value, WithinAbs(0.5, 0.0));

    const EstimateResult r3 = estimate_corrected(TwoByTwoTable(1, 10, 9, 0));
    REQUIRE(r3.defined);
    REQUIRE_THAT(r3.value, WithinAbs(-8.9, 1e-12));
}

TEST_CASE("plug-in odds ratio") {
    REQUIRE_THAT(odds_ratio(TwoByTwoTable(2, 4, 8, 6)), WithinAbs(0.375, 1e-15));
    REQUIRE_THAT(odds_ratio(TwoByTwoTable(3, 3, 3, 3)), WithinAbs(1.0, 0.0));
    REQUIRE_THROWS_AS(odds_ratio(TwoByTwoTable(1, 0, 1, 1)), UndefinedValueError);
    REQUIRE_THROWS_AS(odds_ratio(TwoByTwoTable(1, 1, 0, 1)), UndefinedValueError);
}

TEST_CASE("corrected odds building blocks") {
    REQUIRE_THAT(jewell_corrected_odds(0, 10), WithinAbs(0.0, 0.0));
    REQUIRE_THAT(jewell_corrected_odds(10, 10), WithinAbs(10.0, 0.0));
    REQUIRE_THAT(jewell_corrected_odds(4, 10), WithinAbs(4.0 / 7.0, 1e-15));
    REQUIRE_THROWS_AS(jewell_corrected_odds(-1, 10), ValidationError);
    REQUIRE_THROWS_AS(jewell_corrected_odds(11, 10), ValidationError);
    REQUIRE_THROWS_AS(jewell_corrected_odds(0, 0), ValidationError);

    REQUIRE_THAT(jewell_corrected_inverse(10, 10), WithinAbs(1.0, 0.0));
    REQUIRE_THAT(jewell_corrected_inverse(0, 9), WithinAbs(10.0, 0.0));
    REQUIRE_THAT(jewell_corrected_inverse(4, 9), WithinAbs(2.0, 0.0));
    REQUIRE_THROWS_AS(jewell_corrected_inverse(5, 4), ValidationError);
}

TEST_CASE("corrected odds ratio") {
    REQUIRE_THAT(jewell_corrected_or(TwoByTwoTable(2, 4, 8, 6)), WithinAbs(12.0 / 45.0, 1e-15));
    REQUIRE_THAT(jewell_corrected_or(TwoByTwoTable(0, 5, 5, 5)), WithinAbs(0.0, 0.0));
    // finite where the plug-in errors
    REQUIRE_THAT(jewell_corrected_or(TwoByTwoTable(1, 0, 1, 1)), WithinAbs(0.5, 1e-15));
}

TEST_CASE("levin attributable risk") {
    REQUIRE_THAT(levin_ar(PopulationParams(0.01, 0.01, 0.3)), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(levin_ar(PopulationParams(0.02, 0.01, 0.5)), WithinAbs(1.0 / 3.0, 1e-12));
    // protective exposure: negative attributable risk
    REQUIRE_THAT(levin_ar(PopulationParams(0.01, 0.02, 0.5)), WithinAbs(-1.0 / 3.0, 1e-12));
}

TEST_CASE("ar_star from population parameters") {
    REQUIRE_THAT(ar_star_from_population(PopulationParams(0.01, 0.01, 0.4)),
                 WithinAbs(0.0, 1e-15));
    // q = 2/3, p = 98/197 by Bayes' rule; AR* = 100/297.
    const PopulationParams pop(0.02, 0.01, 0.5);
    REQUIRE_THAT(exposure_prob_cases(pop), WithinAbs(2.0 / 3.0, 1e-14));
    REQUIRE_THAT(exposure_prob_controls(pop), WithinAbs(98.0 / 197.0, 1e-14));
    REQUIRE_THAT(ar_star_from_population(pop), WithinAbs(100.0 / 297.0, 1e-12));
}

TEST_CASE("levin form equals exposure-probability form") {
    std::mt19937_64 rng(7101);
    for (int i = 0; i < 500; ++i) {
        const PopulationParams pop = random_population(rng);
        const double via_rates = levin_ar(pop);
        const double via_bayes =
            exposure_prob_cases(pop) * (1.0 - 1.0 / relative_risk(pop));
        REQUIRE_THAT(via_rates, WithinAbs(via_bayes, 1e-12));
    }
}

TEST_CASE("odds-ratio form gap identity") {
    std::mt19937_64 rng(7102);
    for (int i = 0; i < 500; ++i) {
        const PopulationParams pop = random_population(rng);
        const double gap = ar_star_from_population(pop) - levin_ar(pop);
        const double expected = exposure_prob_cases(pop) / relative_risk(pop) *
                                (1.0 - (1.0 - pop.risk_exposed) / (1.0 - pop.risk_unexposed));
        REQUIRE_THAT(gap, WithinAbs(expected, 1e-12));
    }
}

TEST_CASE("gap vanishes as the disease becomes rare") {
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 6; ++k) {
        const double scale = std::pow(10.0, -k);
        const PopulationParams pop(0.4 * scale, 0.2 * scale, 0.3);
        const double gap = std::fabs(ar_star_from_population(pop) - levin_ar(pop));
        REQUIRE(gap < previous);
        previous = gap;
    }
    REQUIRE(previous < 1e-7);
}

TEST_CASE("decomposition identity links the two estimators") {
    std::mt19937_64 rng(7103);
    for (int i = 0; i < 1000; ++i) {
        const TwoByTwoTable t = random_table(rng, 200, /*require_d_positive=*/true);
        const double m = static_cast<double>(t.cases());
        const double n = static_cast<double>(t.controls());
        const double d = static_cast<double>(t.d);
        const double correction = (static_cast<double>(t.a) - m) / m *
                                  ((n - d) / d - (n - d) / (d + 1.0));
        REQUIRE_THAT(estimate_standard(t).value,
                     WithinAbs(estimate_corrected(t).value + correction, 1e-12));
    }
}

TEST_CASE("correction never lowers the estimate when d >= 1") {
    std::mt19937_64 rng(7104);
    for (int i = 0; i < 1000; ++i) {
        const TwoByTwoTable t = random_table(rng, 60, /*require_d_positive=*/true);
        const double standard = estimate_standard(t).value;
        const double corrected = estimate_corrected(t).value;
        if (t.b >= 1 && t.c >= 1) {
            REQUIRE(corrected > standard);
        } else {
            REQUIRE(corrected == standard);
        }
    }
}

TEST_CASE("zero exposed controls collapse both estimators to a/(a+c)") {
    std::mt19937_64 rng(7105);
    std::uniform_int_distribution<count_t> cell(0, 100);
    for (int i = 0; i < 200; ++i) {
        count_t a = cell(rng), c = cell(rng), d = cell(rng);
        if (a + c < 1) a = 1;
        if (d < 1) d = 1;
        const TwoByTwoTable t(a, 0, c, d);
        const double direct = static_cast<double>(a) / static_cast<double>(a + c);
        REQUIRE(estimate_standard(t).value == direct);
        REQUIRE(estimate_corrected(t).value == direct);
    }
}

TEST_CASE("corrected odds ratio sits below the plug-in odds ratio") {
    std::mt19937_64 rng(7106);
    for (int i = 0; i < 1000; ++i) {
        const TwoByTwoTable t = random_table(rng, 50, false);
        if (t.b == 0 || t.c == 0) continue;
        if (t.a * t.d > 0) {
            REQUIRE(jewell_corrected_or(t) < odds_ratio(t));
        } else {
            REQUIRE(jewell_corrected_or(t) == odds_ratio(t));
        }
    }
}

TEST_CASE("estimates never exceed one") {
    std::mt19937_64 rng(7107);
    for (int i = 0; i < 1000; ++i) {
        const TwoByTwoTable t = random_table(rng, 300, false);
        REQUIRE(estimate_corrected(t).value <= 1.0);
        REQUIRE(estimate_standard(t).value <= 1.0);
    }
}
