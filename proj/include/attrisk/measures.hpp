#pragma once

// Association measures for case-control 2x2 tables: the odds-ratio-based
// attributable risk, its standard and small-sample-corrected estimators, and
// the corrected odds-ratio building blocks.

#include <cstdint>

#include "attrisk/errors.hpp"
#include "attrisk/types.hpp"

namespace attrisk {

namespace detail {

// AR_ss = a/(a+c) - b*c / ((a+c)*(d+1)); always finite.
inline double corrected_value(count_t a, count_t b, count_t c, count_t d) {
    const double m = static_cast<double>(a + c);
    return static_cast<double>(a) / m -
           static_cast<double>(b) * static_cast<double>(c) /
               (m * static_cast<double>(d + 1));
}

// AR = a/(a+c) - b*c / ((a+c)*d); requires d >= 1.
inline double standard_value(count_t a, count_t b, count_t c, count_t d) {
    const double m = static_cast<double>(a + c);
    return static_cast<double>(a) / m -
           static_cast<double>(b) * static_cast<double>(c) /
               (m * static_cast<double>(d));
}

}  // namespace detail

// Attributable risk targeted by case-control estimation:
// AR* = q - (1-q) p/(1-p). Bounded above by q, unbounded below as p -> 1.
inline double ar_star(const CaseControlParams& params) {
    return params.q - (1.0 - params.q) * params.p / (1.0 - params.p);
}

// Maximum likelihood estimator A/(A+C) - BC/((A+C)D). When d = 0 the plug-in
// value does not exist; the result then carries the corrected estimate with
// defined = false.
inline EstimateResult estimate_standard(const TwoByTwoTable& t) {
    if (t.d == 0) {
        return {detail::corrected_value(t.a, t.b, t.c, t.d), EstimatorKind::standard, false};
    }
    return {detail::standard_value(t.a, t.b, t.c, t.d), EstimatorKind::standard, true};
}

// Small-sample correction A/(A+C) - BC/((A+C)(D+1)); defined for every table.
inline EstimateResult estimate_corrected(const TwoByTwoTable& t) {
    return {detail::corrected_value(t.a, t.b, t.c, t.d), EstimatorKind::corrected, true};
}

// Plug-in odds ratio a*d/(b*c). Throws UndefinedValueError when b = 0 or
// c = 0; jewell_corrected_or is finite in those cases.
inline double odds_ratio(const TwoByTwoTable& t) {
    if (t.b == 0 || t.c == 0) {
        throw UndefinedValueError("odds_ratio: undefined when b = 0 or c = 0");
    }
    return static_cast<double>(t.a) * static_cast<double>(t.d) /
           (static_cast<double>(t.b) * static_cast<double>(t.c));
}

// Corrected estimator x/(n - x + 1) of the odds p/(1-p), for x successes out
// of n Binomial(n, p) trials.
inline double jewell_corrected_odds(count_t x, count_t n) {
    if (n < 1) throw ValidationError("jewell_corrected_odds: n must be >= 1");
    if (x < 0 || x > n) throw ValidationError("jewell_corrected_odds: need 0 <= x <= n");
    return static_cast<double>(x) / static_cast<double>(n - x + 1);
}

// Corrected estimator (n + 1)/(x + 1) of 1/p.
inline double jewell_corrected_inverse(count_t x, count_t n) {
    if (n < 1) throw ValidationError("jewell_corrected_inverse: n must be >= 1");
    if (x < 0 || x > n) throw ValidationError("jewell_corrected_inverse: need 0 <= x <= n");
    return static_cast<double>(n + 1) / static_cast<double>(x + 1);
}

// Corrected odds ratio a*d/((b+1)(c+1)), composed from the two corrected
// odds estimators above. Always finite, and below the plug-in odds ratio
// whenever both exist and a*d > 0.
inline double jewell_corrected_or(const TwoByTwoTable& t) {
    return static_cast<double>(t.a) * static_cast<double>(t.d) /
           (static_cast<double>(t.b + 1) * static_cast<double>(t.c + 1));
}

// pr(disease | exposed) / pr(disease | unexposed).
inline double relative_risk(const PopulationParams& pop) {
    return pop.risk_exposed / pop.risk_unexposed;
}

// pr(exposed | disease), by Bayes' rule.
inline double exposure_prob_cases(const PopulationParams& pop) {
    return pop.risk_exposed * pop.prev_exposed / pop.disease_probability();
}

// pr(exposed | disease free), by Bayes' rule.
inline double exposure_prob_controls(const PopulationParams& pop) {
    return (1.0 - pop.risk_exposed) * pop.prev_exposed / (1.0 - pop.disease_probability());
}

// Attributable risk {pr(disease) - pr(disease|unexposed)} / pr(disease);
// equivalently pr(exposed|disease) (1 - 1/RR).
inline double levin_ar(const PopulationParams& pop) {
    const double pd = pop.disease_probability();
    return (pd - pop.risk_unexposed) / pd;
}

// AR* evaluated on the case/control exposure probabilities implied by the
// population model. Approaches levin_ar as the disease becomes rare in both
// exposure groups.
inline double ar_star_from_population(const PopulationParams& pop) {
    const double q = exposure_prob_cases(pop);
    const double p = exposure_prob_controls(pop);
    return q - (1.0 - q) * p / (1.0 - p);
}

}  // namespace attrisk
