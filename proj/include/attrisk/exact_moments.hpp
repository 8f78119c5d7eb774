#pragma once

// Exact moments of the attributable-risk estimators under the binomial
// sampling model, by enumeration of the (A, B) outcome grid. Means use the
// one-dimensional factorization AR_ss = A/m - (C/m) * B/(D+1) with A and B
// independent; second moments enumerate the full joint grid. Everything here
// is deterministic and exact up to double rounding.

#include <cmath>
#include <cstdint>
#include <vector>

#include "attrisk/binomial.hpp"
#include "attrisk/errors.hpp"
#include "attrisk/measures.hpp"
#include "attrisk/types.hpp"

namespace attrisk {

// Joint outcome grids larger than this enumerate too slowly to be useful;
// the engine refuses rather than degrade to sampling.
inline constexpr count_t kEnumerationCap = 100'000'000;  // m * n

struct ExactMoments {
    double expectation;
    double bias;      // expectation - AR*
    double variance;
    bool conditioned_on_d_nonzero;
};

// Conditional variances given D != 0, where both estimators exist.
struct ConditionalVariances {
    double corrected;  // var(AR_ss | D != 0)
    double standard;   // var(AR  | D != 0)
};

// Pieces of var(AR | D != 0) = var(AR_ss | D != 0) + var(correction | D != 0)
//                              + 2 cov(AR_ss, correction | D != 0).
struct VarianceDecomposition {
    double var_standard;
    double var_corrected;
    double var_correction;
    double covariance;

    double residual() const {
        return var_standard - (var_corrected + var_correction + 2.0 * covariance);
    }
};

// E[B/(D+1)] for B ~ Bin(n, p), D = n - B, in closed form:
// p/(1-p) - p^(n+1)/(1-p), evaluated as p (1 - p^n)/(1 - p) so that n = 1
// yields exactly p.
inline double expected_b_over_d_plus_1(count_t n, double p) {
    if (n < 1) throw ValidationError("expected_b_over_d_plus_1: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError("expected_b_over_d_plus_1: p must lie strictly in (0, 1)");
    }
    return p * ((1.0 - pow_int(p, n)) / (1.0 - p));
}

// Closed-form bias of the corrected estimator: ((1-q)/(1-p)) p^(n+1).
// Strictly positive, decays exponentially in n, and does not involve m.
inline double bias_corrected_closed_form(const CaseControlParams& params) {
    return (1.0 - params.q) / (1.0 - params.p) * pow_int(params.p, params.n + 1);
}

namespace detail {

inline void check_enumeration_cap(const CaseControlParams& params) {
    if (params.m > kEnumerationCap / params.n) {
        throw ComputationError("enumeration cap exceeded: m * n outcome pairs > 1e8");
    }
}

// Estimator values as functions of the control draw b, for fixed n. The
// estimators factorize as a/m - ((m-a)/m) g(b), so precomputing g(b) turns
// the joint grid walk into cheap multiply-adds.
inline std::vector<double> corrected_g(count_t n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (count_t b = 0; b <= n; ++b) {
        g[static_cast<std::size_t>(b)] =
            static_cast<double>(b) / static_cast<double>(n - b + 1);
    }
    return g;
}

inline std::vector<double> standard_patched_g(count_t n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (count_t b = 0; b < n; ++b) {
        g[static_cast<std::size_t>(b)] =
            static_cast<double>(b) / static_cast<double>(n - b);
    }
    // d = 0: fall back to the corrected estimator, i.e. g = n/(0 + 1).
    g[static_cast<std::size_t>(n)] = static_cast<double>(n);
    return g;
}

// Mean of a/m - ((m-a)/m) g(b) over the product distribution, restricted to
// b <= b_max, with total weight `mass` on that restriction.
struct FactoredMoments {
    const CaseControlParams& params;
    BinomialPmf pmf_a;
    BinomialPmf pmf_b;

    explicit FactoredMoments(const CaseControlParams& p)
        : params(p),
          pmf_a(binomial_pmf(p.m, p.q)),
          pmf_b(binomial_pmf(p.n, p.p)) {}

    double mean(const std::vector<double>& g, count_t b_max, double mass) const {
        long double mean_a = 0.0L;       // E[A/m]
        long double mean_not_a = 0.0L;   // E[(m-A)/m]
        for (count_t a = 0; a <= params.m; ++a) {
            const long double w = pmf_a.weights[static_cast<std::size_t>(a)];
            mean_a += w * (static_cast<long double>(a) / static_cast<long double>(params.m));
            mean_not_a +=
                w * (static_cast<long double>(params.m - a) / static_cast<long double>(params.m));
        }
        long double mean_g = 0.0L;
        for (count_t b = 0; b <= b_max; ++b) {
            mean_g += static_cast<long double>(pmf_b.weights[static_cast<std::size_t>(b)]) *
                      static_cast<long double>(g[static_cast<std::size_t>(b)]);
        }
        mean_g /= static_cast<long double>(mass);
        return static_cast<double>(mean_a - mean_not_a * mean_g);
    }

    // Centered second moment over the joint grid restricted to b <= b_max.
    double variance(const std::vector<double>& g, double mean, count_t b_max,
                    double mass) const {
        long double acc = 0.0L;
        for (count_t b = 0; b <= b_max; ++b) {
            const long double wb = pmf_b.weights[static_cast<std::size_t>(b)];
            const double gb = g[static_cast<std::size_t>(b)];
            for (count_t a = 0; a <= params.m; ++a) {
                const double est =
                    static_cast<double>(a) / static_cast<double>(params.m) -
                    static_cast<double>(params.m - a) / static_cast<double>(params.m) * gb;
                const long double dev = static_cast<long double>(est) - mean;
                acc += static_cast<long double>(pmf_a.weights[static_cast<std::size_t>(a)]) * wb *
                       dev * dev;
            }
        }
        return static_cast<double>(acc / static_cast<long double>(mass));
    }
};

}  // namespace detail

namespace detail {

inline ExactMoments enumerate_moments(const CaseControlParams& params,
                                      const std::vector<double>& g,
                                      bool condition_on_d_nonzero) {
    check_enumeration_cap(params);
    FactoredMoments fm(params);
    // Conditioning on D != 0 drops the b = n column and renormalizes by
    // the exact 1 - p^n.
    const double mass =
        condition_on_d_nonzero ? 1.0 - pow_int(params.p, params.n) : 1.0;
    const count_t b_max = condition_on_d_nonzero ? params.n - 1 : params.n;
    const double mean = fm.mean(g, b_max, mass);
    const double variance = fm.variance(g, mean, b_max, mass);
    return {mean, mean - ar_star(params), variance, condition_on_d_nonzero};
}

}  // namespace detail

// Exact expectation, bias, and variance of the corrected estimator,
// optionally conditional on D != 0.
inline ExactMoments exact_moments_corrected(const CaseControlParams& params,
                                            bool condition_on_d_nonzero = false) {
    return detail::enumerate_moments(params, detail::corrected_g(params.n),
                                     condition_on_d_nonzero);
}

// Exact moments of the standard estimator under the convention that it takes
// the corrected value when D = 0 (otherwise its bias is -infinity). With
// conditioning, the D = 0 outcomes are excluded instead.
inline ExactMoments exact_moments_standard(const CaseControlParams& params,
                                           bool condition_on_d_nonzero = false) {
    return detail::enumerate_moments(params, detail::standard_patched_g(params.n),
                                     condition_on_d_nonzero);
}

// var(AR_ss | D != 0) and var(AR | D != 0). The corrected component is
// strictly smaller whenever n >= 2; at n = 1 the two estimators coincide on
// the conditioned space and the variances are equal.
inline ConditionalVariances conditional_variances(const CaseControlParams& params) {
    return {exact_moments_corrected(params, true).variance,
            exact_moments_standard(params, true).variance};
}

// Enumerates cov(AR_ss, correction | D != 0) for the correction term
// ((A-m)/m)((n-D)/D - (n-D)/(D+1)) and assembles the full variance
// decomposition of the standard estimator around it.
inline VarianceDecomposition covariance_decomposition_check(const CaseControlParams& params) {
    detail::check_enumeration_cap(params);
    const BinomialPmf pmf_a = binomial_pmf(params.m, params.q);
    const BinomialPmf pmf_b = binomial_pmf(params.n, params.p);
    const long double mass = 1.0L - static_cast<long double>(pow_int(params.p, params.n));
    const count_t m = params.m;
    const count_t n = params.n;

    std::vector<double> corr_b(static_cast<std::size_t>(n));  // b-part of the correction
    for (count_t b = 0; b < n; ++b) {
        const count_t d = n - b;
        corr_b[static_cast<std::size_t>(b)] =
            static_cast<double>(n - d) / static_cast<double>(d) -
            static_cast<double>(n - d) / static_cast<double>(d + 1);
    }

    const auto value_ss = [&](count_t a, count_t b) {
        return detail::corrected_value(a, b, m - a, n - b);
    };
    const auto value_std = [&](count_t a, count_t b) {
        return detail::standard_value(a, b, m - a, n - b);
    };
    const auto value_corr = [&](count_t a, count_t b) {
        return static_cast<double>(a - m) / static_cast<double>(m) *
               corr_b[static_cast<std::size_t>(b)];
    };

    long double mean_ss = 0.0L, mean_std = 0.0L, mean_corr = 0.0L;
    for (count_t b = 0; b < n; ++b) {
        const long double wb = pmf_b.weights[static_cast<std::size_t>(b)];
        for (count_t a = 0; a <= m; ++a) {
            const long double w = pmf_a.weights[static_cast<std::size_t>(a)] * wb;
            mean_ss += w * value_ss(a, b);
            mean_std += w * value_std(a, b);
            mean_corr += w * value_corr(a, b);
        }
    }
    mean_ss /= mass;
    mean_std /= mass;
    mean_corr /= mass;

    long double var_ss = 0.0L, var_std = 0.0L, var_corr = 0.0L, cov = 0.0L;
    for (count_t b = 0; b < n; ++b) {
        const long double wb = pmf_b.weights[static_cast<std::size_t>(b)];
        for (count_t a = 0; a <= m; ++a) {
            const long double w = pmf_a.weights[static_cast<std::size_t>(a)] * wb;
            const long double dss = value_ss(a, b) - mean_ss;
            const long double dstd = value_std(a, b) - mean_std;
            const long double dcorr = value_corr(a, b) - mean_corr;
            var_ss += w * dss * dss;
            var_std += w * dstd * dstd;
            var_corr += w * dcorr * dcorr;
            cov += w * dss * dcorr;
        }
    }
    return {static_cast<double>(var_std / mass), static_cast<double>(var_ss / mass),
            static_cast<double>(var_corr / mass), static_cast<double>(cov / mass)};
}

// Smallest n >= 1 whose corrected-estimator bias bound ((1-q)/(1-p)) p^(n+1)
// falls strictly below tol. The bound is monotone decreasing in n; an
// analytic jump keeps the direct search short even for p near 1.
inline count_t min_controls(double q, double p, double tol) {
    if (!(q > 0.0 && q < 1.0) || !(p > 0.0 && p < 1.0)) {
        throw ValidationError("min_controls: q and p must lie strictly in (0, 1)");
    }
    if (!(tol > 0.0)) throw ValidationError("min_controls: tol must be > 0");

    const auto bound = [&](count_t n) {
        return (1.0 - q) / (1.0 - p) * pow_int(p, n + 1);
    };

    count_t n = 1;
    const double prefactor = (1.0 - q) / (1.0 - p);
    if (bound(1) >= tol) {
        const double guess = (std::log(tol) - std::log(prefactor)) / std::log(p) - 1.0;
        if (guess > 1.0) {
            n = static_cast<count_t>(guess);
        }
        while (n > 1 && bound(n - 1) < tol) --n;
    }
    while (bound(n) >= tol) ++n;
    return n;
}

}  // namespace attrisk
