#pragma once

// Full Binomial(n, p) probability mass vectors for the exact enumeration
// engine. Weights are built by the multiplicative neighbor recurrence
// anchored at the mode and normalized, all in extended precision: weights
// stay accurate to a few ulp even for n in the thousands, where log-gamma
// differences lose too many digits for 1e-12 work.

#include <cmath>
#include <cstdint>
#include <vector>

#include "attrisk/errors.hpp"
#include "attrisk/types.hpp"

namespace attrisk {

struct BinomialPmf {
    count_t trials;
    double prob;
    std::vector<double> weights;  // weights[k] = pr(X = k), k = 0..trials
};

// Integer power by repeated squaring; pow_int(p, 1) returns p bit-exactly.
inline double pow_int(double base, count_t exponent) {
    long double acc = 1.0L;
    long double b = base;
    for (count_t e = exponent; e > 0; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return static_cast<double>(acc);
}

inline BinomialPmf binomial_pmf(count_t n, double p) {
    if (n < 1) throw ValidationError("binomial_pmf: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError("binomial_pmf: p must lie strictly in (0, 1)");
    }

    const long double lp = static_cast<long double>(p);
    const long double odds = lp / (1.0L - lp);

    count_t mode = static_cast<count_t>(std::floor((static_cast<double>(n) + 1.0) * p));
    if (mode > n) mode = n;

    // Unnormalized masses relative to the mode: u[k] = pmf(k) / pmf(mode).
    std::vector<long double> u(static_cast<std::size_t>(n) + 1);
    u[static_cast<std::size_t>(mode)] = 1.0L;
    for (count_t k = mode; k < n; ++k) {
        u[static_cast<std::size_t>(k + 1)] =
            u[static_cast<std::size_t>(k)] * odds *
            static_cast<long double>(n - k) / static_cast<long double>(k + 1);
    }
    for (count_t k = mode; k > 0; --k) {
        u[static_cast<std::size_t>(k - 1)] =
            u[static_cast<std::size_t>(k)] / odds *
            static_cast<long double>(k) / static_cast<long double>(n - k + 1);
    }

    long double total = 0.0L;
    for (const long double w : u) total += w;

    BinomialPmf pmf{n, p, std::vector<double>(static_cast<std::size_t>(n) + 1)};
    for (std::size_t k = 0; k < u.size(); ++k) {
        pmf.weights[k] = static_cast<double>(u[k] / total);
    }
    return pmf;
}

}  // namespace attrisk
