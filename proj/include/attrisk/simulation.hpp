#pragma once

// Seeded Monte Carlo harness over the binomial sampling model. Uniform draws
// come from a counter-based generator keyed on (seed, replication index), so
// replication i sees the same randomness no matter how or in what order the
// stream is consumed; reports are bitwise reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "attrisk/binomial.hpp"
#include "attrisk/errors.hpp"
#include "attrisk/exact_moments.hpp"
#include "attrisk/measures.hpp"
#include "attrisk/types.hpp"

namespace attrisk {

struct SimConfig {
    CaseControlParams params;
    count_t replications;
    std::uint64_t seed;
    bool condition_on_d_nonzero;

    SimConfig(CaseControlParams params_, count_t replications_, std::uint64_t seed_,
              bool condition_on_d_nonzero_ = false)
        : params(params_),
          replications(replications_),
          seed(seed_),
          condition_on_d_nonzero(condition_on_d_nonzero_) {
        if (replications < 1) {
            throw ValidationError("SimConfig: replications must be >= 1");
        }
    }
};

// Empirical moments and their Monte Carlo standard errors. Variances and
// standard errors are absent (not zero) when fewer than two replications
// survive conditioning.
struct SimReport {
    double empirical_bias_standard;
    double empirical_bias_corrected;
    std::optional<double> empirical_var_standard;
    std::optional<double> empirical_var_corrected;
    std::optional<double> se_bias_standard;
    std::optional<double> se_bias_corrected;
    std::optional<double> se_var_standard;
    std::optional<double> se_var_corrected;
    count_t effective_replications;
    count_t discarded_d_zero;
};

namespace detail {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// Uniform double in [0, 1) derived purely from (seed, index).
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t z = mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Inversion sampler over a precomputed binomial CDF.
class BinomialSampler {
public:
    BinomialSampler(count_t n, double p) : cdf_(static_cast<std::size_t>(n) + 1) {
        const BinomialPmf pmf = binomial_pmf(n, p);
        long double acc = 0.0L;
        for (std::size_t k = 0; k < cdf_.size(); ++k) {
            acc += pmf.weights[k];
            cdf_[k] = static_cast<double>(acc);
        }
        cdf_.back() = 1.0;  // u < 1 always lands
    }

    count_t operator()(double u) const {
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<count_t>(it - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
};

// Running central moments up to fourth order (Welford/Pebay updates),
// accumulated in replication-index order.
struct MomentAccumulator {
    long double n = 0.0L;
    long double mean = 0.0L;
    long double m2 = 0.0L;
    long double m3 = 0.0L;
    long double m4 = 0.0L;

    void push(double x) {
        const long double n1 = n;
        n += 1.0L;
        const long double delta = static_cast<long double>(x) - mean;
        const long double delta_n = delta / n;
        const long double delta_n2 = delta_n * delta_n;
        const long double term1 = delta * delta_n * n1;
        mean += delta_n;
        m4 += term1 * delta_n2 * (n * n - 3.0L * n + 3.0L) + 6.0L * delta_n2 * m2 -
              4.0L * delta_n * m3;
        m3 += term1 * delta_n * (n - 2.0L) - 3.0L * delta_n * m2;
        m2 += term1;
    }

    // Unbiased sample variance, (n - 1) denominator.
    double variance() const { return static_cast<double>(m2 / (n - 1.0L)); }

    double se_mean() const { return std::sqrt(variance() / static_cast<double>(n)); }

    // Distribution-free standard error of the sample variance,
    // var(s^2) ~= (m4_hat - s^4 (n-3)/(n-1)) / n.
    double se_variance() const {
        const long double nn = n;
        const long double s2 = m2 / (nn - 1.0L);
        const long double m4_hat = m4 / nn;
        long double v = (m4_hat - s2 * s2 * (nn - 3.0L) / (nn - 1.0L)) / nn;
        if (v < 0.0L) v = 0.0L;
        return std::sqrt(static_cast<double>(v));
    }
};

inline SimReport report_from(const MomentAccumulator& acc_std,
                             const MomentAccumulator& acc_corr, double target,
                             count_t effective, count_t discarded) {
    SimReport r{};
    r.empirical_bias_standard = static_cast<double>(acc_std.mean) - target;
    r.empirical_bias_corrected = static_cast<double>(acc_corr.mean) - target;
    if (effective >= 2) {
        r.empirical_var_standard = acc_std.variance();
        r.empirical_var_corrected = acc_corr.variance();
        r.se_bias_standard = acc_std.se_mean();
        r.se_bias_corrected = acc_corr.se_mean();
        r.se_var_standard = acc_std.se_variance();
        r.se_var_corrected = acc_corr.se_variance();
    }
    r.effective_replications = effective;
    r.discarded_d_zero = discarded;
    return r;
}

}  // namespace detail

// Draws A ~ Bin(m, q) and B ~ Bin(n, p) independently per replication and
// applies both estimators. Without conditioning, the standard estimator
// takes the corrected value on draws with D = 0; with conditioning, those
// draws are discarded from every statistic.
inline SimReport run_simulation(const SimConfig& config) {
    const auto& pr = config.params;
    const detail::BinomialSampler draw_cases(pr.m, pr.q);
    const detail::BinomialSampler draw_controls(pr.n, pr.p);
    const double target = ar_star(pr);

    detail::MomentAccumulator acc_std, acc_corr;
    count_t discarded = 0;
    for (count_t i = 0; i < config.replications; ++i) {
        const std::uint64_t idx = static_cast<std::uint64_t>(i);
        const count_t a = draw_cases(detail::counter_uniform(config.seed, 2 * idx));
        const count_t b = draw_controls(detail::counter_uniform(config.seed, 2 * idx + 1));
        const count_t d = pr.n - b;
        if (config.condition_on_d_nonzero && d == 0) {
            ++discarded;
            continue;
        }
        const double corrected = detail::corrected_value(a, b, pr.m - a, d);
        const double standard =
            (d == 0) ? corrected : detail::standard_value(a, b, pr.m - a, d);
        acc_std.push(standard);
        acc_corr.push(corrected);
    }

    const count_t effective = config.replications - discarded;
    if (effective == 0) {
        throw ComputationError(
            "run_simulation: conditioning on D != 0 discarded every replication");
    }
    return detail::report_from(acc_std, acc_corr, target, effective, discarded);
}

// One SimReport per checkpoint, each computed from the prefix of the same
// replication stream; the final checkpoint at config.replications matches
// run_simulation bit for bit.
inline std::vector<SimReport> convergence_sweep(const SimConfig& config,
                                                const std::vector<count_t>& checkpoints) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > config.replications) {
            throw ValidationError("convergence_sweep: checkpoints must lie in [1, replications]");
        }
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw ValidationError("convergence_sweep: checkpoints must be strictly ascending");
        }
    }
    if (checkpoints.empty()) return {};

    const auto& pr = config.params;
    const detail::BinomialSampler draw_cases(pr.m, pr.q);
    const detail::BinomialSampler draw_controls(pr.n, pr.p);
    const double target = ar_star(pr);

    std::vector<SimReport> reports;
    reports.reserve(checkpoints.size());
    detail::MomentAccumulator acc_std, acc_corr;
    count_t discarded = 0;
    std::size_t next = 0;
    for (count_t i = 0; i < checkpoints.back(); ++i) {
        const std::uint64_t idx = static_cast<std::uint64_t>(i);
        const count_t a = draw_cases(detail::counter_uniform(config.seed, 2 * idx));
        const count_t b = draw_controls(detail::counter_uniform(config.seed, 2 * idx + 1));
        const count_t d = pr.n - b;
        if (config.condition_on_d_nonzero && d == 0) {
            ++discarded;
        } else {
            const double corrected = detail::corrected_value(a, b, pr.m - a, d);
            const double standard =
                (d == 0) ? corrected : detail::standard_value(a, b, pr.m - a, d);
            acc_std.push(standard);
            acc_corr.push(corrected);
        }
        if (next < checkpoints.size() && i + 1 == checkpoints[next]) {
            const count_t effective = checkpoints[next] - discarded;
            if (effective == 0) {
                throw ComputationError(
                    "convergence_sweep: conditioning on D != 0 discarded every replication");
            }
            reports.push_back(
                detail::report_from(acc_std, acc_corr, target, effective, discarded));
            ++next;
        }
    }
    return reports;
}

}  // namespace attrisk
