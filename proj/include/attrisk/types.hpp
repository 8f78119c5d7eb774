#pragma once

#include <cstdint>
#include <string>

#include "attrisk/errors.hpp"

namespace attrisk {

using count_t = std::int64_t;

// Observed cell counts of a single case-control 2x2 table.
//
//                 exposed   unexposed
//      cases         a          c        (a + c = m cases)
//      controls      b          d        (b + d = n controls)
struct TwoByTwoTable {
    count_t a;  // exposed cases
    count_t b;  // exposed controls
    count_t c;  // unexposed cases
    count_t d;  // unexposed controls

    TwoByTwoTable(count_t a_, count_t b_, count_t c_, count_t d_)
        : a(a_), b(b_), c(c_), d(d_) {
        if (a < 0 || b < 0 || c < 0 || d < 0) {
            throw ValidationError("TwoByTwoTable: counts must be non-negative");
        }
        if (a + c < 1) {
            throw ValidationError("TwoByTwoTable: need at least one case (a + c >= 1)");
        }
        if (b + d < 1) {
            throw ValidationError("TwoByTwoTable: need at least one control (b + d >= 1)");
        }
    }

    count_t cases() const { return a + c; }     // m
    count_t controls() const { return b + d; }  // n
};

// True parameters of the sampling model: the exposed-case count is
// Binomial(m, q) and the exposed-control count is Binomial(n, p),
// independently.
struct CaseControlParams {
    double q;   // probability a case is exposed
    double p;   // probability a control is exposed
    count_t m;  // number of cases
    count_t n;  // number of controls

    CaseControlParams(double q_, double p_, count_t m_, count_t n_)
        : q(q_), p(p_), m(m_), n(n_) {
        if (!(q > 0.0 && q < 1.0)) {
            throw ValidationError("CaseControlParams: q must lie strictly in (0, 1)");
        }
        if (!(p > 0.0 && p < 1.0)) {
            throw ValidationError("CaseControlParams: p must lie strictly in (0, 1)");
        }
        if (m < 1) throw ValidationError("CaseControlParams: m must be >= 1");
        if (n < 1) throw ValidationError("CaseControlParams: n must be >= 1");
    }
};

// Cohort-level probabilities, used to study how the odds-ratio-based measure
// relates to the relative-risk-based one.
struct PopulationParams {
    double risk_exposed;    // pr(disease | exposed)
    double risk_unexposed;  // pr(disease | unexposed)
    double prev_exposed;    // pr(exposed)

    PopulationParams(double risk_exposed_, double risk_unexposed_, double prev_exposed_)
        : risk_exposed(risk_exposed_),
          risk_unexposed(risk_unexposed_),
          prev_exposed(prev_exposed_) {
        auto open_unit = [](double x) { return x > 0.0 && x < 1.0; };
        if (!open_unit(risk_exposed) || !open_unit(risk_unexposed) || !open_unit(prev_exposed)) {
            throw ValidationError("PopulationParams: all probabilities must lie strictly in (0, 1)");
        }
        const double pd = disease_probability();
        if (!open_unit(pd)) {
            throw ValidationError("PopulationParams: marginal disease probability must lie in (0, 1)");
        }
    }

    // pr(disease), marginalized over exposure.
    double disease_probability() const {
        return risk_exposed * prev_exposed + risk_unexposed * (1.0 - prev_exposed);
    }
};

enum class EstimatorKind { standard, corrected };

inline std::string to_string(EstimatorKind kind) {
    return kind == EstimatorKind::standard ? "standard" : "corrected";
}

// Point estimate of the attributable risk. `defined` is false only for the
// standard estimator on a table with d = 0, in which case `value` carries the
// corrected estimate instead.
struct EstimateResult {
    double value;
    EstimatorKind estimator_kind;
    bool defined;
};

}  // namespace attrisk
