// attrisk: command-line front end for attributable-risk estimation from
// case-control 2x2 tables. Exit codes: 0 success, 1 validation/parse error,
// 2 computation error.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "attrisk/attrisk.hpp"

namespace {

using namespace attrisk;

std::string fmt_params(const CaseControlParams& pr) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "q=%g p=%g m=%" PRId64 " n=%" PRId64, pr.q, pr.p,
                  pr.m, pr.n);
    return buf;
}

OutputFormat parse_format(const std::string& name) {
    return name == "csv" ? OutputFormat::csv : OutputFormat::table;
}

void run_estimate(const std::string& file, const std::string& output, int precision) {
    const StratifiedDataset dataset = parse_dataset_file(file);
    const auto rows = estimate_rows(dataset);
    std::cout << render_report(rows, parse_format(output), precision);
}

void run_table1(const std::string& output, int precision) {
    std::cout << render_table1(table1_rows(), parse_format(output), precision);
}

void run_exact_bias(const CaseControlParams& params, int precision) {
    const ExactMoments corrected = exact_moments_corrected(params);
    const ExactMoments standard = exact_moments_standard(params);
    const double closed = bias_corrected_closed_form(params);
    const double residual = std::fabs(corrected.bias - closed);

    std::cout << "parameters: " << fmt_params(params) << '\n';
    std::vector<std::vector<std::string>> cells{
        {"ar_star", format_fixed(ar_star(params), precision)},
        {"bias_standard", format_fixed(standard.bias, precision)},
        {"bias_corrected", format_fixed(corrected.bias, precision)},
        {"bias_closed_form", format_fixed(closed, precision)},
        {"var_standard", format_fixed(standard.variance, precision)},
        {"var_corrected", format_fixed(corrected.variance, precision)},
    };
    for (const auto& row : cells) {
        std::printf("%-18s  %s\n", row[0].c_str(), row[1].c_str());
    }
    std::printf("%-18s  %.3e\n", "residual", residual);
}

void run_simulate(const SimConfig& config, int precision) {
    const SimReport report = run_simulation(config);

    std::cout << "parameters: " << fmt_params(config.params)
              << " replications=" << config.replications << " seed=" << config.seed
              << " conditioned=" << (config.condition_on_d_nonzero ? "yes" : "no") << '\n';
    std::cout << "effective_replications  " << report.effective_replications << '\n';
    std::cout << "discarded_d_zero        " << report.discarded_d_zero << '\n';

    bool have_exact = true;
    ExactMoments ex_std{}, ex_corr{};
    try {
        ex_std = exact_moments_standard(config.params, config.condition_on_d_nonzero);
        ex_corr = exact_moments_corrected(config.params, config.condition_on_d_nonzero);
    } catch (const ComputationError&) {
        have_exact = false;
    }

    const auto line = [&](const char* name, double empirical, double exact,
                          std::optional<double> se) {
        std::printf("%-16s  %12s", name, format_fixed(empirical, precision).c_str());
        if (have_exact) {
            std::printf("  %12s", format_fixed(exact, precision).c_str());
            if (se && *se > 0.0) {
                const double z = std::fabs(empirical - exact) / *se;
                std::printf("  %10.3e  %6.2f  %s", *se, z,
                            z <= 4.0 ? "within 4 se" : "OUTSIDE 4 se band");
            } else {
                std::printf("  %10s  %6s  no standard error", "n/a", "n/a");
            }
        }
        std::printf("\n");
    };

    if (have_exact) {
        std::printf("%-16s  %12s  %12s  %10s  %6s  check\n", "statistic", "empirical",
                    "exact", "se", "|z|");
    } else {
        std::printf("exact comparison unavailable (enumeration cap exceeded)\n");
        std::printf("%-16s  %12s\n", "statistic", "empirical");
    }
    line("bias_standard", report.empirical_bias_standard, ex_std.bias,
         report.se_bias_standard);
    line("bias_corrected", report.empirical_bias_corrected, ex_corr.bias,
         report.se_bias_corrected);
    if (report.empirical_var_standard) {
        line("var_standard", *report.empirical_var_standard, ex_std.variance,
             report.se_var_standard);
        line("var_corrected", *report.empirical_var_corrected, ex_corr.variance,
             report.se_var_corrected);
    } else {
        std::printf("var_standard      n/a (single effective replication)\n");
        std::printf("var_corrected     n/a (single effective replication)\n");
    }
}

void run_min_controls(double q, double p, double tol, int precision) {
    const count_t n = min_controls(q, p, tol);
    const auto bound = [&](count_t nn) {
        return (1.0 - q) / (1.0 - p) * pow_int(p, nn + 1);
    };
    std::cout << "min_controls  " << n << '\n';
    std::cout << "bound(n)      " << format_fixed(bound(n), precision) << '\n';
    std::cout << "bound(n-1)    " << format_fixed(bound(n - 1), precision) << '\n';
    std::cout << "tol           " << format_fixed(tol, precision) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attributable-risk estimation for case-control 2x2 tables"};
    app.require_subcommand(1);

    std::string output = "table";
    int precision = 4;
    std::string file;
    double q = 0.0, p = 0.0, tol = 0.005;
    attrisk::count_t m = 0, n = 0, reps = 0;
    std::uint64_t seed = 0;
    bool condition = false;

    const auto add_precision = [&](CLI::App* cmd) {
        cmd->add_option("--precision", precision, "printed decimal places")
            ->check(CLI::Range(0, 12))
            ->capture_default_str();
    };
    const auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--output", output, "output format")
            ->check(CLI::IsMember({"table", "csv"}))
            ->capture_default_str();
    };

    auto* cmd_estimate = app.add_subcommand(
        "estimate", "per-stratum attributable-risk estimates from a delimited count file");
    cmd_estimate->add_option("file", file, "input file (see README for the format)")
        ->required();
    add_output(cmd_estimate);
    add_precision(cmd_estimate);

    auto* cmd_table1 = app.add_subcommand(
        "table1", "exact-bias reference table for m = 10 cases, n = 10 controls");
    add_output(cmd_table1);
    add_precision(cmd_table1);

    auto* cmd_exact = app.add_subcommand(
        "exact-bias", "exact estimator bias/variance by binomial enumeration");
    cmd_exact->add_option("--q", q, "pr(case exposed)")->required();
    cmd_exact->add_option("--p", p, "pr(control exposed)")->required();
    cmd_exact->add_option("--m", m, "number of cases")->required();
    cmd_exact->add_option("--n", n, "number of controls")->required();
    add_precision(cmd_exact);

    auto* cmd_simulate = app.add_subcommand(
        "simulate", "seeded Monte Carlo check of the estimators against exact moments");
    cmd_simulate->add_option("--q", q, "pr(case exposed)")->required();
    cmd_simulate->add_option("--p", p, "pr(control exposed)")->required();
    cmd_simulate->add_option("--m", m, "number of cases")->required();
    cmd_simulate->add_option("--n", n, "number of controls")->required();
    cmd_simulate->add_option("--reps", reps, "number of replications")->required();
    cmd_simulate->add_option("--seed", seed, "64-bit seed")->required();
    cmd_simulate->add_flag("--condition-d-nonzero", condition,
                           "discard draws with zero unexposed controls");
    add_precision(cmd_simulate);

    auto* cmd_minc = app.add_subcommand(
        "min-controls", "smallest n with corrected-estimator bias bound below tol");
    cmd_minc->add_option("--q", q, "pr(case exposed)")->required();
    cmd_minc->add_option("--p", p, "pr(control exposed)")->required();
    cmd_minc->add_option("--tol", tol, "bias tolerance")->capture_default_str();
    add_precision(cmd_minc);

    try {
        app.parse(argc, argv);

        if (*cmd_estimate) {
            run_estimate(file, output, precision);
        } else if (*cmd_table1) {
            run_table1(output, precision);
        } else if (*cmd_exact) {
            run_exact_bias(attrisk::CaseControlParams(q, p, m, n), precision);
        } else if (*cmd_simulate) {
            run_simulate(attrisk::SimConfig(attrisk::CaseControlParams(q, p, m, n), reps,
                                            seed, condition),
                         precision);
        } else if (*cmd_minc) {
            run_min_controls(q, p, tol, precision);
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const attrisk::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const attrisk::ComputationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
