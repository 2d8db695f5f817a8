// shapecorr command-line interface: correlation reports, independence
// tests, null-law simulations, local-power experiments, and the exact
// verification suites. All commands are deterministic given the input
// bytes and the full flag set including --seed.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shapecorr/correlations.hpp"
#include "shapecorr/csv.hpp"
#include "shapecorr/gcm.hpp"
#include "shapecorr/isotonic.hpp"
#include "shapecorr/local_power.hpp"
#include "shapecorr/null_tests.hpp"
#include "shapecorr/perm_stats.hpp"
#include "shapecorr/ranks.hpp"
#include "shapecorr/rng.hpp"
#include "shapecorr/sample.hpp"

using json = nlohmann::ordered_json;
using namespace shapecorr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerification = 3;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json seed_json(RngSeed seed) {
    return json{{"seed", seed.seed}, {"stream", seed.stream}};
}

struct CommonOptions {
    std::string input;
    std::string x_col = "x";
    std::string y_col = "y";
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::size_t reps = 2000;
    std::size_t n = 1000;
    double lambda = 0.5;
    std::vector<std::string> statistics;
    std::string method;
    std::string format = "json";
    std::string family = "gauss-trend";
    std::size_t max_n = 7;
    std::string summary_file;

    RngSeed rng_seed() const { return {seed, stream}; }
};

Sample load_sample(const CommonOptions& opt) {
    if (opt.input.empty()) throw CsvError("no input file given (--input)");
    return ingest_csv(opt.input, opt.x_col, opt.y_col);
}

// ---------------------------------------------------------------- corr

int cmd_corr(const CommonOptions& opt) {
    Sample sample = load_sample(opt);
    double lambdas[1] = {opt.lambda};
    CorrelationReport report =
        correlation_report(sample, opt.rng_seed(), std::span<const double>(lambdas, 1));

    std::set<std::string> want(opt.statistics.begin(), opt.statistics.end());
    auto selected = [&](const std::string& name) { return want.empty() || want.count(name) > 0; };

    json out;
    out["n"] = report.n;
    out["seed"] = seed_json(report.seed);
    if (selected("cn")) out["chatterjee"] = report.chatterjee;
    if (selected("cmon")) {
        out["cmon"] = report.cmon;
        out["cmon_sqrt"] = report.cmon_sqrt;
    }
    if (selected("spearman")) out["spearman"] = report.spearman;
    if (selected("combined")) {
        out["combined"] = json{{"lambda", opt.lambda}, {"value", report.combined.at(opt.lambda)}};
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- test

StatisticKind statistic_kind_from_name(const std::string& name) {
    if (name == "cn") return StatisticKind::chatterjee;
    if (name == "cmon") return StatisticKind::cmon;
    if (name == "spearman") return StatisticKind::spearman;
    if (name == "combined") return StatisticKind::combined;
    throw CLI::ValidationError("--statistic", "unknown statistic '" + name + "'");
}

int cmd_test(const CommonOptions& opt) {
    Sample sample = load_sample(opt);
    std::vector<std::string> names = opt.statistics.empty()
                                         ? std::vector<std::string>{"cn"}
                                         : opt.statistics;
    const bool ties = has_ties(sample.x()) || has_ties(sample.y());

    json results = json::array();
    for (const auto& name : names) {
        StatisticKind kind = statistic_kind_from_name(name);
        std::string method = opt.method;
        if (method.empty()) method = kind == StatisticKind::cmon ? "mixture" : "asymptotic";
        if (method != "permutation" && ties)
            throw CsvError("sample has ties; the asymptotic null laws assume continuous data "
                           "(rerun with --method permutation)");
        if (method == "mixture" && kind != StatisticKind::cmon)
            throw CLI::ValidationError("--method", "the mixture law applies to cmon only");
        if (method == "asymptotic" && kind == StatisticKind::combined && opt.lambda == 0.0)
            throw CLI::ValidationError(
                "--lambda", "lambda = 0 is pure sqrt(cmon); use the mixture or permutation method");

        TestResult r;
        std::string note;
        if (method == "permutation") {
            r = permutation_test(kind, sample, opt.reps, opt.rng_seed(), opt.lambda);
        } else if (method == "mixture") {
            double cmon = cmon_hat(sample, opt.rng_seed());
            r = pvalue_cmon_mixture(cmon, sample.n(), opt.reps, opt.rng_seed());
        } else {
            switch (kind) {
                case StatisticKind::chatterjee:
                    r = pvalue_cn(chatterjee_cn(sample, opt.rng_seed()), sample.n());
                    break;
                case StatisticKind::cmon:
                    r = pvalue_cmon_clt(cmon_hat(sample, opt.rng_seed()), sample.n());
                    note = "asymptotic, slow convergence";
                    break;
                case StatisticKind::spearman:
                    r = pvalue_spearman_combo(0.0, spearman_rho(sample), 0.0, sample.n());
                    break;
                case StatisticKind::combined: {
                    double cn = chatterjee_cn(sample, opt.rng_seed());
                    double cmon = cmon_hat(sample, opt.rng_seed());
                    r = pvalue_combined(combined_coefficient(cn, cmon, opt.lambda), sample.n(),
                                        opt.lambda);
                    break;
                }
            }
        }
        json entry;
        entry["statistic"] = name;
        entry["method"] = method;
        entry["value"] = r.statistic;
        entry["standardized"] = r.standardized;
        entry["p_value"] = r.p_value;
        entry["law"] = r.law.name();
        if (r.law.kind == NullLaw::Kind::normal) {
            entry["law_mean"] = r.law.mean;
            entry["law_variance"] = r.law.variance;
        }
        if (r.mc_se > 0) entry["mc_se"] = r.mc_se;
        if (r.law.reps > 0) entry["reps"] = r.law.reps;
        if (!note.empty()) entry["note"] = note;
        results.push_back(entry);
    }

    json out;
    out["n"] = sample.n();
    out["seed"] = seed_json(opt.rng_seed());
    out["results"] = results;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------ simulate

int cmd_simulate(const CommonOptions& opt) {
    if (opt.n < 10) throw CLI::ValidationError("--n", "simulate requires n >= 10");
    if (opt.reps < 100) throw CLI::ValidationError("--reps", "simulate requires reps >= 100");

    double sqrt_n = std::sqrt(static_cast<double>(opt.n));
    std::vector<double> col_cn, col_cmon, col_cs, col_comb;
    col_cn.reserve(opt.reps);
    col_cmon.reserve(opt.reps);
    col_cs.reserve(opt.reps);
    col_comb.reserve(opt.reps);

    std::printf("sqrt_n_cn,n_cmon,sqrt_n_cs,combined\n");
    double lambdas[1] = {opt.lambda};
    for (std::size_t r = 0; r < opt.reps; ++r) {
        Rng rng(opt.rng_seed().substream(2 * r));
        std::vector<double> x(opt.n), y(opt.n);
        for (std::size_t i = 0; i < opt.n; ++i) {
            x[i] = rng.next_double();
            y[i] = rng.next_double();
        }
        Sample sample(std::move(x), std::move(y));
        CorrelationReport rep = correlation_report(sample, opt.rng_seed().substream(2 * r + 1),
                                                   std::span<const double>(lambdas, 1));
        double a = sqrt_n * rep.chatterjee;
        double b = static_cast<double>(opt.n) * rep.cmon;
        double c = sqrt_n * rep.spearman;
        double d = rep.combined.at(opt.lambda);
        col_cn.push_back(a);
        col_cmon.push_back(b);
        col_cs.push_back(c);
        col_comb.push_back(d);
        std::printf("%s,%s,%s,%s\n", format_double(a).c_str(), format_double(b).c_str(),
                    format_double(c).c_str(), format_double(d).c_str());
    }

    auto column_summary = [](const std::vector<double>& v) {
        return json{{"mean", mean_of(v)}, {"variance", variance_of(v)}};
    };
    json summary;
    summary["n"] = opt.n;
    summary["reps"] = opt.reps;
    summary["lambda"] = opt.lambda;
    summary["seed"] = seed_json(opt.rng_seed());
    summary["sqrt_n_cn"] = column_summary(col_cn);
    summary["n_cmon"] = column_summary(col_cmon);
    summary["sqrt_n_cs"] = column_summary(col_cs);
    summary["combined"] = column_summary(col_comb);
    if (!opt.summary_file.empty()) {
        std::ofstream out(opt.summary_file);
        if (!out) throw CsvError("cannot write summary file: " + opt.summary_file);
        out << summary.dump(2) << "\n";
    } else {
        std::cerr << summary.dump(2) << "\n";
    }
    return kExitOk;
}

// --------------------------------------------------------------- power

PowerStatistic power_statistic_from_name(const std::string& name) {
    if (name == "score") return PowerStatistic::score;
    if (name == "cn") return PowerStatistic::chatterjee;
    if (name == "cmon-sqrt") return PowerStatistic::cmon_sqrt;
    if (name == "spearman") return PowerStatistic::spearman;
    if (name == "combined") return PowerStatistic::combined;
    throw CLI::ValidationError("--statistic", "unknown power statistic '" + name + "'");
}

int cmd_power(const CommonOptions& opt) {
    ParametricFamily family = family_by_name(opt.family);
    std::vector<std::string> names = opt.statistics.empty()
                                         ? std::vector<std::string>{"score", "cn"}
                                         : opt.statistics;

    json rows = json::array();
    auto add_row = [&](const std::string& record, const std::string& statistic, std::size_t n,
                       std::size_t reps, double estimate, double se) {
        rows.push_back(json{{"record", record},
                            {"statistic", statistic},
                            {"family", family.name},
                            {"n", n},
                            {"reps", reps},
                            {"estimate", estimate},
                            {"se", se},
                            {"seed", opt.seed},
                            {"stream", opt.stream}});
    };

    for (const auto& name : names) {
        PowerStatistic stat = power_statistic_from_name(name);
        EfficiencyEstimate e =
            pitman_efficiency_mc(stat, family, opt.n, opt.reps, opt.rng_seed(), opt.lambda);
        add_row("efficiency-rho-sq", name, e.n, e.reps, e.rho_sq, 2.0 * std::abs(e.rho) * e.se_rho);
        add_row("efficiency-rho", name, e.n, e.reps, e.rho, e.se_rho);
    }
    CancellationEstimate c = cancellation_check(family, opt.n, opt.reps, opt.rng_seed());
    add_row("cancellation", "cn", c.n, c.reps, c.combined, c.combined_se);
    add_row("cancellation-abs-diff", "cn", c.n, c.reps, c.cov_abs_diff, c.se_abs_diff);
    add_row("cancellation-v-product", "cn", c.n, c.reps, c.cov_v_product, c.se_v_product);

    if (opt.format == "csv") {
        std::printf("record,statistic,family,n,reps,estimate,se,seed,stream\n");
        for (const auto& row : rows) {
            std::printf("%s,%s,%s,%zu,%zu,%s,%s,%" PRIu64 ",%" PRIu64 "\n",
                        row["record"].get<std::string>().c_str(),
                        row["statistic"].get<std::string>().c_str(),
                        row["family"].get<std::string>().c_str(), row["n"].get<std::size_t>(),
                        row["reps"].get<std::size_t>(),
                        format_double(row["estimate"].get<double>()).c_str(),
                        format_double(row["se"].get<double>()).c_str(),
                        row["seed"].get<std::uint64_t>(), row["stream"].get<std::uint64_t>());
        }
    } else {
        std::cout << json{{"family", family.name}, {"rows", rows}}.dump(2) << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------- verify

struct VerifyCheck {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_verify(const CommonOptions& opt) {
    std::vector<VerifyCheck> checks;
    Rng rng(opt.rng_seed());

    std::size_t bijection_cap = std::min<std::size_t>(opt.max_n, 7);
    for (std::size_t n = 1; n <= bijection_cap; ++n) {
        BijectionReport rep = verify_bijection(n);
        bool ok = rep.bijective && rep.cycle_counts_match_stirling && !rep.degenerate;
        checks.push_back({"bijection-n" + std::to_string(n), ok,
                          ok ? "all " + std::to_string(n) + "! outputs distinct; cycle counts match"
                             : "bijection or cycle-count mismatch"});
    }

    std::size_t cycle_cap = std::min<std::size_t>(opt.max_n + 1, 8);
    bool cycles_ok = true;
    for (std::size_t n = 1; n <= cycle_cap; ++n) {
        std::vector<Frac64> counts = expected_cycle_counts(n);
        for (std::size_t len = 1; len <= n; ++len) {
            if (!(counts[len - 1] == Frac64{1, static_cast<long long>(len)})) cycles_ok = false;
        }
    }
    checks.push_back({"cycle-length-expectation", cycles_ok,
                      "exact equality with (1; 1/2; ...; 1/n) up to n=" + std::to_string(cycle_cap)});

    // Exact GCM/PAVA equivalence on random integer inputs.
    bool gcm_ok = true;
    for (int trial = 0; trial < 200 && gcm_ok; ++trial) {
        std::size_t len = 2 + static_cast<std::size_t>(rng.next_below(1999));
        std::vector<long long> values(len);
        std::vector<long long> cumsum(len + 1, 0);
        for (std::size_t i = 0; i < len; ++i) {
            values[i] = static_cast<long long>(rng.next_below(2001)) - 1000;
            cumsum[i + 1] = cumsum[i] + values[i];
        }
        std::vector<Frac64> fitted = pava_exact(values);
        std::vector<std::size_t> knots = gcm_knots_exact(std::span<const long long>(cumsum));
        std::size_t k = 1;
        for (std::size_t i = 0; i < len; ++i) {
            while (knots[k] < i + 1) ++k;
            Frac64 slope{cumsum[knots[k]] - cumsum[knots[k - 1]],
                         static_cast<long long>(knots[k] - knots[k - 1])};
            if (!(slope == fitted[i])) gcm_ok = false;
        }
    }
    checks.push_back({"gcm-pava-equivalence", gcm_ok, "exact equality on 200 random integer inputs"});

    // Cone-projection identities for the weighted fit.
    bool cone_ok = true;
    for (int trial = 0; trial < 200 && cone_ok; ++trial) {
        std::size_t len = 2 + static_cast<std::size_t>(rng.next_below(199));
        std::vector<double> v(len), w(len);
        for (std::size_t i = 0; i < len; ++i) {
            v[i] = 2.0 * rng.next_double() - 1.0;
            w[i] = 0.1 + rng.next_double();
        }
        IsotonicFit fit = pava(v, w);
        double cross = 0, sq = 0, mean_in = 0, mean_fit = 0;
        for (std::size_t i = 0; i < len; ++i) {
            cross += w[i] * v[i] * fit.fitted[i];
            sq += w[i] * fit.fitted[i] * fit.fitted[i];
            mean_in += w[i] * v[i];
            mean_fit += w[i] * fit.fitted[i];
        }
        if (std::abs(cross - sq) > 1e-9 * std::max(1.0, std::abs(sq))) cone_ok = false;
        if (std::abs(mean_in - mean_fit) > 1e-12 * std::max(1.0, std::abs(mean_in))) cone_ok = false;
    }
    checks.push_back({"cone-projection-identities", cone_ok,
                      "inner-product and mean identities on 200 random weighted inputs"});

    // Isotonic sum of squares against f2 of the bijection image.
    bool bs_ok = true;
    {
        std::size_t n = 200;
        StandardizedGrid grid = standardized_grid(n);
        PerturbedValues values = PerturbedValues::for_grid(n);
        for (int trial = 0; trial < 50 && bs_ok; ++trial) {
            Permutation perm = random_permutation(n, rng);
            double lhs = isotonic_sum_sq(perm, grid);
            double rhs = f2(bohnenblust_spitzer(perm, values), grid);
            if (std::abs(lhs - rhs) > 1e-6) bs_ok = false;
        }
    }
    checks.push_back({"slope-cycle-identity", bs_ok,
                      "isotonic sum of squares matches the cycle statistic of the bijection image"});

    bool all_pass = true;
    if (opt.format == "csv") {
        std::printf("check,pass,detail\n");
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            std::printf("%s,%s,%s\n", c.name.c_str(), c.pass ? "pass" : "FAIL", c.detail.c_str());
        }
    } else {
        json out = json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            out.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        }
        std::cout << out.dump(2) << "\n";
    }
    return all_pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-based and shape-restricted correlation toolkit"};
    app.require_subcommand(1);
    CommonOptions opt;

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input) {
            cmd->add_option("--input", opt.input, "CSV input path");
            cmd->add_option("--x", opt.x_col, "X column name or 0-based index");
            cmd->add_option("--y", opt.y_col, "Y column name or 0-based index");
        }
        cmd->add_option("--seed", opt.seed, "64-bit seed");
        cmd->add_option("--stream", opt.stream, "stream id for seed splitting");
        cmd->add_option("--lambda", opt.lambda, "weight of the Chatterjee term in combinations")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* corr = app.add_subcommand("corr", "correlation report for a CSV sample");
    add_common(corr, true);
    corr->add_option("--statistic", opt.statistics, "subset of {cn, cmon, spearman, combined}");

    CLI::App* test = app.add_subcommand("test", "independence tests for a CSV sample");
    add_common(test, true);
    test->add_option("--statistic", opt.statistics, "subset of {cn, cmon, spearman, combined}");
    test->add_option("--method", opt.method, "test method")
        ->check(CLI::IsMember({"asymptotic", "mixture", "permutation"}));
    test->add_option("--reps", opt.reps, "Monte Carlo replicates for mixture/permutation methods");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "per-replicate null draws of the scaled statistics (CSV rows on stdout)");
    add_common(simulate, false);
    simulate->add_option("--n", opt.n, "sample size per replicate");
    simulate->add_option("--reps", opt.reps, "number of replicates");
    simulate->add_option("--summary-file", opt.summary_file,
                         "write the JSON summary here instead of stderr");

    CLI::App* power = app.add_subcommand("power", "efficiency estimates and cancellation checks");
    add_common(power, false);
    power->add_option("--family", opt.family, "model family (gauss-trend, sign-trend, x-only)");
    power->add_option("--statistic", opt.statistics,
                      "subset of {score, cn, cmon-sqrt, spearman, combined}");
    power->add_option("--n", opt.n, "sample size per replicate");
    power->add_option("--reps", opt.reps, "number of replicates");

    CLI::App* verify = app.add_subcommand("verify", "exact verification suites");
    add_common(verify, false);
    verify->add_option("--max-n", opt.max_n, "cap for the exhaustive enumerations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (corr->parsed()) return cmd_corr(opt);
        if (test->parsed()) return cmd_test(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (power->parsed()) return cmd_power(opt);
        if (verify->parsed()) return cmd_verify(opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
