#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wka/csv.hpp"
#include "wka/errors.hpp"
#include "wka/exec.hpp"
#include "wka/experiments.hpp"
#include "wka/suite.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("WKA_OUT_DIR")) return env;
    return ".";
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw wka::ValidationError("empty list");
    return out;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    for (const double v : parse_double_list(csv)) out.push_back(static_cast<std::uint64_t>(v));
    return out;
}

int run_suite_command(const std::string& out_dir, bool quick) {
    const wka::SuiteResult result = wka::run_suite({out_dir, quick});
    for (const auto& item : result.items)
        std::printf("[%s] %-24s %8.2fs  %s\n", item.passed ? (item.skipped ? "SKIP" : "PASS") : "FAIL",
                    item.name.c_str(), item.seconds, item.detail.c_str());
    std::printf("%s  (manifest: %s)\n", result.all_passed ? "suite: all items passed" : "suite: FAILURES",
                result.manifest_path.c_str());
    return result.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wka: weighted kernel algebras over finitely generated groups.\n"
        "Finite-section norms, Schur bounds, truncation tails and Neumann inversion\n"
        "with deterministic CSV outputs (same spec and seeds give identical bytes).\n"
        "Every run also writes experiment_spec.json, rerunnable via --spec."};
    app.require_subcommand(1);

    wka::ExperimentSpec spec;
    spec.output = default_out_dir();
    std::string a_grid_str, schedule_str, spec_file;
    double tol_neumann = 1e-8, tol_power = 1e-10;
    bool serial = false, quick = false;

    auto add_common = [&](CLI::App* cmd, bool with_kernel) {
        cmd->add_option("--group", spec.group, "Group spec: Z^<d>, H3 or F<k>")->capture_default_str();
        cmd->add_option("--out", spec.output, "Output directory for CSV/JSON/SVG artifacts")
            ->capture_default_str();
        cmd->add_flag("--svg", spec.emit_svg, "Also write SVG charts (off by default)");
        cmd->add_flag("--serial", serial, "Run the block kernels on the serial reference path");
        if (with_kernel) {
            cmd->add_option("--coeff-dim", spec.coeff_dim, "Coefficient matrix dimension d")->capture_default_str();
            cmd->add_option("--kernel", spec.kernel,
                            "Kernel expression: sums of [scalar*]{I|shift|random(R,s,seed)}")
                ->capture_default_str();
            cmd->add_option("--kernel-file", spec.kernel_file, "Kernel interchange document (overrides --kernel)");
        }
    };

    auto* growth = app.add_subcommand("growth", "Ball sizes and growth classification.\n"
                                                "Writes growth.csv with columns: r, ball_size.");
    add_common(growth, false);
    growth->add_option("--rmax", spec.r_max, "Largest ball radius")->capture_default_str();

    auto* norms = app.add_subcommand("norms", "Weighted norms over an exponent grid.\n"
                                              "Writes norms.csv (a, weighted_norm) and envelope.csv "
                                              "(gamma, length, envelope).");
    add_common(norms, true);
    norms->add_option("--a-grid", a_grid_str, "Comma-separated weight exponents (default 1,2,3)");

    auto* schur = app.add_subcommand("schur", "Schur-type bound check ||T||_2 <= C0 ||T||_a.\n"
                                              "Writes schur_trace.csv (radius, norm_2_estimate) and "
                                              "schur_report.json.");
    add_common(schur, true);
    schur->add_option("--a", spec.a, "Weight exponent a")->capture_default_str();
    schur->add_option("--window", spec.window, "Finite-section window radius")->capture_default_str();
    schur->add_option("--rmax", spec.schur_r_max, "Summation radius for the Schur constant")->capture_default_str();
    schur->add_option("--tol", tol_power, "Power-iteration tolerance")->capture_default_str();

    auto* trunc = app.add_subcommand("truncate", "Truncation error vs the explicit tail bound.\n"
                                                 "Writes truncate.csv with columns: n, exact, bound.");
    add_common(trunc, true);
    trunc->add_option("--a", spec.a, "Weight exponent a")->capture_default_str();
    trunc->add_option("--r", spec.r, "Extra decay r in the bound (2+n)^{-r} ||T||_{a+r}")->capture_default_str();

    auto* powers = app.add_subcommand("powers", "Power-norm probe ||T^k||_a (exploratory fit).\n"
                                                "Writes powers.csv (k, power_norm_a, excess_over_norm2_rate) "
                                                "and powers_fit.json.");
    add_common(powers, true);
    powers->add_option("--a", spec.a, "Weight exponent a")->capture_default_str();
    powers->add_option("--nmax", spec.n_max, "Largest power k")->capture_default_str();
    powers->add_option("--window", spec.window, "Window radius for the ||T||_2 estimate")->capture_default_str();

    auto* invert = app.add_subcommand(
        "invert",
        "Neumann-series inversion with diagnostics.\n"
        "Single window: writes invert_decay.csv (gamma, length, envelope), invert_trace.csv\n"
        "(iteration, a, partial_sum_norm_a) and invert_diagnostics.json. With --schedule:\n"
        "closedness_norms.csv (window, a, inverse_norm_a), closedness_interior.csv\n"
        "(window_from, window_to, interior_max_diff) and closedness_decay.csv\n"
        "(window, decay_b, fit_residual).");
    add_common(invert, true);
    invert->add_option("--window", spec.window, "Window radius")->capture_default_str();
    invert->add_option("--schedule", schedule_str, "Increasing window schedule, e.g. 8,10,12");
    invert->add_option("--a-grid", a_grid_str, "Weight exponents traced per iteration (default 1,2,3)");
    invert->add_option("--tol", tol_neumann, "Neumann stopping tolerance")->capture_default_str();

    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON spec document.");
    run->add_option("--spec", spec_file, "Path to an experiment_spec.json")->required();
    run->add_flag("--serial", serial, "Run the block kernels on the serial reference path");

    auto* suite = app.add_subcommand("suite", "Run the full verification matrix and write a manifest.\n"
                                              "Writes per-item CSVs under <out>/run1 and <out>/run2 plus "
                                              "manifest.json; exits nonzero if any item fails.");
    suite->add_option("--out", spec.output, "Output directory")->capture_default_str();
    suite->add_flag("--quick", quick, "Fast subset (skips the two long-running items)");
    suite->add_flag("--serial", serial, "Run the block kernels on the serial reference path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: code=2 kind=validation: %s\n", e.what());
        return 2;
    }

    if (serial) wka::set_default_exec(wka::Exec::serial);

    try {
        if (suite->parsed()) return run_suite_command(spec.output, quick);

        if (run->parsed()) {
            spec = wka::spec_from_json(wka::read_file(spec_file));
            if (spec.command == "suite") return run_suite_command(spec.output, spec.quick);
        } else {
            for (auto* cmd : {growth, norms, schur, trunc, powers, invert})
                if (cmd->parsed()) spec.command = cmd->get_name();
            if (!a_grid_str.empty()) spec.weight_grid = parse_double_list(a_grid_str);
            if (!schedule_str.empty()) spec.window_schedule = parse_uint_list(schedule_str);
            spec.tolerances["neumann"] = tol_neumann;
            spec.tolerances["power_iteration"] = tol_power;
        }

        wka::run_experiment(spec);
        return 0;
    } catch (const wka::Error& e) {
        std::fprintf(stderr, "error: code=%d kind=%s: %s\n", e.exit_code(), e.kind().c_str(), e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: code=2 kind=unexpected: %s\n", e.what());
        return 2;
    }
}
