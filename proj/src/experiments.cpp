#include "wka/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "wka/csv.hpp"
#include "wka/errors.hpp"
#include "wka/kernel_io.hpp"
#include "wka/suite.hpp"
#include "wka/svg.hpp"

namespace wka {

namespace {

using nlohmann::json;

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

struct Sink {
    const ExperimentSpec* spec;
    std::vector<std::string> files;

    void emit(const std::string& name, const std::string& content) {
        write_file_atomic(join_path(spec->output, name), content);
        files.push_back(name);
    }
};

double tolerance(const ExperimentSpec& spec, const std::string& name, double fallback) {
    const auto it = spec.tolerances.find(name);
    return it == spec.tolerances.end() ? fallback : it->second;
}

InvariantKernel load_kernel(const ExperimentSpec& spec, const GroupPtr& group) {
    if (!spec.kernel_file.empty()) {
        InvariantKernel k = read_invariant_kernel(read_file(spec.kernel_file));
        if (k.group()->name() != group->name())
            throw MismatchError("kernel document group " + k.group()->name() + " does not match --group " +
                                group->name());
        return k;
    }
    return parse_kernel_expr(spec.kernel, group, spec.coeff_dim);
}

// ---- growth -----------------------------------------------------------------

void run_growth(const ExperimentSpec& spec, Sink& sink) {
    const auto group = GroupModel::parse(spec.group);
    const GrowthReport rep = group->growth_analysis(spec.r_max);

    CsvTable csv({"r", "ball_size"});
    for (std::size_t i = 0; i < rep.radii.size(); ++i) csv.begin_row().cell(rep.radii[i]).cell(rep.ball_sizes[i]);
    sink.emit("growth.csv", csv.str());

    if (spec.emit_svg) {
        LinePlot plot("Ball growth: " + group->name(), "1+r", "#B(e,r)", true, true);
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < rep.radii.size(); ++i) {
            xs.push_back(1.0 + static_cast<double>(rep.radii[i]));
            ys.push_back(static_cast<double>(rep.ball_sizes[i]));
        }
        plot.add_series(group->name(), xs, ys);
        sink.emit("growth.svg", plot.render());
    }

    std::printf("growth %s: r_max=%llu  #B(e,r_max)=%llu  degree=%.4f  c=%.4f  polynomial=%s\n",
                group->name().c_str(), static_cast<unsigned long long>(spec.r_max),
                static_cast<unsigned long long>(rep.ball_sizes.back()), rep.degree_estimate, rep.growth_constant,
                rep.classified_polynomial ? "yes" : "no");
}

// ---- norms ------------------------------------------------------------------

void run_norms(const ExperimentSpec& spec, Sink& sink) {
    const auto group = GroupModel::parse(spec.group);
    const InvariantKernel kernel = load_kernel(spec, group);
    const Envelope env = envelope(kernel);

    CsvTable csv({"a", "weighted_norm"});
    for (const double a : spec.weight_grid) csv.begin_row().cell(a).cell(weighted_norm(env, Weight(a)));
    sink.emit("norms.csv", csv.str());

    CsvTable env_csv({"gamma", "length", "envelope"});
    for (const auto& e : env.entries())
        env_csv.begin_row().cell(group->format_element(e.gamma)).cell(e.length).cell(e.value);
    sink.emit("envelope.csv", env_csv.str());

    std::printf("norms %s: support=%zu  propagation=%llu\n", group->name().c_str(), kernel.entries().size(),
                static_cast<unsigned long long>(kernel.propagation()));
    for (const double a : spec.weight_grid) std::printf("  ||T||_%g = %.12g\n", a, weighted_norm(env, Weight(a)));
}

// ---- schur ------------------------------------------------------------------

void run_schur(const ExperimentSpec& spec, Sink& sink) {
    const auto group = GroupModel::parse(spec.group);
    const InvariantKernel kernel = load_kernel(spec, group);
    const NormReport rep = check_schur_bound(kernel, Weight(spec.a), spec.window, spec.schur_r_max,
                                             tolerance(spec, "power_iteration", 1e-10));

    CsvTable csv({"radius", "norm_2_estimate"});
    for (const auto& [radius, v] : rep.convergence_trace) csv.begin_row().cell(radius).cell(v);
    sink.emit("schur_trace.csv", csv.str());

    json rec;
    rec["norm_2_estimate"] = rep.norm_2_estimate;
    rec["window_radius"] = rep.window_radius;
    rec["schur_constant"] = rep.schur_constant;
    rec["schur_satisfied"] = rep.schur_satisfied;
    for (const auto& [exp, v] : rep.weighted_norms) rec["weighted_norms"][format_double(exp)] = v;
    sink.emit("schur_report.json", rec.dump(2) + "\n");

    if (spec.emit_svg) {
        LinePlot plot("Finite-section norm convergence", "window radius", "norm_2 estimate", false, false);
        std::vector<double> xs, ys;
        for (const auto& [radius, v] : rep.convergence_trace) {
            xs.push_back(static_cast<double>(radius));
            ys.push_back(v);
        }
        plot.add_series("norm_2", xs, ys);
        sink.emit("schur_trace.svg", plot.render());
    }

    std::printf("schur %s: ||T||_2 = %.9g  <=  C0 * ||T||_a = %.9g * %.9g = %.9g  [%s]\n", group->name().c_str(),
                rep.norm_2_estimate, rep.schur_constant, rep.weighted_norms.at(spec.a),
                rep.schur_constant * rep.weighted_norms.at(spec.a), rep.schur_satisfied ? "satisfied" : "VIOLATED");
}

// ---- truncate ---------------------------------------------------------------

void run_truncate(const ExperimentSpec& spec, Sink& sink) {
    const auto group = GroupModel::parse(spec.group);
    const InvariantKernel kernel = load_kernel(spec, group);
    const std::uint64_t prop = kernel.propagation();

    CsvTable csv({"n", "exact", "bound"});
    std::vector<double> xs, exact, bound;
    for (std::uint64_t n = 0; n <= prop; ++n) {
        const TruncationError te = truncation_error(kernel, Weight(spec.a), spec.r, n);
        csv.begin_row().cell(n).cell(te.exact).cell(te.bound);
        xs.push_back(1.0 + static_cast<double>(n));
        exact.push_back(te.exact);
        bound.push_back(te.bound);
    }
    sink.emit("truncate.csv", csv.str());

    if (spec.emit_svg) {
        LinePlot plot("Truncation error and tail bound", "1+n", "error", true, true);
        plot.add_series("exact", xs, exact);
        plot.add_series("bound", xs, bound);
        sink.emit("truncate.svg", plot.render());
    }

    std::printf("truncate: propagation=%llu  exact(0)=%.6g  bound(0)=%.6g  exact(prop)=%.6g\n",
                static_cast<unsigned long long>(prop), exact.front(), bound.front(), exact.back());
}

// ---- powers -----------------------------------------------------------------

void run_powers(const ExperimentSpec& spec, Sink& sink) {
    const auto group = GroupModel::parse(spec.group);
    const InvariantKernel kernel = load_kernel(spec, group);
    const PowerNormFit fit = power_norm_experiment(kernel, Weight(spec.a), spec.n_max, spec.window,
                                                   tolerance(spec, "power_iteration", 1e-10));

    CsvTable csv({"k", "power_norm_a", "excess_over_norm2_rate"});
    for (std::size_t i = 0; i < fit.power_norms.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        csv.begin_row()
            .cell(static_cast<std::uint64_t>(i + 1))
            .cell(fit.power_norms[i])
            .cell(std::log(fit.power_norms[i]) - k * std::log(fit.norm_2));
    }
    sink.emit("powers.csv", csv.str());

    json rec;
    rec["alpha"] = fit.alpha;
    rec["beta"] = fit.beta;
    rec["C"] = fit.c;
    rec["residual"] = fit.residual;
    rec["norm_2"] = fit.norm_2;
    rec["norm_a"] = fit.norm_a;
    rec["stopped_on_overflow"] = fit.stopped_on_overflow;
    rec["note"] = "exploratory fit; the power-norm inequality's constants are not asserted";
    sink.emit("powers_fit.json", rec.dump(2) + "\n");

    std::printf("powers: ||T||_2=%.6g ||T||_a=%.6g  fit alpha=%.4f beta=%.4f C=%.4f residual=%.3e%s\n", fit.norm_2,
                fit.norm_a, fit.alpha, fit.beta, fit.c, fit.residual,
                fit.stopped_on_overflow ? "  (stopped on overflow)" : "");
}

// ---- invert -----------------------------------------------------------------

std::vector<Weight> weight_grid_of(const ExperimentSpec& spec) {
    std::vector<Weight> grid;
    grid.reserve(spec.weight_grid.size());
    for (const double a : spec.weight_grid) grid.emplace_back(a);
    return grid;
}

void run_invert_single(const ExperimentSpec& spec, Sink& sink) {
    const auto group = GroupModel::parse(spec.group);
    const InvariantKernel kernel = load_kernel(spec, group);
    const NeumannResult res = neumann_inverse(kernel, spec.window, weight_grid_of(spec),
                                              tolerance(spec, "neumann", 1e-8));

    const Envelope env = envelope(res.inverse);
    CsvTable decay_csv({"gamma", "length", "envelope"});
    for (const auto& e : env.entries())
        decay_csv.begin_row().cell(group->format_element(e.gamma)).cell(e.length).cell(e.value);
    sink.emit("invert_decay.csv", decay_csv.str());

    CsvTable trace_csv({"iteration", "a", "partial_sum_norm_a"});
    for (const auto& [a, vals] : res.diag.weighted_norm_trace)
        for (std::size_t k = 0; k < vals.size(); ++k)
            trace_csv.begin_row().cell(static_cast<std::uint64_t>(k)).cell(a).cell(vals[k]);
    sink.emit("invert_trace.csv", trace_csv.str());

    json rec;
    rec["spectral_lower"] = res.diag.spectral_lower;
    rec["spectral_upper"] = res.diag.spectral_upper;
    rec["contraction_q"] = res.diag.contraction_q;
    rec["iterations"] = res.diag.iterations;
    rec["residual_2"] = res.diag.residual_2;
    rec["residual_2_left"] = res.diag.residual_2_left;
    rec["window_radius"] = res.diag.window_radius;
    rec["tolerance"] = res.diag.tolerance;
    if (std::isnan(res.diag.decay_exponent)) {
        rec["decay"] = nullptr;
    } else {
        rec["decay"]["exponent"] = res.diag.decay_exponent;
        rec["decay"]["residual"] = res.diag.decay_fit_residual;
    }
    for (const auto& [a, vals] : res.diag.weighted_norm_trace) rec["final_norms"][format_double(a)] = vals.back();
    sink.emit("invert_diagnostics.json", rec.dump(2) + "\n");

    if (spec.emit_svg) {
        LinePlot plot("Inverse envelope decay", "1+l", "envelope", true, true);
        std::vector<double> xs, ys;
        for (const auto& e : env.entries()) {
            xs.push_back(1.0 + static_cast<double>(e.length));
            ys.push_back(e.value);
        }
        plot.add_series("inverse", xs, ys);
        sink.emit("invert_decay.svg", plot.render());
    }

    std::printf("invert: M=%.6g N=%.6g q=%.6g iterations=%llu residual=%.3e", res.diag.spectral_lower,
                res.diag.spectral_upper, res.diag.contraction_q,
                static_cast<unsigned long long>(res.diag.iterations), res.diag.residual_2);
    if (!std::isnan(res.diag.decay_exponent))
        std::printf("  decay b=%.3f (residual %.3e)", res.diag.decay_exponent, res.diag.decay_fit_residual);
    std::printf("\n");
}

void run_invert_schedule(const ExperimentSpec& spec, Sink& sink) {
    const auto group = GroupModel::parse(spec.group);
    const InvariantKernel kernel = load_kernel(spec, group);
    const InverseClosednessReport rep = inverse_closedness_report(kernel, spec.window_schedule, weight_grid_of(spec),
                                                                  tolerance(spec, "neumann", 1e-8));

    CsvTable norms_csv({"window", "a", "inverse_norm_a"});
    for (const auto& [a, per_window] : rep.weighted_norms)
        for (std::size_t i = 0; i < per_window.size(); ++i)
            norms_csv.begin_row().cell(rep.windows[i]).cell(a).cell(per_window[i]);
    sink.emit("closedness_norms.csv", norms_csv.str());

    CsvTable diff_csv({"window_from", "window_to", "interior_max_diff"});
    for (std::size_t i = 0; i + 1 < rep.windows.size(); ++i)
        diff_csv.begin_row().cell(rep.windows[i]).cell(rep.windows[i + 1]).cell(rep.interior_diffs[i]);
    sink.emit("closedness_interior.csv", diff_csv.str());

    CsvTable decay_csv({"window", "decay_b", "fit_residual"});
    for (std::size_t i = 0; i < rep.windows.size(); ++i)
        decay_csv.begin_row().cell(rep.windows[i]).cell(rep.decay[i].exponent).cell(rep.decay[i].residual);
    sink.emit("closedness_decay.csv", decay_csv.str());

    std::printf("invert (schedule of %zu windows): interior diffs", rep.windows.size());
    for (const double d : rep.interior_diffs) std::printf(" %.3e", d);
    std::printf("\n");
    for (const auto& [a, per_window] : rep.weighted_norms) {
        std::printf("  ||T^-1||_%g:", a);
        for (const double v : per_window) std::printf(" %.9g", v);
        std::printf("\n");
    }
}

}  // namespace

std::string spec_to_json(const ExperimentSpec& spec) {
    json j;
    j["command"] = spec.command;
    j["group"] = spec.group;
    j["coeff_dim"] = spec.coeff_dim;
    j["weight_grid"] = spec.weight_grid;
    j["a"] = spec.a;
    j["r"] = spec.r;
    j["kernel"] = spec.kernel;
    j["kernel_file"] = spec.kernel_file;
    j["window"] = spec.window;
    j["window_schedule"] = spec.window_schedule;
    j["r_max"] = spec.r_max;
    j["schur_r_max"] = spec.schur_r_max;
    j["n_max"] = spec.n_max;
    j["tolerances"] = spec.tolerances;
    j["output"] = spec.output;
    j["emit_svg"] = spec.emit_svg;
    j["quick"] = spec.quick;
    return j.dump(2) + "\n";
}

ExperimentSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("experiment spec is not valid JSON: ") + e.what());
    }
    ExperimentSpec spec;
    try {
        spec.command = j.at("command").get<std::string>();
        if (j.contains("group")) spec.group = j["group"].get<std::string>();
        if (j.contains("coeff_dim")) spec.coeff_dim = j["coeff_dim"].get<int>();
        if (j.contains("weight_grid")) spec.weight_grid = j["weight_grid"].get<std::vector<double>>();
        if (j.contains("a")) spec.a = j["a"].get<double>();
        if (j.contains("r")) spec.r = j["r"].get<double>();
        if (j.contains("kernel")) spec.kernel = j["kernel"].get<std::string>();
        if (j.contains("kernel_file")) spec.kernel_file = j["kernel_file"].get<std::string>();
        if (j.contains("window")) spec.window = j["window"].get<std::uint64_t>();
        if (j.contains("window_schedule"))
            spec.window_schedule = j["window_schedule"].get<std::vector<std::uint64_t>>();
        if (j.contains("r_max")) spec.r_max = j["r_max"].get<std::uint64_t>();
        if (j.contains("schur_r_max")) spec.schur_r_max = j["schur_r_max"].get<std::uint64_t>();
        if (j.contains("n_max")) spec.n_max = j["n_max"].get<int>();
        if (j.contains("tolerances")) spec.tolerances = j["tolerances"].get<std::map<std::string, double>>();
        if (j.contains("output")) spec.output = j["output"].get<std::string>();
        if (j.contains("emit_svg")) spec.emit_svg = j["emit_svg"].get<bool>();
        if (j.contains("quick")) spec.quick = j["quick"].get<bool>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("experiment spec has a bad field: ") + e.what());
    }
    return spec;
}

std::vector<std::string> run_experiment(const ExperimentSpec& spec) {
    Sink sink{&spec, {}};
    if (spec.command == "growth") {
        run_growth(spec, sink);
    } else if (spec.command == "norms") {
        run_norms(spec, sink);
    } else if (spec.command == "schur") {
        run_schur(spec, sink);
    } else if (spec.command == "truncate") {
        run_truncate(spec, sink);
    } else if (spec.command == "powers") {
        run_powers(spec, sink);
    } else if (spec.command == "invert") {
        if (spec.window_schedule.size() >= 2)
            run_invert_schedule(spec, sink);
        else
            run_invert_single(spec, sink);
    } else {
        throw ValidationError("unknown experiment command '" + spec.command + "'");
    }
    sink.emit("experiment_spec.json", spec_to_json(spec));
    return sink.files;
}

}  // namespace wka
