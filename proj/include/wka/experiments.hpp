#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wka/inversion.hpp"
#include "wka/kernel.hpp"
#include "wka/operator_analysis.hpp"

namespace wka {

/// One experiment run, fully described: every field has a default, so a spec
/// carrying only `command` (and a group) is runnable. Round-trips losslessly
/// through JSON (spec_to_json / spec_from_json); the CLI both accepts a spec
/// document (--spec) and writes the resolved spec next to the outputs.
struct ExperimentSpec {
    std::string command;  // growth | norms | schur | truncate | powers | invert | suite
    std::string group = "Z^1";
    int coeff_dim = 2;
    std::vector<double> weight_grid = {1.0, 2.0, 3.0};  // norms / invert traces
    double a = 1.0;                                     // schur / truncate / powers exponent
    double r = 2.0;                                     // truncate: bound decay exponent
    std::string kernel = "I";                           // mini-language expression
    std::string kernel_file;                            // interchange document, overrides kernel
    std::uint64_t window = 12;
    std::vector<std::uint64_t> window_schedule;  // invert: nonempty -> window-stability study
    std::uint64_t r_max = 12;                    // growth radius
    std::uint64_t schur_r_max = 50;              // Schur-constant summation radius
    int n_max = 8;                               // powers
    std::map<std::string, double> tolerances = {{"neumann", 1e-8}, {"power_iteration", 1e-10}};
    std::string output = ".";
    bool emit_svg = false;
    bool quick = false;  // suite subset

    bool operator==(const ExperimentSpec&) const = default;
};

std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);

/// Validates and executes one experiment: writes CSV/JSON artifacts (plus the
/// resolved spec document) under spec.output, prints a summary to stdout, and
/// returns the artifact names. Errors propagate as wka::Error.
std::vector<std::string> run_experiment(const ExperimentSpec& spec);

}  // namespace wka
