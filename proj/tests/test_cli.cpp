// Black-box checks of the command-line tool: artifacts, determinism, exit
// codes, and the hidden failure-injection hook for the suite manifest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wka/experiments.hpp"

#ifndef WKA_CLI_PATH
#error "WKA_CLI_PATH must point at the wka binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    const fs::path dir = fs::temp_directory_path() / "wka-cli-test";
    fs::create_directories(dir);
    const fs::path out_file = dir / "stdout.txt";
    const std::string cmd = env + std::string(WKA_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    const int code = WEXITSTATUS(status);
    return {code, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "wka-cli-test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("growth: CSV artifact and summary") {
    const auto dir = fresh_dir("growth");
    const auto res = run_cli("growth --group Z^2 --rmax 12 --out " + dir.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("degree=2.1") != std::string::npos);
    const std::string csv = slurp(dir / "growth.csv");
    CHECK(csv.rfind("r,ball_size\n0,1\n1,5\n", 0) == 0);
    CHECK(csv.find("12,313") != std::string::npos);
}

TEST_CASE("identical flags and seeds give byte-identical CSV outputs") {
    const auto dir1 = fresh_dir("det1");
    const auto dir2 = fresh_dir("det2");
    const std::string args = "norms --group Z^2 --coeff-dim 2 --kernel \"random(3,2,42)\" --a-grid 0,1,2,3 --out ";
    CHECK(run_cli(args + dir1.string()).exit_code == 0);
    CHECK(run_cli(args + dir2.string()).exit_code == 0);
    CHECK(slurp(dir1 / "norms.csv") == slurp(dir2 / "norms.csv"));
    CHECK(slurp(dir1 / "envelope.csv") == slurp(dir2 / "envelope.csv"));
}

TEST_CASE("invert: diagnostics record with residual under tolerance") {
    const auto dir = fresh_dir("invert");
    const auto res =
        run_cli("invert --group Z^1 --coeff-dim 1 --kernel \"I+0.4*shift\" --window 24 --out " + dir.string());
    CHECK(res.exit_code == 0);
    const auto diag = nlohmann::json::parse(slurp(dir / "invert_diagnostics.json"));
    CHECK(diag.at("residual_2").get<double>() < 1e-8);
    CHECK(diag.at("contraction_q").get<double>() < 1.0);
    CHECK(diag.at("decay").is_object());
    CHECK(fs::exists(dir / "invert_decay.csv"));
    CHECK(fs::exists(dir / "invert_trace.csv"));
}

TEST_CASE("exit codes: validation, precondition, non-convergence") {
    CHECK(run_cli("growth --group Q8").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    const auto pre = run_cli("schur --group F2 --a 3 --out " + fresh_dir("f2").string());
    CHECK(pre.exit_code == 3);
    CHECK(pre.out.find("u-growth") != std::string::npos);
    // Z with a=2 trips the tail-convergence gate at the default r_max
    const auto conv = run_cli("schur --group Z^1 --coeff-dim 1 --kernel I --a 2 --window 4 --out " +
                              fresh_dir("zconv").string());
    CHECK(conv.exit_code == 4);
}

TEST_CASE("help documents the CSV columns") {
    CHECK(run_cli("growth --help").out.find("ball_size") != std::string::npos);
    CHECK(run_cli("truncate --help").out.find("exact, bound") != std::string::npos);
    CHECK(run_cli("invert --help").out.find("partial_sum_norm_a") != std::string::npos);
}

TEST_CASE("WKA_OUT_DIR provides the default output directory") {
    const auto dir = fresh_dir("envdir");
    const auto res = run_cli("growth --group Z^1 --rmax 6", "WKA_OUT_DIR=" + dir.string() + " ");
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(dir / "growth.csv"));
}

TEST_CASE("experiment specs round-trip and rerun identically") {
    // library-level lossless round-trip
    wka::ExperimentSpec spec;
    spec.command = "invert";
    spec.group = "Z^2";
    spec.kernel = "I+0.1*random(2,4,9)";
    spec.window_schedule = {8, 10};
    spec.tolerances["neumann"] = 1e-7;
    CHECK(wka::spec_from_json(wka::spec_to_json(spec)) == spec);

    // a spec carrying only a command and a group is runnable
    wka::ExperimentSpec minimal;
    minimal.command = "growth";
    minimal.group = "Z^2";
    CHECK(wka::spec_from_json("{\"command\":\"growth\",\"group\":\"Z^2\"}") == minimal);

    // the written spec document reruns to byte-identical artifacts
    const auto dir1 = fresh_dir("spec1");
    const auto dir2 = fresh_dir("spec2");
    CHECK(run_cli("truncate --group Z^2 --kernel \"random(3,3,5)\" --a 1 --r 2 --out " + dir1.string()).exit_code ==
          0);
    std::string doc = slurp(dir1 / "experiment_spec.json");
    const std::string needle = "\"output\": \"" + dir1.string() + "\"";
    REQUIRE(doc.find(needle) != std::string::npos);
    doc.replace(doc.find(needle), needle.size(), "\"output\": \"" + dir2.string() + "\"");
    const fs::path respec = dir2 / "respec.json";
    {
        std::ofstream out(respec);
        out << doc;
    }
    CHECK(run_cli("run --spec " + respec.string()).exit_code == 0);
    CHECK(slurp(dir1 / "truncate.csv") == slurp(dir2 / "truncate.csv"));
}

TEST_CASE("invert with a window schedule writes the stability tables") {
    const auto dir = fresh_dir("schedule");
    const auto res = run_cli(
        "invert --group Z^1 --coeff-dim 1 --kernel \"I+0.4*shift\" --schedule 16,24 --out " + dir.string());
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(dir / "closedness_norms.csv"));
    CHECK(fs::exists(dir / "closedness_interior.csv"));
    CHECK(fs::exists(dir / "closedness_decay.csv"));
}

TEST_CASE("quick suite passes and the failure hook flags the manifest") {
    const auto dir = fresh_dir("suite");
    const auto good = run_cli("suite --quick --out " + dir.string());
    CHECK(good.exit_code == 0);
    CHECK(slurp(dir / "manifest.json").find("\"all_passed\": true") != std::string::npos);

    const auto bad_dir = fresh_dir("suite-bad");
    const auto bad = run_cli("suite --quick --out " + bad_dir.string(), "WKA_TEST_NEGATE_WEIGHT=1 ");
    CHECK(bad.exit_code != 0);
    const std::string manifest = slurp(bad_dir / "manifest.json");
    CHECK(manifest.find("\"all_passed\": false") != std::string::npos);
    CHECK(manifest.find("norm-monotonicity") != std::string::npos);
}
