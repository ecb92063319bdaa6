// The CLI command suite: every command with fixed seeds, artifacts under one directory.
#ifndef BSS_TESTS_CLI_SUITE_HPP
#define BSS_TESTS_CLI_SUITE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bss/cli.hpp"
#include "corpus_util.hpp"

namespace testutil {

namespace fs = std::filesystem;

struct CliCall {
    std::string name;
    std::vector<std::string> args;
    int expected;
};

inline void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Commands relative to `dir`, which must exist.
inline std::vector<CliCall> cli_calls(const fs::path& dir) {
    const std::string d = dir.string() + "/";
    std::vector<CliCall> calls = {
        {"run_newton", {"run", "--machine", corpus_path("newton"), "--input", "1", "--budget", "1000", "--trace", d + "newton_trace.json"}, 0},
        {"run_mandelbrot", {"run", "--machine", corpus_path("mandelbrot"), "--input", "0,0", "--budget", "100", "--trace", d + "mandel_trace.json"}, 2},
        {"run_euclid", {"run", "--machine", corpus_path("euclid"), "--input", "84,36", "--budget", "100000"}, 0},
        {"run_shift", {"run", "--machine", corpus_path("shift_loop"), "--input", "2,1/3,-4", "--budget", "100", "--trace", d + "shift_trace.json"}, 0},
        {"run_bad_input", {"run", "--machine", corpus_path("newton"), "--input", "1/0"}, 65},
        {"check_sign", {"check-cells", "--machine", corpus_path("sign_branch"), "--dim", "1", "--depth", "50", "--samples", "1000", "--seed", "7", "--report", d + "check_sign.json"}, 0},
        {"check_newton", {"check-cells", "--machine", corpus_path("newton"), "--dim", "1", "--depth", "40", "--samples", "300", "--seed", "8", "--report", d + "check_newton.json"}, 0},
        {"check_zero", {"check-cells", "--machine", corpus_path("zero_test"), "--dim", "1", "--depth", "20", "--samples", "300", "--seed", "9"}, 0},
        {"order", {"structure", "order", "--pairs", "0<1,1<2,0<2", "--out", d + "order"}, 0},
        {"vectorspace", {"structure", "vectorspace", "--dim", "2", "--basis", "1,1;0,2", "--out", d + "vs"}, 0},
        {"cycles", {"structure", "cycles", "--set", "3,5", "--nmin", "2", "--nmax", "5", "--out", d + "cycles"}, 0},
        {"eval_order_true", {"eval", "--structure", d + "order/manifest.json", "--formula", d + "above.sexp", "--assign", "x=0", "--budget", "100000"}, 0},
        {"eval_order_false", {"eval", "--structure", d + "order/manifest.json", "--formula", d + "above.sexp", "--assign", "x=2", "--budget", "1000", "--exhaustive"}, 1},
        {"eval_order_unknown", {"eval", "--structure", d + "order/manifest.json", "--formula", d + "below_all.sexp", "--assign", "x=0", "--budget", "200", "--witnesses", "0;1;2;3/2"}, 2},
        {"eval_cycles", {"eval", "--structure", d + "cycles/manifest.json", "--formula", d + "edge.sexp", "--assign", "x=2,0", "--budget", "10000"}, 0},
        {"eval_cycles_pi2", {"eval", "--structure", d + "cycles/manifest.json", "--formula", d + "every_edge.sexp", "--budget", "10000"}, 0},
        {"usage", {"frobnicate"}, 64},
    };
    for (const auto& e : corpus_entries())
        calls.push_back({"paths_" + e.name,
                         {"paths", "--machine", corpus_path(e.name), "--dim", std::to_string(e.dim), "--depth", "60", "--format", "json",
                          "--out", d + "cells_" + e.name + ".json"},
                         0});
    return calls;
}

struct CliResult {
    std::string name;
    int code;
    int expected;
};

// Runs every call; stdout goes to NAME.out, stderr is discarded (it carries timings).
inline std::vector<CliResult> run_cli_suite(const fs::path& dir) {
    fs::create_directories(dir);
    write_text(dir / "above.sexp", "(exists (y) (< x y))\n");
    write_text(dir / "below_all.sexp", "(forall (y) (not (< y x)))\n");
    write_text(dir / "edge.sexp", "(exists (y) (E x y))\n");
    write_text(dir / "every_edge.sexp", "(forall (x) (exists (y) (E x y)))\n");
    std::vector<CliResult> results;
    for (const auto& c : cli_calls(dir)) {
        std::ostringstream out, err;
        const int code = bss::dispatch(c.args, out, err);
        write_text(dir / (c.name + ".out"), out.str());
        results.push_back({c.name, code, c.expected});
    }
    return results;
}

// Relative path -> contents for every file under dir.
inline std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_text(e.path());
    return files;
}

// Runs the suite twice at the same path and compares the artifacts byte for byte.
// Returns the paths that differ or appear in only one run.
inline std::vector<std::string> determinism_diff(const fs::path& base) {
    const fs::path work = base / "work";
    fs::remove_all(base);
    run_cli_suite(work);
    auto first = snapshot(work);
    fs::remove_all(work);
    run_cli_suite(work);
    auto second = snapshot(work);
    std::vector<std::string> diff;
    for (const auto& [path, text] : first) {
        auto it = second.find(path);
        if (it == second.end() || it->second != text) diff.push_back(path);
    }
    for (const auto& [path, text] : second)
        if (!first.count(path)) diff.push_back(path);
    if (first.empty()) diff.push_back("(no artifacts)");
    return diff;
}

}  // namespace testutil

#endif
