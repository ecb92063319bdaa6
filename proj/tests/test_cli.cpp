#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "bss/cli.hpp"
#include "bss/dsl.hpp"
#include "bss/error.hpp"
#include "cli_suite.hpp"

using namespace bss;
namespace fs = std::filesystem;

namespace {

struct Call {
    int code;
    std::string out, err;
};

Call call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("bss_test_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("run") {
    auto newton = call({"run", "--machine", testutil::corpus_path("newton"), "--input", "1", "--budget", "1000"});
    CHECK(newton.code == 0);
    CHECK(newton.out.find("output: 577/408") != std::string::npos);

    auto mandel = call({"run", "--machine", testutil::corpus_path("mandelbrot"), "--input", "0,0", "--budget", "100"});
    CHECK(mandel.code == 2);
    CHECK(mandel.out.find("OutOfBudget") != std::string::npos);

    CHECK(call({"run", "--machine", "/nonexistent.bss"}).code == 65);
    CHECK(call({"run"}).code == 64);
}

TEST_CASE("trace json") {
    fs::path dir = scratch("trace");
    const std::string trace = (dir / "t.json").string();
    REQUIRE(call({"run", "--machine", testutil::corpus_path("newton"), "--input", "1", "--budget", "1000", "--trace", trace}).code == 0);
    auto j = nlohmann::json::parse(testutil::read_text(trace));
    CHECK(j["format_version"] == 1);
    CHECK(j["steps"].size() == 9);
    CHECK(j["steps"][0]["node"] == "start");
    CHECK(j["outcome"]["kind"] == "Halted");
    CHECK(j["outcome"]["output"][0] == "577/408");
}

TEST_CASE("check-cells") {
    auto r = call({"check-cells", "--machine", testutil::corpus_path("sign_branch"), "--dim", "1", "--depth", "50", "--samples", "1000", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("agree: 1000/1000") != std::string::npos);
}

TEST_CASE("structures and eval") {
    fs::path dir = scratch("suite");
    auto results = testutil::run_cli_suite(dir);
    for (const auto& r : results) {
        CAPTURE(r.name);
        CHECK(r.code == r.expected);
    }
    RStructure s = load_structure_manifest((dir / "order" / "manifest.json").string());
    CHECK(atomic_truth(s, "0 < 2", 100000) == Truth::True);
    CHECK(atomic_truth(s, "2 < 1", 100000) == Truth::False);
    RStructure v = load_structure_manifest((dir / "vs" / "manifest.json").string());
    CHECK(atomic_truth(v, "add((1,0),(0,1)) = (1,1)", 1000) == Truth::True);
    RStructure g = load_structure_manifest((dir / "cycles" / "manifest.json").string());
    REQUIRE(g.finite_universe);
    CHECK(g.oracle);
}

TEST_CASE("manifest errors") {
    fs::path dir = scratch("manifest");
    testutil::write_text(dir / "m.json", "{\"format_version\": 7}");
    CHECK_THROWS_AS(load_structure_manifest((dir / "m.json").string()), Error);
    testutil::write_text(dir / "bad.json", "{");
    CHECK_THROWS_AS(load_structure_manifest((dir / "bad.json").string()), Error);
}

TEST_CASE("dsl round trip on the corpus") {
    for (const char* name : {"identity", "sign_branch", "newton", "mandelbrot", "zero_test", "countdown", "shift_loop", "euclid"}) {
        CAPTURE(name);
        Machine m = testutil::corpus(name);
        const std::string text = print_machine_dsl(m);
        Machine back = parse_machine_dsl(text);
        CHECK(structurally_equal(m, back));
        CHECK(print_machine_dsl(back) == text);
    }
}

TEST_CASE("dsl diagnostics carry positions") {
    try {
        parse_machine_dsl("machine m over rational\nnode a: input -> b\nnode b: frob\n");
        FAIL("accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 9);
    }
    fs::path dir = scratch("diag");
    testutil::write_text(dir / "bad.bss", "machine m over rational\nnode a: input -> b\nnode b: frob\n");
    auto r = call({"run", "--machine", (dir / "bad.bss").string(), "--input", "1"});
    CHECK(r.code == 65);
    CHECK(r.err.find("3:9") != std::string::npos);
}

TEST_CASE("artifacts are deterministic") {
    CHECK(testutil::determinism_diff(fs::temp_directory_path() / "bss_test_cli_det").empty());
}

TEST_CASE("dsl examples") {
    Machine id = parse_machine_dsl("machine id over rational\nnode a: input -> b\nnode b: output\n");
    CHECK(id.nodes.size() == 2);
    CHECK_NOTHROW(parse_machine_dsl("machine d over rational\nnode a: input -> t\nnode t: branch x1 >= 0 ? b : b\nnode b: output\n"));
    CHECK_THROWS_AS(parse_machine_dsl("machine e over rational equational\nnode a: input -> t\nnode t: branch x1 >= 0 ? b : b\nnode b: output\n"),
                    ParseError);
}
