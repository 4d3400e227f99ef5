/* End-to-end tests for the command-line driver.  Each case runs the real
 * binary (path injected as PMC_CLI_BIN by the build) against JSON fixtures
 * in a scratch directory and checks exit codes, output files, and the
 * byte-determinism contract. */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(PMC_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "pmc_cli_fixtures";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string put(const std::string& name, const json& doc) {
    const fs::path p = scratch() / name;
    std::ofstream out(p);
    out << doc.dump(2) << "\n";
    REQUIRE(out.good());
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

json load(const std::string& path) { return json::parse(slurp(path)); }

std::string outfile(const std::string& name) { return (scratch() / name).string(); }

json embedded_space(std::initializer_list<std::initializer_list<double>> pts) {
    json points = json::array();
    for (const auto& p : pts) points.push_back(p);
    return json{{"kind", "embedded"}, {"p", 2}, {"points", points}};
}

}  // namespace

TEST_CASE("decompose: chain current verifies and reports three paths") {
    const json space = embedded_space({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    const std::string input = put("chain.json", json{
        {"space", space}, {"edges", {{0, 1, 2.0}, {1, 2, 1.0}, {2, 3, 2.0}}}});
    const std::string out = outfile("chain_out.json");

    const RunResult r = run("decompose --input " + input + " --out " + out);
    CHECK(r.code == 0);
    CHECK(r.output.find("[FAIL]") == std::string::npos);

    const json doc = load(out);
    CHECK(doc.at("all_pass") == true);
    CHECK(doc.at("transport").at("atoms").size() == 3);
    CHECK(doc.at("cycle_mass") == 0.0);
    CHECK(doc.at("cycles").at("edges").empty());
    CHECK(doc.at("input_mass") == doc.at("acyclic_mass"));
}

TEST_CASE("decompose: triangle is pure cycle, transport comes back empty") {
    const json space = embedded_space({{0, 0}, {1, 0}, {0, 1}});
    const std::string input = put("triangle.json", json{
        {"space", space}, {"edges", {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}}});
    const std::string out = outfile("triangle_out.json");

    const RunResult r = run("decompose --input " + input + " --out " + out);
    CHECK(r.code == 0);
    const json doc = load(out);
    CHECK(doc.at("all_pass") == true);
    CHECK(doc.at("transport").at("atoms").empty());
    CHECK(doc.at("cycles").at("edges").size() == 3);
    CHECK(doc.at("acyclic_mass") == 0.0);
    CHECK(doc.at("cycle_mass").get<double>() == doctest::Approx(doc.at("input_mass").get<double>()));
}

TEST_CASE("decompose: empty current is fine") {
    const json space = embedded_space({{0, 0}});
    const std::string input = put("empty.json", json{{"space", space}, {"edges", json::array()}});
    const std::string out = outfile("empty_out.json");
    const RunResult r = run("decompose --input " + input + " --out " + out);
    CHECK(r.code == 0);
    const json doc = load(out);
    CHECK(doc.at("all_pass") == true);
    CHECK(doc.at("transport").at("atoms").empty());
}

TEST_CASE("transport: two diracs cost their distance") {
    const json space = embedded_space({{0, 0}, {3, 4}});
    const std::string plus = put("plus_d.json", json{{"atoms", {{0, 1.0}}}});
    const std::string minus = put("minus_d.json", json{{"atoms", {{1, 1.0}}}});
    const std::string spath = put("space_d.json", space);
    const std::string out = outfile("dirac_out.json");

    const RunResult r = run("transport --plus " + plus + " --minus " + minus + " --space " +
                            spath + " --out " + out);
    CHECK(r.code == 0);
    const json doc = load(out);
    CHECK(doc.at("w1").get<double>() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(doc.at("certificate").at("ok") == true);
    CHECK(doc.at("plan").size() == 1);
    CHECK(doc.at("current").at("edges").size() == 1);
}

TEST_CASE("transport: unit-square corner pairs cost 2") {
    const json space = embedded_space({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const std::string plus = put("plus_sq.json", json{{"atoms", {{0, 1.0}, {2, 1.0}}}});
    const std::string minus = put("minus_sq.json", json{{"atoms", {{1, 1.0}, {3, 1.0}}}});
    const std::string spath = put("space_sq.json", space);
    const std::string out = outfile("square_out.json");

    const RunResult r = run("transport --plus " + plus + " --minus " + minus + " --space " +
                            spath + " --out " + out);
    CHECK(r.code == 0);
    CHECK(load(out).at("w1").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("transport: equal measures cost zero with an empty current") {
    const json space = embedded_space({{0, 0}, {2, 1}});
    const std::string mu = put("mu_eq.json", json{{"atoms", {{0, 1.0}, {1, 0.5}}}});
    const std::string spath = put("space_eq.json", space);
    const std::string out = outfile("equal_out.json");

    const RunResult r =
        run("transport --plus " + mu + " --minus " + mu + " --space " + spath + " --out " + out);
    CHECK(r.code == 0);
    const json doc = load(out);
    CHECK(doc.at("w1") == 0.0);
    CHECK(doc.at("current").at("edges").empty());
}

TEST_CASE("transport: unequal masses fail validation naming both totals") {
    const json space = embedded_space({{0, 0}, {1, 0}});
    const std::string plus = put("plus_u.json", json{{"atoms", {{0, 1.5}}}});
    const std::string minus = put("minus_u.json", json{{"atoms", {{1, 2.0}}}});
    const std::string spath = put("space_u.json", space);
    const std::string out = outfile("unequal_out.json");

    const RunResult r = run("transport --plus " + plus + " --minus " + minus + " --space " +
                            spath + " --out " + out);
    CHECK(r.code == 1);
    CHECK(r.output.find("1.5") != std::string::npos);
    CHECK(r.output.find("2") != std::string::npos);
    CHECK(!fs::exists(out));  // validation failed before any write
}

TEST_CASE("transport: an unmeetable tolerance exits 2, report still written") {
    const json space = embedded_space({{0, 0}, {0.1, 0.7}, {1, 0.3}});
    const std::string plus = put("plus_t0.json", json{{"atoms", {{0, 0.3}, {1, 0.7}}}});
    const std::string minus = put("minus_t0.json", json{{"atoms", {{2, 1.0}}}});
    const std::string spath = put("space_t0.json", space);
    const std::string out = outfile("tol0_out.json");

    const RunResult r = run("transport --plus " + plus + " --minus " + minus + " --space " +
                            spath + " --out " + out + " --tol -1");
    CHECK(r.code == 2);
    CHECK(fs::exists(out));  // the report is still written; only the verdict fails
    CHECK(load(out).at("certificate").at("ok") == false);
}

TEST_CASE("transport: reruns are byte-identical") {
    const json space = embedded_space({{0, 0}, {0.25, 1}, {2, 0.5}, {1, 1}});
    const std::string plus = put("plus_det.json", json{{"atoms", {{0, 0.75}, {1, 0.25}}}});
    const std::string minus = put("minus_det.json", json{{"atoms", {{2, 0.5}, {3, 0.5}}}});
    const std::string spath = put("space_det.json", space);
    const std::string out1 = outfile("det1.json");
    const std::string out2 = outfile("det2.json");

    const RunResult r1 = run("transport --plus " + plus + " --minus " + minus + " --space " +
                             spath + " --out " + out1);
    const RunResult r2 = run("transport --plus " + plus + " --minus " + minus + " --space " +
                             spath + " --out " + out2);
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(r1.output == r2.output);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("flatnorm: dipole at distance 0.5 has flat norm 0.5") {
    const json space = embedded_space({{0, 0}, {0.5, 0}});
    const std::string input = put("dipole.json", json{{"atoms", {{0, 1.0}, {1, -1.0}}}});
    const std::string spath = put("space_fn.json", space);
    const std::string out = outfile("dipole_out.json");

    const RunResult r = run("flatnorm --input " + input + " --space " + spath + " --out " + out);
    CHECK(r.code == 0);
    const json doc = load(out);
    CHECK(doc.at("value").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(doc.at("residue").at("atoms").empty());
    CHECK(doc.at("filling").at("edges").size() == 1);
}

TEST_CASE("spiral: single level reports eta mass 0.25") {
    const std::string out = outfile("spiral_out.csv");
    const RunResult r = run("spiral --levels 4 --out " + out);
    CHECK(r.code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("nu,eta_mass,boundary_tv,max_form_err\n4,0.25,", 0) == 0);
    CHECK(r.output == csv);  // the file is echoed verbatim
}

TEST_CASE("approx: axis demo over three levels") {
    const std::string out = outfile("approx_out.csv");
    const RunResult r = run("approx --demo axis --levels 1..3 --out " + out);
    CHECK(r.code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("nu,mass_err,boundary_flat_gap,correction_mass\n", 0) == 0);
    int lines = 0;
    for (const char c : csv) lines += (c == '\n');
    CHECK(lines == 4);  // header + one row per level
    CHECK(csv.find("\n1,") != std::string::npos);
    CHECK(csv.find("\n2,") != std::string::npos);
    CHECK(csv.find("\n3,") != std::string::npos);
}

TEST_CASE("approx: zero field gives the all-zero table") {
    const json grid{{"rect", {0.0, 0.0, 1.0, 1.0}},
                    {"shape", {2, 2}},
                    {"field", {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
                    {"p", 2}};
    const std::string gpath = put("zero_grid.json", grid);
    const std::string out = outfile("zero_out.csv");
    const RunResult r = run("approx --grid " + gpath + " --levels 1,2 --out " + out);
    CHECK(r.code == 0);
    CHECK(slurp(out) ==
          "nu,mass_err,boundary_flat_gap,correction_mass\n1,0,0,0\n2,0,0,0\n");
}

TEST_CASE("frechet: two-path transport yields a symmetric matrix") {
    const json space = embedded_space({{0, 0}, {1, 0}, {0, 0.25}, {1, 0.25}});
    const std::string spath = put("space_fr.json", space);
    const std::string input = put("paths_fr.json", json{
        {"atoms", {{1.0, {0, 1}}, {1.0, {2, 3}}}}});
    const std::string out = outfile("frechet_out.csv");

    const RunResult r = run("frechet --space " + spath + " --input " + input + " --out " + out);
    CHECK(r.code == 0);
    const std::string csv = slurp(out);
    // two rows: "0,d" and "d,0" with the same d
    const std::size_t nl = csv.find('\n');
    REQUIRE(nl != std::string::npos);
    const std::string row0 = csv.substr(0, nl);
    const std::string row1 = csv.substr(nl + 1, csv.size() - nl - 2);
    CHECK(row0.rfind("0,", 0) == 0);
    CHECK(row1.substr(row1.find(',') + 1) == "0");
    CHECK(row0.substr(2) == row1.substr(0, row1.find(',')));
    const double d = std::stod(row0.substr(2));
    CHECK(d == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("bad invocations exit 1") {
    SUBCASE("missing input file") {
        const RunResult r = run("decompose --input " + outfile("nope.json") + " --out " +
                                outfile("nope_out.json"));
        CHECK(r.code == 1);
        CHECK(r.output.find("nope.json") != std::string::npos);
    }
    SUBCASE("malformed JSON") {
        const fs::path bad = scratch() / "broken.json";
        std::ofstream(bad) << "{oops";
        const RunResult r =
            run("decompose --input " + bad.string() + " --out " + outfile("broken_out.json"));
        CHECK(r.code == 1);
        CHECK(r.output.find("broken.json") != std::string::npos);
    }
    SUBCASE("unknown flag") {
        const RunResult r = run("spiral --levels 4 --out x.csv --frobnicate");
        CHECK(r.code == 1);
    }
    SUBCASE("no subcommand") {
        const RunResult r = run("");
        CHECK(r.code == 1);
    }
    SUBCASE("bad levels token") {
        const RunResult r = run("spiral --levels 4..x --out " + outfile("bad_levels.csv"));
        CHECK(r.code == 1);
    }
    SUBCASE("approx with both --grid and --demo") {
        const RunResult r = run("approx --grid a.json --demo axis --out " + outfile("both.csv"));
        CHECK(r.code == 1);
    }
}

TEST_CASE("help exits 0") {
    const RunResult r = run("--help");
    CHECK(r.code == 0);
    CHECK(r.output.find("decompose") != std::string::npos);
}
