#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string cli_bin() {
    const char* p = std::getenv("CVINT_BIN");
    REQUIRE_MESSAGE(p != nullptr, "CVINT_BIN must point at the cvint executable");
    return p;
}

int run(const std::string& args) {
    std::string cmd = cli_bin() + " " + args + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WEXITSTATUS(st);
}

std::filesystem::path fresh_dir(const char* tag) {
    auto d = std::filesystem::temp_directory_path() / (std::string("cvint_cli_") + tag);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> parse_csv(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line); // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("threshold table rows match the published values at displayed precision") {
    auto dir = fresh_dir("table1");
    REQUIRE(run("table1 --out " + dir.string()) == 0);
    auto rows = parse_csv(dir / "table1.csv");
    REQUIRE(rows.size() == 6);
    const double mags[] = {-5, -2.5, 0, 2.5, 5, 7.5};
    const long dbs[] = {7, 17, 27, 37, 47, 57};
    const double reffs[] = {0.80, 1.96, 3.11, 4.26, 5.41, 6.56};
    for (int i = 0; i < 6; ++i) {
        CHECK(rows[i][0] == mags[i]);
        CHECK(std::lround(rows[i][2]) == dbs[i]);
        CHECK(std::round(rows[i][3] * 100) / 100 == doctest::Approx(reffs[i]).epsilon(1e-12));
    }
}

TEST_CASE("repeated runs produce byte-identical artifacts") {
    auto dir = fresh_dir("determinism");
    REQUIRE(run("fig2 --out " + dir.string() + " --set points=40") == 0);
    std::string first_csv = slurp(dir / "fig2.csv");
    std::string first_meta = slurp(dir / "fig2.csv.meta.json");
    REQUIRE(run("fig2 --out " + dir.string() + " --set points=40") == 0);
    CHECK(slurp(dir / "fig2.csv") == first_csv);
    CHECK(slurp(dir / "fig2.csv.meta.json") == first_meta);
}

TEST_CASE("metadata sidecar echoes the resolved configuration") {
    auto dir = fresh_dir("meta");
    REQUIRE(run("fig2 --out " + dir.string() + " --seed 99 --set g=0.5") == 0);
    std::string meta = slurp(dir / "fig2.csv.meta.json");
    CHECK(meta.find("\"seed\": 99") != std::string::npos);
    CHECK(meta.find("\"g\": 0.5") != std::string::npos);
    CHECK(meta.find("\"eps\": 1e-05") != std::string::npos); // untouched default, resolved
    CHECK(meta.find("\"command\": \"fig2\"") != std::string::npos);
}

TEST_CASE("overrides change the output accordingly") {
    auto dir = fresh_dir("override");
    REQUIRE(run("fig2 --out " + dir.string() + " --set points=5 --set y_min=0.5 --set y_max=0.5") == 0);
    auto rows = parse_csv(dir / "fig2.csv");
    REQUIRE(rows.size() == 5);
    for (auto& r : rows) CHECK(r[0] == 0.5);
}

TEST_CASE("usage errors exit with 2") {
    auto dir = fresh_dir("usage");
    CHECK(run("fig2 --out " + dir.string() + " --set nosuchkey=1") == 2);
    CHECK(run("fig2 --out " + dir.string() + " --set g") == 2);
    CHECK(run("table1 --out " + dir.string() + " --set eps=0.1") == 2);
    CHECK(run("not_a_command") == 2);
    CHECK(run("") == 2);
}

TEST_CASE("runtime failures exit with 1") {
    CHECK(run("fig2 --out /nonexistent_path_for_cli_test") == 1);
    auto dir = fresh_dir("badvalue");
    CHECK(run("fig2 --out " + dir.string() + " --set eps=-1") == 1);
}

TEST_CASE("validation commands report success on the healthy build") {
    auto dir = fresh_dir("validate");
    CHECK(run("validate-sld --out " + dir.string()) == 0);
    CHECK(run("validate-fock --out " + dir.string()) == 0);
    CHECK(run("validate-teleport --out " + dir.string() + " --set n_samples=40000") == 0);
    std::istringstream report(slurp(dir / "validate_sld.csv"));
    std::string line;
    std::getline(report, line); // header
    int n_rows = 0;
    while (std::getline(report, line)) {
        ++n_rows;
        CHECK(line.substr(line.rfind(',')) == ",1"); // pass column
    }
    CHECK(n_rows == 6);
}

TEST_CASE("scheme comparison output orders the detection strategies") {
    auto dir = fresh_dir("fig3");
    REQUIRE(run("fig3 --out " + dir.string() + " --set points=25 --set eps_max=1e-3") == 0);
    auto rows = parse_csv(dir / "fig3.csv");
    REQUIRE(rows.size() == 25);
    for (auto& r : rows) {
        CHECK(r[1] > 0);         // noiseless bound
        CHECK(r[2] <= r[1]);     // photon comparison never beats it
        CHECK(r[3] <= r[1]);     // dual quadrature never beats it
        CHECK(r[2] == doctest::Approx(r[1] / 2).epsilon(0.02)); // weak-source halving
    }
}
