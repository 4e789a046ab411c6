#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghlab/cli.hpp"

using json = nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(GHLAB_FIXTURE_DIR) + "/" + name; }

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = ghlab::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("validate: accepted config exits 0 with reason ok") {
    const CliResult r = run({"validate", "--config", fixture("geometric20.json")});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["accepted"] == true);
    CHECK(j["reason"] == "ok");
    CHECK(j.contains("manifest"));
}

TEST_CASE("validate: positive weight exits 1 with the offending index") {
    const CliResult r = run({"validate", "--config", fixture("positive_weight.json")});
    CHECK(r.code == 1);
    const json j = json::parse(r.out);
    CHECK(j["reason"] == "positive_weight");
    CHECK(j["offending_index"] == 0);
}

TEST_CASE("validate: missing file exits 2") {
    CHECK(run({"validate", "--config", "/nonexistent/nope.json"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"validate"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"generate", "--kind", "star", "--count", "3"}).code == 2);
}

TEST_CASE("generate emits a loadable config") {
    const CliResult r = run({"generate", "--kind", "geometric_z", "--ratio", "2", "--count", "4"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["punctures"].size() == 4);
    CHECK(j["tail"]["kind"] == "geometric");
}

TEST_CASE("direction: two-center report along x and z") {
    const CliResult rx = run({"direction", "--config", fixture("chen_chen.json"), "--v", "1,0,0"});
    CHECK(rx.code == 0);
    const json jx = json::parse(rx.out);
    CHECK(jx["m0"] == 2);
    CHECK(jx["generic"] == false);

    const CliResult rz = run({"direction", "--config", fixture("chen_chen.json"), "--v", "0,0,1"});
    const json jz = json::parse(rz.out);
    CHECK(jz["generic"] == true);
}

TEST_CASE("direction: survey mode aggregates and repeats per seed") {
    const std::vector<std::string> args{"direction", "--config", fixture("geometric20.json"),
                                        "--survey", "200", "--seed", "3"};
    const CliResult a = run(args);
    const CliResult b = run(args);
    CHECK(a.code == 0);
    const json ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja["survey"]["fraction_generic"] == jb["survey"]["fraction_generic"]);
    CHECK(ja["survey"]["fraction_generic"] == 1.0);
}

TEST_CASE("verify-geometry passes at fine steps and fails at coarse ones") {
    const CliResult ok = run({"verify-geometry", "--config", fixture("chen_chen.json"), "--points",
                              "40", "--seed", "1", "--h", "1e-3"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("lap_residual") != std::string::npos);

    const CliResult coarse = run({"verify-geometry", "--config", fixture("chen_chen.json"),
                                  "--points", "40", "--seed", "1", "--h", "0.5"});
    CHECK(coarse.code == 1);
}

TEST_CASE("surface: two-center pipeline emits product, singularity and audits") {
    const CliResult r = run({"surface", "--config", fixture("chen_chen.json"), "--v", "1,0,0",
                             "--mode", "paper_index"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["product"]["delta"] == 2);
    CHECK(j["singularity"]["singular"][0]["type"] == "A1");
    CHECK(j["singularity"]["atlas"]["charts"].size() == 3);
    CHECK(j["singularity"]["atlas"]["index_table"]["plus"][0] == 2);
    CHECK(j["audits"]["passed"] == true);
}

TEST_CASE("direction: cap estimate through the CLI") {
    const CliResult r = run({"direction", "--config", fixture("geometric20.json"), "--v", "0,1,0",
                             "--cap-n", "1", "--samples", "20000", "--seed", "42"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.contains("cap"));
    CHECK(j["cap"]["n"] == 1);
    CHECK(j["cap"]["seed"] == 42);
    CHECK(j["cap"]["mc"].get<double>() <= j["cap"]["bound"].get<double>() +
                                              3.0 * j["cap"]["sigma"].get<double>());
}

TEST_CASE("surface: geometric configuration gives a smooth generic model") {
    const CliResult r = run({"surface", "--config", fixture("geometric20.json"), "--v", "1,0,0",
                             "--mode", "minimal_genus", "--radius", "4", "--grid", "4", "--grid-out",
                             "/tmp/ghlab_grid_test.csv"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["singularity"]["singular"].empty());
    CHECK(j["audits"]["passed"] == true);
    std::ifstream grid("/tmp/ghlab_grid_test.csv");
    std::string header;
    std::getline(grid, header);
    CHECK(header.find("residual") != std::string::npos);
}

TEST_CASE("surface: paper_index mode on spread zeros skips infeasible pole contours") {
    const CliResult r = run({"surface", "--config", fixture("geometric20.json"), "--v", "1,0,0",
                             "--mode", "paper_index"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["audits"]["passed"] == true);
    CHECK(j["audits"]["pole_checks"].get<int>() > 0);
    CHECK(j["audits"]["pole_checks_skipped"].get<int>() > 0);
}

TEST_CASE("surface: accumulating projections are refused with exit 1") {
    const CliResult r = run({"surface", "--config", fixture("accumulating.json"), "--v", "1,0,0",
                             "--mode", "minimal_genus", "--radius", "2"});
    CHECK(r.code == 1);
}

TEST_CASE("malformed direction vectors are usage errors") {
    CHECK(run({"direction", "--config", fixture("chen_chen.json"), "--v", "bogus"}).code == 2);
    CHECK(run({"surface", "--config", fixture("chen_chen.json"), "--v", "1;0;0"}).code == 2);
}

TEST_CASE("verify-geometry writes the CSV report to --out") {
    const std::string path = "/tmp/ghlab_verify_rows.csv";
    const CliResult r = run({"verify-geometry", "--config", fixture("chen_chen.json"), "--points",
                             "10", "--seed", "2", "--h", "1e-3", "--out", path});
    CHECK(r.code == 0);
    std::ifstream f(path);
    std::string stamp, header;
    std::getline(f, stamp);
    std::getline(f, header);
    CHECK(stamp.find("config_hash") != std::string::npos);
    CHECK(header ==
          "x,y,z,V,grad_norm,lap_residual,curl_residual,quat_residual,compat_residual,h");
    int rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    CHECK(rows == 10);
}

TEST_CASE("serial flag reproduces the parallel CSV byte for byte") {
    const std::vector<std::string> base{"verify-geometry", "--config", fixture("geometric20.json"),
                                        "--points", "20", "--seed", "6", "--h", "1e-3"};
    std::vector<std::string> serial = base;
    serial.push_back("--serial");
    CHECK(run(base).out == run(serial).out);
}

TEST_CASE("surface reports are byte-identical up to the timestamp") {
    const std::vector<std::string> args{"surface",      "--config", fixture("chen_chen.json"),
                                        "--v",          "1,0,0",    "--mode",
                                        "paper_index",  "--seed",   "4"};
    json a = json::parse(run(args).out);
    json b = json::parse(run(args).out);
    a["manifest"].erase("timestamp");
    b["manifest"].erase("timestamp");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("reports are byte-identical up to the timestamp") {
    const std::vector<std::string> args{"direction", "--config", fixture("chen_chen.json"), "--v",
                                        "1,0,0", "--seed", "5"};
    json a = json::parse(run(args).out);
    json b = json::parse(run(args).out);
    a["manifest"].erase("timestamp");
    b["manifest"].erase("timestamp");
    CHECK(a.dump() == b.dump());
}
