#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(BATCHPS_EXE) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::filesystem::path scratch() {
    auto d = std::filesystem::temp_directory_path() / ("batchps_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("tail --rho 0.2").code == 2);
    CHECK(run("tail --rho 0.2 --q 0.3 --format xml").code == 2);
    CHECK(run("tail --rho 0.2 --q 0.3 --x 5,2").code == 2);
    CHECK(run("tail --rho 0.2 --q 0.3 --x 1 --x-count 3").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("sim --rho 0.7 --q 0.4").code == 3);
    CHECK(run("tail --rho 0.2 --q 1.5").code == 3);
    CHECK(run("invert --rho 0.2 --q 0.3 --x 0").code == 2);
    CHECK(run("tail --rho 0.2 --q 0.3").code == 0);
}

TEST_CASE("tail output matches the golden file") {
    auto r = run("tail --rho 0.2 --q 0.3 --x 50,100,150");
    REQUIRE(r.code == 0);
    CHECK(r.out == slurp(std::filesystem::path(GOLDEN_DIR) / "tail.csv"));
}

TEST_CASE("CSV header and log-spaced grid") {
    auto r = run("tail --rho 0.2 --q 0.3 --x-min 10 --x-max 1000 --x-count 3");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# batchps=0.1.0\n# command=tail\n# rho=0.2\n# q=0.3\n", 0) == 0);
    CHECK(r.out.find("\nx,tail_Omega,tail_omega,dq_envelope\n") != std::string::npos);
    CHECK(r.out.find("\n10,") != std::string::npos);
    CHECK(r.out.find("\n100,") != std::string::npos);
    CHECK(r.out.find("\n1000,") != std::string::npos);
}

TEST_CASE("JSON output parses") {
    auto r = run("tail --rho 0.2 --q 0.3 --x 50 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["header"]["command"] == "tail");
    CHECK(j["columns"].size() == 4);
    CHECK(j["rows"][0][0] == 50.0);
}

TEST_CASE("sim writes its tables and is deterministic") {
    auto d = scratch();
    std::string a = (d / "a").string(), b = (d / "b").string();
    std::string common = "sim --rho 0.2 --q 0.3 --seed 9 --batches 20000 --dump-samples --x 1,5,10 --out ";
    REQUIRE(run(common + a).code == 0);
    REQUIRE(run(common + b).code == 0);
    for (const char* t : {"_batch_ccdf.csv", "_job_ccdf.csv", "_occupancy.csv", "_samples.csv"}) {
        auto fa = slurp(a + t), fb = slurp(b + t);
        CHECK(!fa.empty());
        CHECK(fa == fb);
    }
    CHECK(slurp(a + "_samples.csv").rfind("batch_id,arrival_time,size,job,omega,Omega\n", 0) == 0);
    auto bc = slurp(a + "_batch_ccdf.csv");
    CHECK(bc.find("# seed=9\n") != std::string::npos);
    CHECK(bc.find("\nx,ccdf,half_width\n") != std::string::npos);
    std::filesystem::remove_all(d);
}

TEST_CASE("thread cap does not change results") {
    std::string args = "sim --rho 0.2 --q 0.3 --seed 4 --batches 5000 --x 2";
    auto a = run(args);
    std::string cmd = "BATCHPS_THREADS=1 " + std::string(BATCHPS_EXE) + " " + args;
    FILE* f = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    pclose(f);
    CHECK(a.out == out);
}

TEST_CASE("validate passes and tightening fails it") {
    auto ok = run("validate --rho 0.2 --q 0.3");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    auto bad = run("validate --rho 0.2 --q 0.3 --tighten spectral.vieta");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("spectral.vieta,FAIL") != std::string::npos);
}
