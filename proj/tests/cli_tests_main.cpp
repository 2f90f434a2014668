// End-to-end tests of the commdet binary: file formats, exit codes,
// manifests, and byte-level determinism across runs and thread counts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commdet/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(COMMDET_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "commdet_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) { return commdet::read_file(p.string()); }

void spit(const fs::path& p, const std::string& text) {
    commdet::write_file(p.string(), text);
}

}  // namespace

TEST_CASE("generate: edge-list format and determinism") {
    auto dir = temp_dir();
    auto empty = (dir / "empty.txt").string();
    auto full = (dir / "full.txt").string();

    auto r1 = run_cli("generate --N 5 --p0 0 --seed 1 --out " + empty);
    CHECK(r1.exit_code == 0);
    std::istringstream is(slurp(empty));
    std::string header;
    std::getline(is, header);
    CHECK(header == "5 0");

    auto r2 = run_cli("generate --N 5 --p0 1 --seed 1 --out " + full);
    CHECK(r2.exit_code == 0);
    {
        std::istringstream fs2(slurp(full));
        std::string line;
        int lines = 0;
        while (std::getline(fs2, line))
            if (!line.empty()) ++lines;
        CHECK(lines == 11);  // header + 10 edges
    }

    SUBCASE("same seed gives identical bytes, manifest digest matches") {
        auto a = (dir / "a.txt").string();
        auto b = (dir / "b.txt").string();
        run_cli("generate --N 80 --p0 0.05 --seed 42 --out " + a);
        run_cli("generate --N 80 --p0 0.05 --seed 42 --out " + b);
        CHECK(slurp(a) == slurp(b));
        std::string manifest = slurp(a + ".manifest.json");
        CHECK(manifest.find(commdet::hex64(commdet::fnv1a64_file(a))) != std::string::npos);
    }
    SUBCASE("planted generation records the community") {
        auto p = (dir / "planted.txt").string();
        auto r = run_cli("generate --N 40 --p0 0.02 --n 8 --p1 0.9 --seed 9 --out " + p);
        CHECK(r.exit_code == 0);
        CHECK(slurp(p + ".manifest.json").find("community") != std::string::npos);
    }
    SUBCASE("bad parameters exit 2") {
        CHECK(run_cli("generate --N 5 --p0 2.0 --seed 1 --out " + (dir / "x.txt").string())
                  .exit_code == 2);
        CHECK(run_cli("generate --N 5 --p0 0.5 --n 3 --seed 1 --out " +
                      (dir / "x.txt").string())
                  .exit_code == 2);
    }
}

TEST_CASE("stat: values, records, and error exit codes") {
    auto dir = temp_dir();
    auto k4 = dir / "k4.txt";
    spit(k4, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    auto path6 = dir / "path6.txt";
    spit(path6, "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");

    CHECK(run_cli("stat --in " + k4.string() + " --stat triangles").out == "4\n");
    CHECK(run_cli("stat --in " + path6.string() + " --stat largest_cc").out == "6\n");
    CHECK(run_cli("stat --in " + k4.string() + " --stat \"scan k=3 mode=exact\"").out == "3\n");

    SUBCASE("json record") {
        auto rec = (dir / "rec.json").string();
        auto r = run_cli("stat --in " + k4.string() + " --stat total_degree --json " + rec);
        CHECK(r.exit_code == 0);
        CHECK(slurp(rec).find("\"value\": 6") != std::string::npos);
    }
    SUBCASE("parse errors exit 2, missing file exits 3, infeasible exits 4") {
        auto bad = dir / "bad.txt";
        spit(bad, "3 1\n0 9\n");
        CHECK(run_cli("stat --in " + bad.string() + " --stat triangles").exit_code == 2);
        CHECK(run_cli("stat --in " + dir.string() + "/nope.txt --stat triangles").exit_code ==
              3);
        CHECK(run_cli("stat --in " + k4.string() + " --stat \"scan k=3 mode=hyper\"").exit_code ==
              2);
        auto big = (dir / "big.txt").string();
        run_cli("generate --N 100 --p0 0.05 --seed 3 --out " + big);
        CHECK(run_cli("stat --in " + big + " --stat \"scan k=8 mode=exact\"").exit_code == 4);
    }
}

TEST_CASE("calibrate: config-driven run") {
    auto dir = temp_dir();
    auto cfg = dir / "cal.cfg";
    auto out = (dir / "cal.json").string();
    spit(cfg, "statistic=triangles\nN=300\nlambda0=1.0\nlevel=0.05\nR=400\nseed=5\nout=" + out +
                  "\n");
    auto r = run_cli("calibrate --config " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out).find("\"t\"") != std::string::npos);
    SUBCASE("missing required key exits 2") {
        auto broken = dir / "broken.cfg";
        spit(broken, "statistic=triangles\nN=300\nlevel=0.05\nR=400\nseed=5\n");
        CHECK(run_cli("calibrate --config " + broken.string()).exit_code == 2);
    }
    SUBCASE("missing config file exits 3") {
        CHECK(run_cli("calibrate --config " + (dir / "nope.cfg").string()).exit_code == 3);
    }
}

TEST_CASE("diagram: CSV schema, curves, thread-count determinism") {
    auto dir = temp_dir();
    auto cfg = dir / "diag.cfg";
    auto out = (dir / "diag.csv").string();
    auto curves = (dir / "curves.csv").string();
    spit(cfg, "N=200\nn=12\nlambda0=0.8,5.0\nlambda1=0.2,1.5\n"
              "tests=total_degree;triangles\nlevel=0.05\nR=150\nseed=31\nout=" +
                  out + "\ncurves_out=" + curves + "\n");
    auto r = run_cli("diagram --config " + cfg.string() + " --threads 1");
    CHECK(r.exit_code == 0);
    std::string csv1 = slurp(out);
    CHECK(csv1.rfind("lambda0,lambda1,test,t,type1,type2,risk,R,seed\n", 0) == 0);
    // lambda0=5 (p0=0.025), lambda1=0.2 (p1=0.0167 < p0) must be marked invalid
    CHECK(csv1.find("5,0.2,invalid,nan,nan,nan,nan") != std::string::npos);
    std::string curves1 = slurp(curves);
    CHECK(curves1.rfind("curve_name,lambda0,lambda1\n", 0) == 0);
    CHECK(curves1.find("total_degree_zeta1") != std::string::npos);

    auto r2 = run_cli("diagram --config " + cfg.string() + " --threads 3");
    CHECK(r2.exit_code == 0);
    CHECK(slurp(out) == csv1);
}

TEST_CASE("lrlab: exhaustive JSON output") {
    auto dir = temp_dir();
    auto cfg = dir / "lr.cfg";
    spit(cfg, "N=4\nn=2\nmode=rational\np0=1/4\np1=1/2\ntrunc=none\n");
    auto r = run_cli("lrlab --config " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"E0_L\": 1.0") != std::string::npos);
    CHECK(r.out.find("\"E0_Lt_exact\": \"1/1\"") != std::string::npos);
}

TEST_CASE("verify: single fast criterion passes end to end") {
    auto r = run_cli("verify --only 1 --seed 20250808");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("1/1 checks passed") != std::string::npos);
}
