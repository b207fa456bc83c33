#include <catch2/catch_amalgamated.hpp>

#include <qsym/specfile.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#ifndef QSYM_CLI_BINARY
#error "QSYM_CLI_BINARY must point at the qsym executable"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
};

fs::path scratch_dir() {
    fs::path p = fs::temp_directory_path() / "qsym_cli_tests";
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = scratch_dir() / ("out" + std::to_string(counter++) + ".txt");
    std::string cmd = std::string(QSYM_CLI_BINARY) + " " + args + " >" + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

nlohmann::ordered_json analysis_of(const std::string& json_text) {
    auto j = nlohmann::ordered_json::parse(json_text);
    return j["analysis"];
}

} // namespace

TEST_CASE("cli: dims on the cpn family") {
    RunResult r = run_cli("dims --family cpn --param n=3 --max-degree 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("nichols dims: 1 3 3 1 0") != std::string::npos);
}

TEST_CASE("cli: check passes on an emitted flip spec and round trips") {
    fs::path spec = scratch_dir() / "flip2.json";
    RunResult emit = run_cli("family --family flip --param d=2 --emit " + spec.string());
    REQUIRE(emit.code == 0);

    RunResult check = run_cli("check --input " + spec.string());
    CHECK(check.code == 0);
    CHECK(check.out.find("braid equation: holds") != std::string::npos);

    // an emitted family re-analyzed from the file gives the identical
    // mathematical report
    RunResult a = run_cli("dims --family flip --param d=2 --max-degree 3 --format json");
    RunResult b = run_cli("dims --input " + spec.string() + " --max-degree 3 --format json");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(analysis_of(a.out) == analysis_of(b.out));
}

TEST_CASE("cli: reports are deterministic modulo timings") {
    RunResult a = run_cli("dims --family cpn --param n=2 --format json");
    RunResult b = run_cli("dims --family cpn --param n=2 --format json");
    REQUIRE(a.code == 0);
    auto ja = nlohmann::ordered_json::parse(a.out);
    auto jb = nlohmann::ordered_json::parse(b.out);
    ja.erase("timings");
    jb.erase("timings");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("cli: check fails with exit 1 on a non-braiding") {
    // identity with one extra off-diagonal entry: invertible but not a braiding
    fs::path spec = scratch_dir() / "bad_braiding.json";
    std::ofstream out(spec);
    out << R"({"dim": 2, "entries": [
        {"out": [1,1], "in": [1,1], "coeff": "1"},
        {"out": [1,2], "in": [1,2], "coeff": "1"},
        {"out": [2,1], "in": [2,1], "coeff": "1"},
        {"out": [2,2], "in": [2,2], "coeff": "1"},
        {"out": [2,2], "in": [1,1], "coeff": "1"}]})";
    out.close();
    RunResult r = run_cli("check --input " + spec.string());
    CHECK(r.code == 1);
    CHECK(r.out.find("FAILS") != std::string::npos);
}

TEST_CASE("cli: malformed inputs exit 2") {
    fs::path bad = scratch_dir() / "broken.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run_cli("check --input " + bad.string()).code == 2);

    fs::path dup = scratch_dir() / "dup.json";
    std::ofstream(dup) << R"({"dim": 1, "entries": [
        {"out": [1,1], "in": [1,1], "coeff": "q"},
        {"out": [1,1], "in": [1,1], "coeff": "q"}]})";
    RunResult r = run_cli("check --input " + dup.string());
    CHECK(r.code == 2);
    CHECK(r.out.find("entry 2") != std::string::npos);

    fs::path badcoeff = scratch_dir() / "badcoeff.json";
    std::ofstream(badcoeff) << R"({"dim": 1, "entries": [
        {"out": [1,1], "in": [1,1], "coeff": "q +"}]})";
    RunResult rc = run_cli("check --input " + badcoeff.string());
    CHECK(rc.code == 2);
    CHECK(rc.out.find("position") != std::string::npos);

    CHECK(run_cli("dims --family no-such-family --param n=2").code == 2);
    CHECK(run_cli("dims --family cpn --param n=oops").code == 2);
    CHECK(run_cli("dims --family cpn").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("dims --family cpn --param n=2 --input x.json").code == 2);
}

TEST_CASE("cli: specialized mode screens ranks and records the backend") {
    RunResult exact = run_cli("dims --family cpn --param n=3 --max-degree 4 --format json");
    RunResult spec = run_cli(
        "dims --family cpn --param n=3 --max-degree 4 --mode specialized --seed 7 --format json");
    REQUIRE(exact.code == 0);
    REQUIRE(spec.code == 0);
    auto je = nlohmann::ordered_json::parse(exact.out);
    auto js = nlohmann::ordered_json::parse(spec.out);
    CHECK(je["analysis"]["nichols_dims"] == js["analysis"]["nichols_dims"]);
    CHECK(js["backend"]["mode"] == "specialized");
    CHECK(js["backend"]["screening"] == true);
    CHECK(js["backend"]["points"].size() == 1);
}

TEST_CASE("cli: koszul asserts per degree") {
    RunResult r = run_cli("koszul --family cpn --param n=2 --max-degree 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli: kernel lists the A_2 kernel basis") {
    RunResult r = run_cli("kernel --family cpn --param n=2 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["analysis"]["kernel_A2"]["dimension"] == 3);
}

TEST_CASE("cli: tableaux and det subcommands") {
    RunResult t = run_cli("tableaux --param shape=2 --param n=3");
    CHECK(t.code == 0);
    CHECK(t.out.find(": 6") != std::string::npos);

    RunResult tl = run_cli("tableaux --param shape=1,1,1 --param n=3 --list --format json");
    REQUIRE(tl.code == 0);
    auto j = nlohmann::ordered_json::parse(tl.out);
    CHECK(j["count"] == 1);
    CHECK(j["tableaux"].size() == 1);

    RunResult d = run_cli("det --param N=2 --format json");
    REQUIRE(d.code == 0);
    auto jd = nlohmann::ordered_json::parse(d.out);
    REQUIRE(jd["terms"].size() == 2);
    CHECK(jd["terms"][0]["coeff"] == "1");
    CHECK(jd["terms"][1]["coeff"] == "-q");
    CHECK(run_cli("det --param N=0").code == 2);
}

TEST_CASE("spec files: random matrices round trip through the format") {
    std::mt19937 rng(321);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> expo(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        int d = 1 + static_cast<int>(rng() % 3);
        qsym::FieldMatrix m(d * d, d * d);
        for (int r = 0; r < d * d; ++r)
            for (int c = 0; c < d * d; ++c)
                if (rng() % 3 == 0) {
                    int a = coeff(rng);
                    if (a != 0) m.set(r, c, qsym::QRational(a) * qsym::QRational::q_power(expo(rng)));
                }
        qsym::Braiding b(d, m);
        auto f = qsym::BraidingSpecFile::from_braiding(b, "random");
        auto parsed = qsym::BraidingSpecFile::parse(f.dump());
        CHECK(parsed.to_braiding().matrix == m);
        CHECK(qsym::braiding_hash(parsed.to_braiding()) == qsym::braiding_hash(b));
    }
}

TEST_CASE("cli: every built-in family is addressable") {
    for (const char* args :
         {"check --family flip --param d=3", "check --family antiflip --param d=2",
          "check --family diagonal --param d=2 --seed 5", "check --family frt --param n=2",
          "check --family frt --param n=2 --param convention=R-bar --param scale=-q^-1",
          "check --family cpn --param n=2 --param normalization=q",
          "check --family bundle --param n=2", "check --family cpn-yd --param n=3",
          "check --family cpn-yd-scaled --param n=2", "check --family yd-sign",
          "check --family yd-trivial --param d=2", "check --family yd-s3rack"}) {
        RunResult r = run_cli(args);
        INFO(args << "\n" << r.out);
        CHECK(r.code == 0);
    }
}
