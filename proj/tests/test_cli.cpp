#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shs/cli.hpp"
#include "shs/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

std::string fixture(const std::string& name) {
    return std::string(SHS_FIXTURE_DIR) + "/" + name;
}

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = shs::cli::execute(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path(std::string("/tmp/shs_test_") + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("membership fixture prints the certificate and exits cleanly") {
    const CliRun r = run({"compute", "--A", fixture("fix_a10.json"), "--T",
                          fixture("swap.json"), "--quantity", "membership"});
    CHECK(r.code == 0);
    CHECK(r.out.find("half_bounded: false") != std::string::npos);
}

TEST_CASE("anorm fixture prints twelve significant digits") {
    const CliRun r = run({"compute", "--A", fixture("diag12.json"), "--T",
                          fixture("nil.json"), "--quantity", "anorm"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.707106781187") != std::string::npos);
}

TEST_CASE("omega and r quantities run on the fixtures") {
    const CliRun om = run({"compute", "--A", fixture("diag12.json"), "--T",
                           fixture("swap.json"), "--quantity", "omega"});
    CHECK(om.code == 0);
    CHECK(om.out.find("1.06066017178") != std::string::npos);
    const CliRun r = run({"compute", "--A", fixture("diag12.json"), "--T",
                          fixture("swap.json"), "--quantity", "r"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 2) == "1\n");
}

TEST_CASE("json output round-trips through the schema parser") {
    const CliRun r = run({"compute", "--A", fixture("diag12.json"), "--T",
                          fixture("nil.json"), "--quantity", "sharp",
                          "--format", "json"});
    CHECK(r.code == 0);
    const shs::json j = shs::parse_json_text(r.out);
    const shs::CMat m = shs::matrix_from_json(j["matrix"]);
    CHECK(std::abs(m(1, 0) - shs::cplx(0.5)) < 1e-12);
    CHECK(std::abs(m(0, 1)) < 1e-12);
}

TEST_CASE("anorm of a non-A-bounded operator is an input error") {
    const CliRun r = run({"compute", "--A", fixture("fix_a10.json"), "--T",
                          fixture("swap.json"), "--quantity", "anorm"});
    CHECK(r.code == 2);
    CHECK(r.err.find("not A-bounded") != std::string::npos);
}

TEST_CASE("malformed JSON exits 2 and reports the byte position") {
    const CliRun r = run({"compute", "--A", fixture("broken.json"), "--T",
                          fixture("nil.json"), "--quantity", "anorm"});
    CHECK(r.code == 2);
    CHECK(r.err.find("byte") != std::string::npos);
}

TEST_CASE("non-PSD weights exit 2 naming the offending eigenvalue") {
    const CliRun r = run({"compute", "--A", fixture("notpsd.json"), "--T",
                          fixture("nil.json"), "--quantity", "anorm"});
    CHECK(r.code == 2);
    CHECK(r.err.find("-3") != std::string::npos);
}

TEST_CASE("unknown flags are rejected") {
    const CliRun r = run({"compute", "--A", fixture("diag12.json"), "--T",
                          fixture("nil.json"), "--quantity", "anorm",
                          "--no-such-flag"});
    CHECK(r.code == 2);
}

TEST_CASE("missing subcommand is an input error") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("verify runs twice to byte-identical reports") {
    TempFile a("report_a.json"), b("report_b.json");
    const std::vector<std::string> base = {
        "verify", "--checks", "C04,C05,AMGM", "--trials", "10",
        "--seed", "42", "--dims", "2,3"};
    auto with_out = [&](const std::string& path) {
        std::vector<std::string> args = base;
        args.push_back("--out");
        args.push_back(path);
        return args;
    };
    const CliRun r1 = run(with_out(a.path));
    const CliRun r2 = run(with_out(b.path));
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(r1.out.find("seed: 42") != std::string::npos);
    const std::string bytes = slurp(a.path);
    CHECK(!bytes.empty());
    CHECK(bytes == slurp(b.path));
    CHECK(bytes.find("\"seed\": \"42\"") != std::string::npos);
}

TEST_CASE("verify emits CSV when asked") {
    const CliRun r = run({"verify", "--checks", "C04", "--trials", "5",
                          "--seed", "7", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("check_id,trials,violations") != std::string::npos);
    CHECK(r.out.find("C04,5,0,") != std::string::npos);
}

TEST_CASE("search reports a ratio and echoes the seed") {
    const CliRun r = run({"search", "--check", "C05", "--budget", "60",
                          "--seed", "3"});
    CHECK(r.code == 0);
    const shs::json j = shs::parse_json_text(r.out);
    CHECK(j["seed"] == "3");
    CHECK(j["best_ratio"].get<double>() > 0.4);
    CHECK(j["best_ratio"].get<double>() <= 1.0 + 1e-7);
}

TEST_CASE("selftest passes") {
    const CliRun r = run({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.out.find("selftest passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
