#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// Runs the driver named by QV_CLI (set by the test harness) and captures
// stdout; stderr is dropped so diagnostics do not pollute assertions.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("QV_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "QV_CLI must point at the driver binary");
    const std::string cmd = '"' + std::string(bin) + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
        res.out.append(buf, got);
    const int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_CASE("eval prints canonical JSON terms in quarter units") {
    const auto tri = run_cli("eval trinom --L 2 --A 0 --n 0 --format json");
    CHECK(tri.status == 0);
    CHECK(tri.out ==
          "[{\"exp_quarters\":0,\"coeff\":\"1\"},{\"exp_quarters\":4,\"coeff\":\"1\"},"
          "{\"exp_quarters\":8,\"coeff\":\"1\"}]\n");

    const auto fer = run_cli("eval fermi --p 4 --a 1 --b 1 --i 0 --L 0 --format json");
    CHECK(fer.status == 0);
    CHECK(fer.out == "[{\"exp_quarters\":0,\"coeff\":\"1\"}]\n");

    const auto chi = run_cli("eval chi --p 4 --r 1 --s 1 --cutoff 10 --format json");
    CHECK(chi.status == 0);
    CHECK(starts_with(chi.out,
                      "{\"cutoff_quarters\":40,\"terms\":[{\"exp_quarters\":0,"
                      "\"coeff\":\"1\"}"));
}

TEST_CASE("eval text format prints readable polynomials") {
    const auto res = run_cli("eval binom --n 2 --m 2");
    CHECK(res.status == 0);
    CHECK(res.out == "1 + q + 2*q^2 + q^3 + q^4\n");
    const auto mod = run_cli("eval binom --n -3 --m 2 --variant modified");
    CHECK(mod.status == 0);
    CHECK(mod.out == "q^-3\n");
}

TEST_CASE("usage problems exit with status 2") {
    CHECK(run_cli("eval trinom --A 0").status == 2);
    CHECK(run_cli("eval nosuch --L 1 --A 0").status == 2);
    CHECK(run_cli("eval fermi --p 3 --a 1 --b 1 --L 0").status == 2);
    CHECK(run_cli("verify --suite nosuch").status == 2);
    CHECK(run_cli("verify --suite all --p 6..4").status == 2);
    CHECK(run_cli("nosuch-command").status == 2);
}

TEST_CASE("verify emits one JSON report per suite and exits 0 on success") {
    const auto res =
        run_cli("verify --suite even-identities --p 4 --l-max 3 --format json");
    CHECK(res.status == 0);
    CHECK(starts_with(res.out, "{\"suite\":\"even-identities\""));
    CHECK(res.out.find("\"failures\":0") != std::string::npos);
    CHECK(res.out.find('\n') == res.out.size() - 1);

    const auto text = run_cli("verify --suite even-identities --p 4 --l-max 3");
    CHECK(text.status == 0);
    CHECK(starts_with(text.out, "suite even-identities:"));
}

TEST_CASE("reports are byte-identical for any parallelism degree") {
    const std::string args =
        "verify --suite bosonic-relations --p 4..5 --l-max 4 --format json";
    const auto serial = run_cli(args + " --jobs 1");
    const auto parallel = run_cli(args + " --jobs 4");
    CHECK(serial.status == 0);
    CHECK(parallel.status == 0);
    CHECK(serial.out == parallel.out);
}
