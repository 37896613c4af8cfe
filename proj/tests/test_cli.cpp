// End-to-end checks against the built binary (path injected by CMake).

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(MEANEXT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
        result.out.append(buf.data(), got);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("extend") {
    auto r = run_cli("extend --mean qa:power:1 --system auto:2:4 --values 0,1,1,1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"limit\":0.75") != std::string::npos);
    CHECK(r.out.find("\"status\":\"converged\"") != std::string::npos);

    // byte-for-byte determinism
    auto again = run_cli("extend --mean qa:power:1 --system auto:2:4 --values 0,1,1,1");
    CHECK(again.out == r.out);
}

TEST_CASE("construct and check-system") {
    auto r = run_cli("construct --n 2 --m 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "{\"n\":2,\"m\":5,\"tuples\":[[1,2],[1,3],[2,4],[3,5],[4,5]]}\n");

    auto check = run_cli("check-system --system auto:3:5");
    CHECK(check.exit_code == 0);
    CHECK(check.out.find("\"admissible\":true") != std::string::npos);
}

TEST_CASE("system files") {
    std::string path = "cli_test_system.json";
    {
        std::ofstream f(path);
        f << "{\"n\":2,\"m\":4,\"tuples\":[[1,2],[1,3],[1,4],[3,4]]}";
    }
    auto check = run_cli("check-system --system-file " + path);
    CHECK(check.exit_code == 0);
    CHECK(check.out.find("\"admissible\":false") != std::string::npos);
    CHECK(check.out.find("\"failed_properties\":[2]") != std::string::npos);

    auto state = run_cli("iterate --mean qa:power:1 --system-file " + path +
                         " --values 0,1,1,1 --k 4");
    CHECK(state.exit_code == 0);
    CHECK(state.out.find("0.6875") != std::string::npos);

    // extending over a non-admissible system is a validation error
    auto bad = run_cli("extend --mean qa:power:1 --system-file " + path + " --values 0,1,1,1");
    CHECK(bad.exit_code == 1);
    std::remove(path.c_str());
}

TEST_CASE("shrink and the s-operators") {
    auto shrink = run_cli("shrink --mean midrange:3 --values 0,3");
    CHECK(shrink.exit_code == 0);
    CHECK(shrink.out.find("\"limit\":1.5") != std::string::npos);

    auto s1 = run_cli("s1 --mean nonsymquad4 --a 1 --b 3");
    CHECK(s1.exit_code == 0);
    CHECK(s1.out.find("\"x\":1.99999") != std::string::npos);

    auto s2 = run_cli("s2 --mean pairwisesqrt:4 --a 1 --b 4");
    CHECK(s2.exit_code == 0);
    CHECK(s2.out.find("\"value\":2.1666666666666665") != std::string::npos);

    auto s3 = run_cli("s3 --mean qa:log --values 2,8");
    CHECK(s3.exit_code == 0);
    CHECK(s3.out.find("\"value\":4") != std::string::npos);
}

TEST_CASE("compound and symmetrize") {
    std::string path = "cli_identity_rows.json";
    {
        std::ofstream f(path);
        f << "{\"n\":2,\"m\":2,\"tuples\":[[1,2],[1,2]]}";
    }
    auto agm = run_cli("compound --means qa:log,qa:power:1 --system-file " + path +
                       " --values 1,9");
    CHECK(agm.exit_code == 0);
    CHECK(agm.out.find("\"limit\":3.93623550364955") != std::string::npos);

    auto unordered = run_cli("compound --means qa:power:1,qa:log --system-file " + path +
                             " --values 1,9");
    CHECK(unordered.exit_code == 1);
    std::remove(path.c_str());

    auto sym = run_cli("symmetrize --mean weighted2:0.66666666666666663 --a 0 --b 1");
    CHECK(sym.exit_code == 0);
    CHECK(sym.out.find("\"limit\":0.5") != std::string::npos);
}

TEST_CASE("enumerate golden output") {
    auto r = run_cli("enumerate --n 2 --m 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\"n\":2,\"m\":4,\"count\":1,\"truncated\":false,\"systems\":"
          "[{\"n\":2,\"m\":4,\"tuples\":[[1,2],[1,3],[2,4],[3,4]]}]}\n");
}

TEST_CASE("markov") {
    auto r = run_cli("markov --system auto:2:3 --power 1024");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"matrix\":[[0.5,0.5,0],[0.5,0,0.5],[0,0.5,0.5]]") != std::string::npos);
    CHECK(r.out.find("\"doubly_stochastic\":true") != std::string::npos);
    CHECK(r.out.find("\"aperiodic\":true") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run_cli("repro").exit_code == 0);
    CHECK(run_cli("extend --mean qa:banana --system auto:2:3 --values 1,2,3").exit_code == 1);
    CHECK(run_cli("extend --mean qa:log --system auto:2:3 --values -1,2,3").exit_code == 1);
    CHECK(run_cli("construct --n 9").exit_code == 1);  // missing --m
    CHECK(run_cli("enumerate --n 3 --m 7").exit_code == 1);
    // non-convergence with a tiny iteration budget
    auto twosteps =
        run_cli("extend --mean qa:power:1 --system auto:2:5 --values 0,1,2,3,9 --max-iter 2");
    CHECK(twosteps.exit_code == 2);
    CHECK(twosteps.out.find("max-iterations-exceeded") != std::string::npos);
}

TEST_CASE("trace output") {
    auto r = run_cli("extend --mean qa:power:1 --system auto:2:3 --values 1,2,3 --trace");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"trace\":[{\"step\":0,\"values\":[1,2,3]}") != std::string::npos);
}

TEST_SUITE_END();
