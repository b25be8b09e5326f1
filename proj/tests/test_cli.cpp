// Black-box tests of the cosine-lab binary: exit codes, formats, determinism.
// argv[1] is the path to the binary (wired up by CTest).

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int g_failures = 0;

#define CLI_CHECK(cond, msg)                                                      \
    do {                                                                          \
        if (!(cond)) {                                                            \
            std::cerr << "[FAIL] " << __LINE__ << ": " << msg << "\n";            \
            ++g_failures;                                                         \
        }                                                                         \
    } while (0)

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr)
        return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-cosine-lab>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const std::string dir = "/tmp/coslab_cli_test";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) {
        std::cerr << "cannot create " << dir << "\n";
        return 1;
    }

    write_file(dir + "/cos3.json", R"({"kind":"scalar_cos","a":{"re":3.0,"im":0.0}})");
    write_file(dir + "/hamel_cos.json",
               R"({"kind":"hamel","b1":1.0,"xi":"sqrt2","mu":0.0,"nu":1.0,"func":"cos"})");
    write_file(dir + "/hamel_cosh.json",
               R"({"kind":"hamel","b1":1.0,"xi":"sqrt2","mu":0.0,"nu":1.0,"func":"cosh"})");
    write_file(dir + "/bad_xi.json", R"({"kind":"hamel","xi":"sqrt3"})");
    write_file(dir + "/bad_config.json", R"({"tolerances": "oops"})");
    write_file(dir + "/missing_family_config.json",
               R"({"families": ["/nonexistent/family.json"]})");

    // --help exits 0.
    CLI_CHECK(run(bin + " --help").exit_code == 0, "--help should exit 0");

    // classify: the three branches, JSON field spot checks.
    {
        const RunResult zero = run(bin + " classify " + dir + "/cos3.json --reproducible");
        CLI_CHECK(zero.exit_code == 0, "classify zero exit");
        CLI_CHECK(zero.output.find("\"branch\": \"zero\"") != std::string::npos,
                  "zero branch");
        CLI_CHECK(zero.output.find("\"schema_version\": 1") != std::string::npos,
                  "schema version present");
        CLI_CHECK(zero.output.find("generated_at") == std::string::npos,
                  "reproducible omits timestamp");

        const RunResult two =
            run(bin + " classify " + dir + "/hamel_cos.json --reproducible");
        CLI_CHECK(two.exit_code == 0, "classify two exit");
        CLI_CHECK(two.output.find("\"branch\": \"two\"") != std::string::npos,
                  "two branch");

        const RunResult inf =
            run(bin + " classify " + dir + "/hamel_cosh.json --reproducible");
        CLI_CHECK(inf.exit_code == 0, "classify infinity exit");
        CLI_CHECK(inf.output.find("\"branch\": \"infinity\"") != std::string::npos,
                  "infinity branch");
    }

    // classify: errors exit 2.
    CLI_CHECK(run(bin + " classify /nonexistent.json").exit_code == 2,
              "missing family file -> 2");
    CLI_CHECK(run(bin + " classify " + dir + "/bad_xi.json").exit_code == 2,
              "non-whitelisted irrational -> 2");

    // halve: flagged counterexample still exits 0; CSV has the flag column.
    {
        write_file(dir + "/cos2.json", R"({"kind":"scalar_cos","a":{"re":2.0,"im":0.0}})");
        const RunResult halve = run(bin + " halve " + dir +
                                    "/cos2.json --t0 3.14159265358979312 --steps 6 "
                                    "--format csv --reproducible");
        CLI_CHECK(halve.exit_code == 0, "halve with violated hypothesis exits 0");
        CLI_CHECK(halve.output.find("false") != std::string::npos,
                  "violated hypothesis visible in csv");
        const RunResult halve_ok = run(bin + " halve " + dir +
                                       "/cos3.json --t0 1 --steps 5 --format text");
        CLI_CHECK(halve_ok.exit_code == 0, "clean halve exit 0");
    }

    // converge: known first rows in csv.
    {
        const RunResult conv = run(bin + " converge --n 6 --format csv");
        CLI_CHECK(conv.exit_code == 0, "converge exit 0");
        CLI_CHECK(conv.output.rfind("n,u,ratio", 0) == 0, "csv header first");
        CLI_CHECK(conv.output.find("0,2.0,0.5") != std::string::npos, "u_0 row");
        CLI_CHECK(conv.output.find("1,1.0,0.2928932188134525") != std::string::npos,
                  "u_1 row");
        CLI_CHECK(run(bin + " converge --n 300").exit_code == 2, "n out of range -> 2");
    }

    // Tolerances from a config file behave like --tol overrides.
    {
        write_file(dir + "/zero_tol.json", R"({"tolerances": {"dalembert": 0.0}})");
        CLI_CHECK(run(bin + " verify --config " + dir + "/zero_tol.json --reproducible")
                          .exit_code == 1,
                  "config-file zero tolerance -> invariant failure -> 1");
    }
    CLI_CHECK(run(bin + " halve /nonexistent.json --t0 1 --steps 3").exit_code == 2,
              "halve missing family -> 2");

    // config validation paths.
    CLI_CHECK(run(bin + " verify --config /nonexistent.cfg").exit_code == 2,
              "missing config -> 2");
    CLI_CHECK(run(bin + " verify --config " + dir + "/bad_config.json").exit_code == 2,
              "malformed config -> 2");
    CLI_CHECK(run(bin + " verify --config " + dir + "/missing_family_config.json")
                      .exit_code == 2,
              "config referencing missing family file -> 2");
    CLI_CHECK(run(bin + " verify --tol oops").exit_code == 2, "malformed --tol -> 2");
    CLI_CHECK(run(bin + " classify " + dir + "/cos3.json --format yaml").exit_code == 2,
              "unknown format -> 2");

    // Generator families come in through the matrix file format.
    {
        write_file(dir + "/gen.json",
                   R"({"kind":"generator","matrix":{"dim":2,)"
                   R"("re":[[0.0,0.5],[0.5,0.0]],"im":[[0.0,0.0],[0.0,0.0]]}})");
        const RunResult gen = run(bin + " classify " + dir + "/gen.json --reproducible");
        CLI_CHECK(gen.exit_code == 0, "generator family classify exit");
        CLI_CHECK(gen.output.find("\"branch\": \"zero\"") != std::string::npos,
                  "bounded generator family is branch zero");
    }

    // COSINE_LAB_SEED is the fallback seed; an explicit --seed wins.
    {
        const RunResult env_run =
            run("COSINE_LAB_SEED=777 " + bin + " verify --reproducible --format csv");
        CLI_CHECK(env_run.exit_code == 0, "env seed verify exit");
        const RunResult env_json =
            run("COSINE_LAB_SEED=777 " + bin + " verify --reproducible");
        CLI_CHECK(env_json.output.find("\"seed\": 777") != std::string::npos,
                  "env seed lands in the report");
        const RunResult flag_wins =
            run("COSINE_LAB_SEED=777 " + bin + " verify --reproducible --seed 9");
        CLI_CHECK(flag_wins.output.find("\"seed\": 9") != std::string::npos,
                  "--seed overrides the environment");
        CLI_CHECK(run("COSINE_LAB_SEED=abc " + bin + " verify").exit_code == 2,
                  "malformed env seed -> 2");
    }

    // Determinism across classify runs (cheap stand-in; the acceptance suite
    // does the full verify comparison).
    {
        const std::string cmd =
            bin + " classify " + dir + "/hamel_cos.json --reproducible --format json";
        const RunResult a = run(cmd);
        const RunResult b = run(cmd);
        CLI_CHECK(a.output == b.output, "classify byte-identical under --reproducible");
        CLI_CHECK(!a.output.empty(), "classify produced output");
    }

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cerr << "test_cli: " << g_failures << " failures\n";
    return 1;
}
