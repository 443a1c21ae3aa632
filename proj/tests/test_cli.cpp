// End-to-end checks driving the installed binary; argv[1] is the binary,
// argv[2] the golden directory.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

std::string g_binary;
std::string g_golden;
int g_failures = 0;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = g_binary + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
    if (!ok) ++g_failures;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <binary> <golden-dir>\n");
        return 2;
    }
    g_binary = argv[1];
    g_golden = argv[2];

    RunResult rank = run("rank --input " + g_golden + "/q3.json");
    expect(rank.code == 0 && rank.out == "3\n", "rank of the 3-cube is 3, exit 0");

    RunResult validate = run("validate --input " + g_golden + "/q3.json --quiet");
    expect(validate.code == 0, "validate exits 0 on a valid space");

    RunResult cycle = run("check --input " + g_golden + "/cycle5.json --quiet");
    expect(cycle.code == 1, "check exits 1 on the 5-cycle metric");

    RunResult medianize = run("medianize --input " + g_golden + "/tripod.json");
    expect(medianize.code == 0 &&
               medianize.out.find("\"kind\": \"median_space\"") != std::string::npos &&
               medianize.out.find("u3") != std::string::npos,
           "medianize turns the tripod walls into a 4-point space");

    RunResult gen1 = run("generate hypercube --k 2");
    RunResult gen2 = run("generate hypercube --k 2");
    expect(gen1.code == 0 && gen1.out == gen2.out, "generation is byte-deterministic");

    RunResult seeded1 = run("generate random-subalgebra --n 8 --m 5 --seed 42");
    RunResult seeded2 = run("generate random-subalgebra --n 8 --m 5 --seed 42");
    RunResult seeded3 = run("generate random-subalgebra --n 8 --m 5 --seed 43");
    expect(seeded1.code == 0 && seeded1.out == seeded2.out && seeded1.out != seeded3.out,
           "seeded generation is reproducible and seed-sensitive");

    RunResult usage = run("frobnicate");
    expect(usage.code == 2, "unknown subcommands exit 2");

    RunResult missing = run("rank --input /does/not/exist.json");
    expect(missing.code == 2, "unreadable input exits 2");

    RunResult guard = run("double-dual --input " + g_golden + "/q3.json --guard 2 --quiet");
    expect(guard.code == 3, "guard refusal exits 3");

    RunResult demo = run("demo-staircase --kmax 3 --format text");
    expect(demo.code == 0 && demo.out.find("ok: true") != std::string::npos,
           "the staircase demo stabilizes");

    RunResult chains = run("chains --input " + g_golden + "/q3.json --from 0 --to 7 "
                           "--format text");
    expect(chains.code == 0, "chains runs on the cube diagonal");

    RunResult weights = run("weights --input " + g_golden + "/path3_weighted.json");
    expect(weights.code == 0 && weights.out.find("\"weight\": \"2\"") != std::string::npos,
           "weights recovers the path weights");

    RunResult check_one = run("check --input " + g_golden + "/q3.json --quiet");
    expect(check_one.code == 0, "the full statement suite passes on the 3-cube");

    RunResult corpus1 = run("check --corpus --filter MedianizationIsometry");
    RunResult corpus2 = run("check --corpus --filter MedianizationIsometry");
    expect(corpus1.code == 0 && corpus1.out == corpus2.out &&
               corpus1.out.find("\"failed\": 0") != std::string::npos,
           "corpus scorecards are byte-identical across runs");

    std::printf("%d failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
