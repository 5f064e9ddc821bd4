#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// HOTSHARE_BIN and HOTSHARE_CONFIG_DIR are injected by the build.

namespace {

struct CmdResult {
    int exit_code;
    std::string output; // stdout + stderr interleaved
};

CmdResult run(const std::string& args) {
    std::string cmd = std::string(HOTSHARE_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string config(const char* name) {
    return std::string(HOTSHARE_CONFIG_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string temp_path(const char* stem) {
    return std::string("cli_test_") + stem;
}

} // namespace

TEST_CASE("verify: the closed-form table holds at the default and scaled parameters") {
    CmdResult def = run("verify");
    CHECK(def.exit_code == 0);
    CHECK(contains(def.output, "checks passed"));
    CHECK_FALSE(contains(def.output, "MISMATCH"));

    CmdResult scaled = run("verify --v 5 --t 2");
    CHECK(scaled.exit_code == 0);
    CHECK(contains(scaled.output, "checks passed"));
}

TEST_CASE("verify: an uncovered market is an input error, exit 2") {
    CmdResult r = run("verify --v 1.5 --t 1");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "error:"));
    CHECK(contains(r.output, "covered"));
}

TEST_CASE("eval: canonical mechanism on the four-segment market") {
    CmdResult r = run("eval --config " + config("four_segment.json") + " --canonical 4seg-consumeropt");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output,
                   "param,p_A,p_B,pi_A,pi_B,joint,CW,ir_A,ir_B,jointly_ir,pareto,strict,"
                   "p_A_dec,p_B_dec,pi_A_dec,pi_B_dec,joint_dec,CW_dec"));
    CHECK(contains(r.output, "4seg-consumeropt,2/3,2/3,25/72,25/72,25/36,37/18,1,1,1,1,1,"));
    CHECK(contains(r.output, "firm,segment,x0,x1,slope,intercept"));
}

TEST_CASE("eval: full sharing guts joint IR on the one-segment market") {
    CmdResult r = run("eval --config " + config("one_segment.json") + " --canonical full-sharing");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "full-sharing,0,0,1/4,1/4,1/2,9/4,1,0,0,0,0,"));
}

TEST_CASE("eval: no mechanism means the no-sharing baseline compared to itself") {
    CmdResult r = run("eval --config " + config("four_segment.json"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "no-sharing,2/3,2/3,25/72,25/72,25/36,2,1,1,1,1,0,"));
}

TEST_CASE("eval: a mechanism embedded in the config is picked up") {
    CmdResult r = run("eval --config " + config("four_segment_firmopt.json"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "embedded,2/3,2/3,13/36,13/36,13/18,"));
    CHECK(contains(r.output, ",1,1,1,1,1,")); // Pareto-improving, strictly
}

TEST_CASE("eval: json format carries exact strings and the verdict block") {
    CmdResult r = run("eval --config " + config("four_segment_firmopt.json") + " --format json");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"pi_A\": \"13/36\""));
    CHECK(contains(r.output, "\"CW\": \"145/72\""));
    CHECK(contains(r.output, "\"strict\": true"));
    CHECK(contains(r.output, "\"method\": \"enumeration\""));
}

TEST_CASE("eval: the eps override gate") {
    std::string base = "eval --config " + config("one_segment.json") + " --canonical 1seg-eps";
    CHECK(run(base + " --eps 1/5").exit_code == 0);
    CHECK(run(base + " --eps 3/10").exit_code == 2);
    CmdResult forced = run(base + " --eps 3/10 --allow-out-of-range");
    CHECK(forced.exit_code == 0);
    // Outside the closed-form window the solver falls back to the plain
    // uniform price; the row is still exact (pi_A picks up the duel take 1/25
    // on the shared interval on top of the uniform 1/8).
    CHECK(contains(forced.output, "1seg-eps,1/2,0,33/200,201/400,"));
}

TEST_CASE("eval: malformed input is an input error, exit 2") {
    std::string bad = temp_path("bad.json");
    {
        std::ofstream f(bad);
        f << "{ this is not json";
    }
    CmdResult r = run("eval --config " + bad);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "error:"));
    std::remove(bad.c_str());

    std::string unknown = temp_path("unknown.json");
    {
        std::ofstream f(unknown);
        f << R"({"v": "3", "t": "1", "segments": [{"kind": "B-only", "mass": "1"}], "surprise": 1})";
    }
    CmdResult u = run("eval --config " + unknown);
    CHECK(u.exit_code == 2);
    CHECK(contains(u.output, "error:"));
    std::remove(unknown.c_str());

    CHECK(run("eval --config does_not_exist.json").exit_code == 2);
}

TEST_CASE("cli: parse errors and help") {
    CHECK(run("").exit_code == 2);                  // a subcommand is required
    CHECK(run("eval").exit_code == 2);              // --config is required
    CHECK(run("frobnicate").exit_code == 2);        // unknown subcommand
    CHECK(run("verify --bogus 1").exit_code == 2);  // unknown flag
    CHECK(run("--help").exit_code == 0);
    CHECK(run("sweep --help").exit_code == 0);
}

TEST_CASE("sweep: exact rows across the interval family") {
    CmdResult r = run("sweep --config " + config("one_segment.json") +
                      " --param eps --from 1/100 --to 1/4 --steps 3");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.output);
    std::string line;
    int rows = 0;
    bool saw_first = false, saw_last = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == 'p') continue; // header
        ++rows;
        if (contains(line, "1/100,") && contains(line, ",2499/10000,")) saw_first = true;
        if (line.rfind("1/4,", 0) == 0 && contains(line, ",11/16,")) saw_last = true;
    }
    CHECK(rows == 3);
    CHECK(saw_first);
    CHECK(saw_last);
    // At eps = 1/4: joint exactly matches the baseline, B alone is below water.
    CHECK(contains(r.output, "1/4,1/2,0,3/16,1/2,11/16,33/16,1,0,1,0,0,"));
}

TEST_CASE("sweep: the closed-form range is enforced unless extrapolation is requested") {
    std::string base = "sweep --config " + config("one_segment.json") +
                       " --param eps --from 1/100 --to 3/10 --steps 3";
    CmdResult refused = run(base);
    CHECK(refused.exit_code == 2);
    CHECK(contains(refused.output, "error:"));
    CHECK(run(base + " --allow-extrapolation").exit_code == 0);
    // Degenerate or reversed ranges are input errors.
    CHECK(run("sweep --config " + config("one_segment.json") +
              " --param eps --from 1/4 --to 1/8 --steps 3")
              .exit_code == 2);
    CHECK(run("sweep --config " + config("one_segment.json") +
              " --param other --from 1/100 --to 1/4")
              .exit_code == 2);
}

TEST_CASE("search: grid report, frontier file, and the resolution cap") {
    std::string frontier = temp_path("frontier.csv");
    std::string cmd = "search --config " + config("one_segment.json") +
                      " --constraint no-harm --objective profit --resolution 1/16 --frontier-out " +
                      frontier;
    CmdResult r = run(cmd);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "mechanisms scanned: 137"));
    CHECK(contains(r.output, "scan certification failures: 0"));
    CHECK(contains(r.output, "best mechanism: B->A on S_B: [1/4,3/8); A->B on S_A: {}"));
    CHECK(contains(r.output, "joint = 23/32"));
    CHECK(contains(r.output, "verdict: ir_A=1 ir_B=0 jointly_ir=1 consumers_no_worse=1 pareto=0 strict=0"));

    std::string fr = slurp(frontier);
    CHECK(contains(fr, "share_B_lo,share_B_hi,share_A_lo,share_A_hi,joint,CW"));

    // Determinism: identical bytes on stdout and in the frontier file.
    CmdResult again = run(cmd);
    CHECK(again.output == r.output);
    CHECK(slurp(frontier) == fr);
    std::remove(frontier.c_str());

    CHECK(run("search --config " + config("one_segment.json") +
              " --constraint no-harm --objective profit --resolution 1/8")
              .exit_code == 2); // coarser than 1/12
    CHECK(run("search --config " + config("one_segment.json") +
              " --constraint pareto --objective profit --resolution 1/16")
              .exit_code == 2);
}

TEST_CASE("eval and sweep output is byte-deterministic") {
    std::string eval_cmd = "eval --config " + config("four_segment_firmopt.json");
    CHECK(run(eval_cmd).output == run(eval_cmd).output);
    std::string sweep_cmd = "sweep --config " + config("one_segment.json") +
                            " --param eps --from 1/8 --to 1/4 --steps 5";
    CHECK(run(sweep_cmd).output == run(sweep_cmd).output);
}

TEST_CASE("eval: --out writes the same report to a file") {
    std::string out = temp_path("eval_out.csv");
    CmdResult direct = run("eval --config " + config("one_segment.json") + " --canonical 1seg-firmopt");
    CmdResult filed =
        run("eval --config " + config("one_segment.json") + " --canonical 1seg-firmopt --out " + out);
    CHECK(direct.exit_code == 0);
    CHECK(filed.exit_code == 0);
    CHECK(slurp(out) == direct.output);
    std::remove(out.c_str());
}
