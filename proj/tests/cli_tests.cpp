// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

// End-to-end tests that drive the installed binary through a shell, so
// exit codes, stdout formats, and artifact files are all exercised the
// way a user sees them.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tsbft/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code = -1;
    std::string output; // stdout and stderr, interleaved
};

fs::path scratch_root() {
    static fs::path root = [] {
        fs::path p = fs::temp_directory_path() /
                     ("tsbft-cli-" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return root;
}

fs::path fresh_dir(const std::string& name) {
    fs::path p = scratch_root() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

// Runs the binary through /bin/sh; `env_prefix` lets a test export
// variables for just that invocation, e.g. "TSBFT_OUT_DIR=/tmp/x".
CmdResult cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    fs::path capture =
        scratch_root() / ("capture-" + std::to_string(counter++) + ".txt");
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + "\"" +
                      TSBFT_CLI_PATH + "\" " + args + " > " +
                      capture.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    CmdResult res;
    if (WIFEXITED(status)) {
        res.code = WEXITSTATUS(status);
    }
    res.output = read_file(capture);
    return res;
}

std::string scn(const std::string& stem) {
    return std::string(TSBFT_SCENARIO_DIR) + "/" + stem + ".scn";
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

} // namespace

TEST_CASE("run prints the verdict and writes trace and verdict artifacts") {
    fs::path out = fresh_dir("run-clean");
    CmdResult r = cli("run " + scn("fastpath") + " --out " + out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 0);
    CHECK(contains(r.output, "tsbft-verdict v1"));
    CHECK(contains(r.output, "name=fastpath seed=1"));
    CHECK(contains(r.output, "check two_step status=pass"));
    CHECK(contains(r.output, "overall=pass"));

    fs::path trace = out / "fastpath-seed1.trace";
    fs::path verdict = out / "fastpath-seed1.verdict";
    REQUIRE(fs::exists(trace));
    REQUIRE(fs::exists(verdict));
    CHECK(contains(r.output, "trace=" + trace.string()));
    CHECK(starts_with(read_file(trace), "tsbft-trace v1"));
    // stdout is exactly the verdict artifact plus the trace pointer.
    std::string v = read_file(verdict);
    CHECK(starts_with(v, "tsbft-verdict v1"));
    CHECK(starts_with(r.output, v));
}

TEST_CASE("run --seed renames artifacts and reseeds the network") {
    fs::path out = fresh_dir("run-seeded");
    CmdResult r =
        cli("run " + scn("fastpath") + " --seed 7 --out " + out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 0);
    CHECK(contains(r.output, "name=fastpath seed=7"));
    CHECK(fs::exists(out / "fastpath-seed7.trace"));
    CHECK(fs::exists(out / "fastpath-seed7.verdict"));
}

TEST_CASE("TSBFT_OUT_DIR supplies the artifact directory; --out wins") {
    fs::path env_dir = fresh_dir("out-env");
    CmdResult r =
        cli("run " + scn("fastpath"), "TSBFT_OUT_DIR=" + env_dir.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 0);
    CHECK(fs::exists(env_dir / "fastpath-seed1.trace"));

    fs::path flag_dir = fresh_dir("out-flag");
    CmdResult r2 = cli("run " + scn("fastpath") + " --out " +
                           flag_dir.string(),
                       "TSBFT_OUT_DIR=" + env_dir.string());
    CHECK(r2.code == 0);
    CHECK(fs::exists(flag_dir / "fastpath-seed1.trace"));
}

TEST_CASE("a failed two-step check exits with the liveness code") {
    fs::path out = fresh_dir("run-twostep-fail");
    CmdResult r =
        cli("run " + scn("two_step_fail") + " --out " + out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 2);
    CHECK(contains(r.output, "check two_step status=fail"));
    CHECK(contains(r.output, "check agreement status=pass"));
    CHECK(contains(r.output, "overall=fail"));
}

TEST_CASE("a failed invariant exits with the safety code") {
    fs::path out = fresh_dir("run-safety-fail");
    CmdResult r =
        cli("run " + scn("no_doubling_detector") + " --out " + out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 1);
    CHECK(contains(r.output, "check inv_timer_doubling status=fail"));
    CHECK(contains(r.output, "check liveness status=fail"));
    CHECK(contains(r.output, "overall=fail"));
}

TEST_CASE("a too-short horizon exits with the inconclusive code") {
    using namespace tsbft;
    fs::path out = fresh_dir("run-inconclusive");
    Scenario sc = parse_scenario(read_file(scn("faulty_leader_commit")));
    sc.name = "squeezed";
    sc.horizon_ticks = 40; // ends before the expected t=51 commit
    fs::path file = out / "squeezed.scn";
    write_file(file, render_scenario(sc));

    CmdResult r = cli("run " + file.string() + " --out " + out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 4);
    CHECK(contains(r.output, "check liveness status=inconclusive"));
    CHECK(contains(r.output, "overall=inconclusive"));
}

TEST_CASE("check re-verifies a trace artifact") {
    fs::path out = fresh_dir("check");
    REQUIRE(cli("run " + scn("fastpath") + " --out " + out.string()).code ==
            0);
    CmdResult ok = cli("check " + (out / "fastpath-seed1.trace").string());
    INFO("output:\n" << ok.output);
    CHECK(ok.code == 0);
    CHECK(contains(ok.output, "overall=pass"));

    REQUIRE(cli("run " + scn("two_step_fail") + " --out " + out.string())
                .code == 2);
    CmdResult bad =
        cli("check " + (out / "two_step_fail-seed1.trace").string());
    INFO("output:\n" << bad.output);
    CHECK(bad.code == 2);
    CHECK(contains(bad.output, "check two_step status=fail"));
}

TEST_CASE("replay accepts a faithful trace and rejects a doctored one") {
    fs::path out = fresh_dir("replay");
    REQUIRE(cli("run " + scn("fastpath") + " --out " + out.string()).code ==
            0);
    fs::path trace = out / "fastpath-seed1.trace";

    CmdResult ok = cli("replay " + trace.string());
    INFO("output:\n" << ok.output);
    CHECK(ok.code == 0);
    CHECK(contains(ok.output, "replay ok events="));

    // Flip the value in the first vote record; the trace still parses
    // but the recorded effect no longer matches the node's real output.
    std::string text = read_file(trace);
    size_t line = text.find("\nvoted ");
    REQUIRE(line != std::string::npos);
    size_t vpos = text.find(" value=", line);
    REQUIRE(vpos != std::string::npos);
    size_t eol = text.find('\n', vpos);
    text.replace(vpos, eol - vpos, " value=zz");
    fs::path doctored = out / "doctored.trace";
    write_file(doctored, text);

    CmdResult bad = cli("replay " + doctored.string());
    INFO("output:\n" << bad.output);
    CHECK(bad.code == 1);
    CHECK(contains(bad.output, "replay mismatch node="));
    CHECK(contains(bad.output, "recorded:"));
    CHECK(contains(bad.output, "replayed:"));
}

TEST_CASE("batch summarizes a seed range") {
    fs::path out = fresh_dir("batch-pass");
    CmdResult r = cli("batch " + scn("fastpath") + " --seeds 1..5 --out " +
                      out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 0);
    CHECK(contains(r.output, "tsbft-batch v1"));
    CHECK(contains(r.output, "name=fastpath seeds=1..5 runs=5"));
    CHECK(contains(r.output, "failed_runs=0 inconclusive_runs=0"));
    CHECK(contains(r.output, "overall=pass"));
    CHECK_FALSE(contains(r.output, "failure_trace="));
}

TEST_CASE("batch stores the first failing trace for debugging") {
    fs::path out = fresh_dir("batch-fail");
    CmdResult r = cli("batch " + scn("no_doubling_detector") +
                      " --seeds 1..3 --out " + out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 1);
    CHECK(contains(r.output, "failed_runs=3"));
    CHECK(contains(r.output, "check inv_timer_doubling failures=3"));
    CHECK(contains(r.output, "first_failure_seed=1"));

    fs::path trace = out / "no_doubling_detector-seed1-failure.trace";
    CHECK(contains(r.output, "failure_trace=" + trace.string()));
    REQUIRE(fs::exists(trace));
    CHECK(starts_with(read_file(trace), "tsbft-trace v1"));
}

TEST_CASE("explore reports clean sweeps and counterexamples") {
    CmdResult clean = cli("explore --rounds 1");
    INFO("output:\n" << clean.output);
    CHECK(clean.code == 0);
    CHECK(contains(clean.output, "explored=931 failures=0"));
    CHECK(contains(clean.output, "overall=pass"));

    CmdResult crash = cli("explore --rounds 2 --crash-only");
    INFO("output:\n" << crash.output);
    CHECK(crash.code == 0);
    CHECK(contains(crash.output, "explored=14406 failures=0"));

    CmdResult mut =
        cli("explore --rounds 2 --mutation commit_threshold_minus_f");
    INFO("output:\n" << mut.output);
    CHECK(mut.code == 1);
    CHECK(contains(mut.output, "explored=45619 failures=584"));
    CHECK(contains(mut.output, "first_failure=explore-19238: agreement:"));
    CHECK(contains(mut.output, "counterexample:"));
    CHECK(contains(mut.output, "name = explore-19238"));
}

TEST_CASE("explore refuses a space beyond its budget") {
    CmdResult r = cli("explore --rounds 4");
    INFO("output:\n" << r.output);
    CHECK(r.code == 3);
    CHECK(contains(r.output,
                   "error: schedule space of 109531219 exceeds budget"));
}

TEST_CASE("bad inputs exit with the usage-error code") {
    CmdResult missing = cli("run /nonexistent/nowhere.scn");
    INFO("output:\n" << missing.output);
    CHECK(missing.code == 3);
    CHECK(contains(missing.output, "error:"));

    fs::path out = fresh_dir("bad-inputs");
    fs::path garbage = out / "garbage.scn";
    write_file(garbage, "f = banana\n");
    CmdResult malformed = cli("run " + garbage.string());
    INFO("output:\n" << malformed.output);
    CHECK(malformed.code == 3);
    CHECK(contains(malformed.output, "error: scenario"));

    CmdResult unknown = cli("explore --mutation bogus");
    INFO("output:\n" << unknown.output);
    CHECK(unknown.code == 3);
    CHECK(contains(unknown.output, "error: unknown mutation: bogus"));

    CmdResult empty_range =
        cli("batch " + scn("fastpath") + " --seeds 5..1");
    INFO("output:\n" << empty_range.output);
    CHECK(empty_range.code == 3);
    CHECK(contains(empty_range.output, "error: --seeds: empty range"));

    CmdResult no_trace = cli("check /nonexistent/nowhere.trace");
    CHECK(no_trace.code == 3);
}

TEST_CASE("--verbose streams the whole trace before the verdict") {
    fs::path out = fresh_dir("verbose");
    CmdResult r = cli("--verbose run " + scn("fastpath") + " --out " +
                      out.string());
    INFO("output:\n" << r.output);
    CHECK(r.code == 0);
    CHECK(contains(r.output, "tsbft-trace v1"));
    CHECK(contains(r.output, "\nproposed "));
    CHECK(contains(r.output, "\nvoted "));
    CHECK(contains(r.output, "\ncommitted "));
    CHECK(contains(r.output, "\nend t="));
    CHECK(contains(r.output, "tsbft-verdict v1"));
}
