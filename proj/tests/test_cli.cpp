// End-to-end checks of the command-line tool. Runs the real binary (path in
// argv[1]) against generated and hand-written inputs in a scratch directory.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

int failures = 0;

void check(bool ok, const std::string& name, const std::string& evidence = "") {
    if (ok) {
        std::printf("[PASS] %s\n", name.c_str());
    } else {
        ++failures;
        std::printf("[FAIL] %s%s\n", name.c_str(),
                    evidence.empty() ? "" : (" (" + evidence + ")").c_str());
    }
}

int run(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <trialign-binary>\n", argv[0]);
        return 2;
    }
    const std::string bin = argv[1];
    const fs::path root = fs::temp_directory_path() / "trialign_cli_test";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string dir = root.string();

    check(run(bin + " --version >/dev/null") == 0, "version flag exits cleanly");
    check(run(bin + " --help >/dev/null") == 0, "help exits cleanly");

    // A benchmark pair to drive the pipeline.
    check(run(bin + " generate --out " + dir + "/bench --ancestor 20 --size-a 30" +
              " --size-b 34 --seed 1 >/dev/null") == 0,
          "generate exits cleanly");
    for (const char* f : {"graph_a.tsv", "graph_b.tsv", "sim.tsv", "truth.tsv"})
        check(fs::exists(root / "bench" / f), std::string("generate wrote ") + f);

    const std::string inputs = " --graph-a " + dir + "/bench/graph_a.tsv --graph-b " +
                               dir + "/bench/graph_b.tsv --sim " + dir + "/bench/sim.tsv";

    check(run(bin + " align" + inputs + " --out " + dir + "/run1 --max-iters 6" +
              " --threads 1 >/dev/null") == 0,
          "align exits cleanly");
    for (const char* f : {"alignment.tsv", "metrics.txt", "trace.tsv", "manifest.txt"})
        check(fs::exists(root / "run1" / f), std::string("align wrote ") + f);

    std::string metrics1 = slurp(root / "run1" / "metrics.txt");
    check(!contains(metrics1, "f_nc"), "align report has no reference metrics");
    check(contains(metrics1, "ncv_tgs3"), "align report carries the composite scores");

    std::string manifest1 = slurp(root / "run1" / "manifest.txt");
    check(contains(manifest1, "input.graph_a.digest\t"), "manifest records input digests");
    check(contains(manifest1, "output.alignment.digest\t"),
          "manifest records output digests");
    check(contains(manifest1, "flag.beta\t1"), "manifest records the resolved flags");

    // Determinism: an identical rerun reproduces the result files byte for byte.
    check(run(bin + " align" + inputs + " --out " + dir + "/run2 --max-iters 6" +
              " --threads 1 >/dev/null") == 0,
          "align rerun exits cleanly");
    check(slurp(root / "run1" / "alignment.tsv") == slurp(root / "run2" / "alignment.tsv"),
          "alignments of identical runs are byte-identical");
    check(slurp(root / "run1" / "metrics.txt") == slurp(root / "run2" / "metrics.txt"),
          "metric reports of identical runs are byte-identical");

    // Evaluation with and without a reference.
    check(run(bin + " eval --graph-a " + dir + "/bench/graph_a.tsv --graph-b " + dir +
              "/bench/graph_b.tsv --alignment " + dir + "/run1/alignment.tsv --truth " +
              dir + "/bench/truth.tsv --out " + dir + "/eval_truth.txt") == 0,
          "eval with truth exits cleanly");
    std::string with_truth = slurp(root / "eval_truth.txt");
    check(contains(with_truth, "f_nc\t"), "eval with truth reports f_nc");
    check(contains(with_truth, "precision\t"), "eval with truth reports precision");

    check(run(bin + " eval --graph-a " + dir + "/bench/graph_a.tsv --graph-b " + dir +
              "/bench/graph_b.tsv --alignment " + dir + "/run1/alignment.tsv > " + dir +
              "/eval_plain.txt") == 0,
          "eval without truth exits cleanly");
    std::string without_truth = slurp(root / "eval_plain.txt");
    check(!contains(without_truth, "f_nc"), "eval without truth omits f_nc");
    check(contains(without_truth, "tgs3\t"), "eval without truth still reports tgs3");

    // The eval of the alignment must agree with the metrics the align run wrote.
    check(without_truth == metrics1, "eval reproduces the align run's own report");

    // A full prior makes the constraint vacuous: same report either way.
    write_file(root / "ga.tsv", "p q\nq r\np r\n");
    write_file(root / "gb.tsv", "u v\nv w\nu w\n");
    {
        std::ostringstream sim;
        for (const char* a : {"p", "q", "r"})
            for (const char* b : {"u", "v", "w"}) sim << a << '\t' << b << "\t1.0\n";
        write_file(root / "full_sim.tsv", sim.str());
    }
    const std::string tiny = " --graph-a " + dir + "/ga.tsv --graph-b " + dir +
                             "/gb.tsv --sim " + dir + "/full_sim.tsv";
    check(run(bin + " align" + tiny + " --out " + dir + "/plain --threads 1 >/dev/null") == 0,
          "tiny unconstrained align exits cleanly");
    check(run(bin + " align" + tiny + " --out " + dir + "/constrained --constrained" +
              " --threads 1 >/dev/null") == 0,
          "tiny constrained align exits cleanly");
    check(slurp(root / "plain" / "alignment.tsv") ==
              slurp(root / "constrained" / "alignment.tsv"),
          "a vacuous constraint leaves the alignment unchanged");
    check(slurp(root / "plain" / "metrics.txt") ==
              slurp(root / "constrained" / "metrics.txt"),
          "a vacuous constraint leaves the report unchanged");

    // The paper profile caps the main iterations at three.
    check(run(bin + " align" + tiny + " --out " + dir + "/paper --profile paper" +
              " --threads 1 >/dev/null") == 0,
          "paper profile align exits cleanly");
    std::string trace = slurp(root / "paper" / "trace.tsv");
    int records = count_lines(trace) - 1;  // minus the header
    check(records >= 1 && records <= 3,
          "paper profile runs at most three iterations",
          "got " + std::to_string(records));

    // Shift sweep: eight rows, a winner, and the winner's files.
    check(run(bin + " sweep-beta" + inputs + " --out " + dir + "/sweep --max-iters 4" +
              " --threads 1 >/dev/null") == 0,
          "sweep exits cleanly");
    std::string sweep = slurp(root / "sweep" / "sweep.tsv");
    check(count_lines(sweep) == 9, "sweep reports one row per shift value",
          "got " + std::to_string(count_lines(sweep) - 1) + " rows");
    check(contains(slurp(root / "sweep" / "manifest.txt"), "chosen.beta\t"),
          "sweep manifest names the winner");
    check(fs::exists(root / "sweep" / "alignment.tsv"), "sweep keeps the winning alignment");

    // Exit codes: usage, invalid input, degenerate numerics.
    check(run(bin + " align --graph-a " + dir + "/ga.tsv --graph-b " + dir +
              "/gb.tsv --out " + dir + "/x 2>/dev/null") == 1,
          "missing required flag is a usage error");
    check(run(bin + " nonsense 2>/dev/null") == 1, "unknown subcommand is a usage error");
    check(run(bin + " align --graph-a " + dir + "/missing.tsv --graph-b " + dir +
              "/gb.tsv --sim " + dir + "/full_sim.tsv --out " + dir + "/x 2>/dev/null") == 2,
          "unreadable graph file is an input error");
    write_file(root / "zero_sim.tsv", "p\tu\t0.0\n");
    check(run(bin + " align --graph-a " + dir + "/ga.tsv --graph-b " + dir +
              "/gb.tsv --sim " + dir + "/zero_sim.tsv --out " + dir +
              "/x 2>/dev/null") == 3,
          "an all-zero prior is a degenerate-state error");
    write_file(root / "bad_sim.tsv", "p u definitely_not_a_number\n");
    check(run(bin + " align --graph-a " + dir + "/ga.tsv --graph-b " + dir +
              "/gb.tsv --sim " + dir + "/bad_sim.tsv --out " + dir +
              "/x 2>/dev/null") == 2,
          "a malformed similarity file is an input error");

    if (failures == 0) fs::remove_all(root);
    std::printf("%s: %d failure(s)\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
