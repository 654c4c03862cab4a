// Command-line front end: align two networks, generate benchmark pairs,
// evaluate an existing alignment, or sweep the shift parameter.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trialign/errors.hpp"
#include "trialign/graph.hpp"
#include "trialign/matching.hpp"
#include "trialign/metrics.hpp"
#include "trialign/postprocess.hpp"
#include "trialign/similarity.hpp"
#include "trialign/solver.hpp"
#include "trialign/synthgen.hpp"

namespace {

namespace fs = std::filesystem;
using namespace trialign;

constexpr const char* tool_version = "trialign 0.1.0";

// Exit codes: 0 success, 1 usage, 2 invalid input, 3 numeric or degenerate.
constexpr int exit_usage = 1;
constexpr int exit_invalid_input = 2;
constexpr int exit_numeric = 3;

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file for digest: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }
    return h;
}

std::string digest_hex(const std::string& path) {
    char out[32];
    std::snprintf(out, sizeof out, "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(path)));
    return out;
}

std::uint64_t peak_rss_bytes() {
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream ss(line.substr(6));
            std::uint64_t kb = 0;
            ss >> kb;
            return kb * 1024;
        }
    }
    return 0;
}

struct align_options {
    std::string graph_a, graph_b, sim, out_dir;
    double beta = 1.0;
    int max_iters = 30;
    double lambda_tol = 1e-6;
    bool constrained = false;
    bool final_score_only = false;
    std::string matcher = "hungarian";
    std::string profile = "default";
    int post_rounds = 3;
    int b_topo = 200;
    int b_seq = 50;
    int threads = 1;
    std::uint64_t seed = 0;
};

void add_align_flags(CLI::App* cmd, align_options& o, bool with_beta) {
    cmd->add_option("--graph-a", o.graph_a, "Edge list of the first network")->required();
    cmd->add_option("--graph-b", o.graph_b, "Edge list of the second network")->required();
    cmd->add_option("--sim", o.sim, "Similarity prior (labelA labelB weight)")->required();
    cmd->add_option("--out", o.out_dir, "Output directory")->required();
    if (with_beta) cmd->add_option("--beta", o.beta, "Shift toward the previous iterate");
    cmd->add_option("--max-iters", o.max_iters, "Iteration cap");
    cmd->add_option("--lambda-tol", o.lambda_tol, "Stop when lambda stalls by less");
    cmd->add_flag("--constrained", o.constrained,
                  "Restrict triangles to the similarity support");
    cmd->add_flag("--final-score-only", o.final_score_only,
                  "Round and score only the final iterate");
    cmd->add_option("--matcher", o.matcher, "Rounding: hungarian or greedy")
        ->check(CLI::IsMember({"hungarian", "greedy"}));
    cmd->add_option("--profile", o.profile,
                    "default, or paper (three main iterations)")
        ->check(CLI::IsMember({"default", "paper"}));
    cmd->add_option("--post-rounds", o.post_rounds, "Swap passes after rounding");
    cmd->add_option("--b-topo", o.b_topo, "Candidate degree cap on the iterate");
    cmd->add_option("--b-seq", o.b_seq, "Candidate degree cap on the prior");
    cmd->add_option("--threads", o.threads, "Kernel worker threads");
    cmd->add_option("--seed", o.seed, "Run seed, recorded in the manifest");
}

solver_config make_solver_config(const align_options& o, const CLI::App* cmd) {
    solver_config cfg;
    cfg.beta = o.beta;
    cfg.max_iters = o.max_iters;
    cfg.lambda_tol = o.lambda_tol;
    cfg.score_every_iter = !o.final_score_only;
    cfg.matcher = o.matcher == "greedy" ? matcher_kind::greedy : matcher_kind::hungarian;
    cfg.threads = o.threads;
    // The paper profile runs three main iterations; an explicit flag wins.
    if (o.profile == "paper" && cmd->count("--max-iters") == 0) cfg.max_iters = 3;
    return cfg;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw validation_error("cannot write " + p.string());
    return f;
}

void write_manifest_header(std::ostream& out, const std::string& command) {
    out << "tool\t" << tool_version << '\n';
    out << "command\t" << command << '\n';
}

struct align_outcome {
    matching aligned;
    solver_trace trace;
    metric_report report;
    std::int64_t rounded_score = 0;
    std::int64_t refined_score = 0;
};

align_outcome run_align_pipeline(const graph& ga, const graph& gb,
                                 const similarity_matrix& sim, const align_options& o,
                                 const solver_config& cfg) {
    triangle_set ta = enumerate_triangles(ga);
    triangle_set tb = enumerate_triangles(gb);

    solver_result sr = o.constrained ? ctame(ga, gb, sim, cfg) : tame(ta, tb, sim, cfg);

    matching rounded = max_weight_matching(sr.best);
    refine_config rc;
    rc.rounds = o.post_rounds;
    rc.b_topo = o.b_topo;
    rc.b_seq = o.b_seq;
    // Post-processing and metrics look at the real triangle sets even for a
    // constrained run; the constraint only shapes the iteration.
    matching refined = refine(rounded, sr.best, sim, ga, gb, ta, tb, rc);

    align_outcome out{std::move(refined), std::move(sr.trace), {}, 0, 0};
    out.rounded_score = score_triangles(rounded, ta, tb);
    out.refined_score = score_triangles(out.aligned, ta, tb);
    out.report = evaluate_alignment(out.aligned, ga, gb, ta, tb);
    return out;
}

void write_align_outputs(const fs::path& dir, const graph& ga, const graph& gb,
                         const align_outcome& res) {
    {
        auto f = open_out(dir / "alignment.tsv");
        write_matching(res.aligned, ga, gb, f);
    }
    {
        auto f = open_out(dir / "metrics.txt");
        write_metric_report(res.report, f);
    }
    {
        auto f = open_out(dir / "trace.tsv");
        write_trace(res.trace, f);
    }
}

void write_align_manifest(const fs::path& dir, const align_options& o,
                          const solver_config& cfg, const align_outcome& res,
                          double wallclock, const std::string& command) {
    auto f = open_out(dir / "manifest.txt");
    write_manifest_header(f, command);
    f << "flag.graph_a\t" << o.graph_a << '\n';
    f << "flag.graph_b\t" << o.graph_b << '\n';
    f << "flag.sim\t" << o.sim << '\n';
    f << "flag.out\t" << o.out_dir << '\n';
    f << "flag.beta\t" << fmt_double(cfg.beta) << '\n';
    f << "flag.max_iters\t" << cfg.max_iters << '\n';
    f << "flag.lambda_tol\t" << fmt_double(cfg.lambda_tol) << '\n';
    f << "flag.constrained\t" << (o.constrained ? 1 : 0) << '\n';
    f << "flag.score_every_iter\t" << (cfg.score_every_iter ? 1 : 0) << '\n';
    f << "flag.matcher\t" << o.matcher << '\n';
    f << "flag.profile\t" << o.profile << '\n';
    f << "flag.post_rounds\t" << o.post_rounds << '\n';
    f << "flag.b_topo\t" << o.b_topo << '\n';
    f << "flag.b_seq\t" << o.b_seq << '\n';
    f << "flag.threads\t" << o.threads << '\n';
    f << "flag.seed\t" << o.seed << '\n';
    f << "input.graph_a.digest\t" << digest_hex(o.graph_a) << '\n';
    f << "input.graph_b.digest\t" << digest_hex(o.graph_b) << '\n';
    f << "input.sim.digest\t" << digest_hex(o.sim) << '\n';
    f << "solver.iterations\t" << res.trace.iterations.size() << '\n';
    f << "solver.converged\t" << (res.trace.converged ? 1 : 0) << '\n';
    f << "solver.best_iteration\t" << res.trace.best_iteration << '\n';
    f << "solver.best_score\t" << res.trace.best_score << '\n';
    f << "result.rounded_triangles\t" << res.rounded_score << '\n';
    f << "result.refined_triangles\t" << res.refined_score << '\n';
    f << "result.matched_pairs\t" << res.aligned.size() << '\n';
    f << "output.alignment.digest\t" << digest_hex((dir / "alignment.tsv").string()) << '\n';
    f << "output.metrics.digest\t" << digest_hex((dir / "metrics.txt").string()) << '\n';
    f << "wallclock_seconds\t" << fmt_double(wallclock) << '\n';
    f << "peak_memory_bytes\t" << peak_rss_bytes() << '\n';
}

int cmd_align(const align_options& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    auto pa = parse_graph_file(o.graph_a);
    auto pb = parse_graph_file(o.graph_b);
    if (pa.stats.duplicate_edges || pa.stats.self_loops)
        std::cerr << "note: " << o.graph_a << ": dropped " << pa.stats.duplicate_edges
                  << " duplicate edge(s), " << pa.stats.self_loops << " self loop(s)\n";
    if (pb.stats.duplicate_edges || pb.stats.self_loops)
        std::cerr << "note: " << o.graph_b << ": dropped " << pb.stats.duplicate_edges
                  << " duplicate edge(s), " << pb.stats.self_loops << " self loop(s)\n";
    similarity_matrix sim = parse_similarity_file(o.sim, pa.g, pb.g);

    solver_config cfg = make_solver_config(o, cmd);
    align_outcome res = run_align_pipeline(pa.g, pb.g, sim, o, cfg);

    fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw validation_error("cannot create output directory: " + o.out_dir);
    write_align_outputs(dir, pa.g, pb.g, res);
    double wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_align_manifest(dir, o, cfg, res, wallclock, "align");

    std::cout << "aligned " << res.aligned.size() << " pairs, "
              << res.refined_score << " conserved triangles -> " << o.out_dir << '\n';
    return 0;
}

int cmd_sweep(const align_options& o, const CLI::App* cmd) {
    auto t0 = std::chrono::steady_clock::now();
    auto pa = parse_graph_file(o.graph_a);
    auto pb = parse_graph_file(o.graph_b);
    similarity_matrix sim = parse_similarity_file(o.sim, pa.g, pb.g);

    fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw validation_error("cannot create output directory: " + o.out_dir);

    struct sweep_row {
        double beta;
        std::int64_t triangles;
        double gs3, tgs3;
        std::size_t iterations;
    };
    std::vector<sweep_row> rows;
    std::size_t winner = 0;
    align_outcome best_outcome;

    for (double beta : beta_grid()) {
        align_options run = o;
        run.beta = beta;
        solver_config cfg = make_solver_config(run, cmd);
        cfg.beta = beta;
        align_outcome res = run_align_pipeline(pa.g, pb.g, sim, run, cfg);
        rows.push_back({beta, res.refined_score, res.report.edges.value,
                        res.report.triangles.value, res.trace.iterations.size()});
        // Argmax by conserved triangles; the smaller beta keeps a tie.
        if (rows.size() == 1 || res.refined_score > rows[winner].triangles) {
            winner = rows.size() - 1;
            best_outcome = std::move(res);
        }
    }

    {
        auto f = open_out(dir / "sweep.tsv");
        f << "# beta\tconserved_triangles\tgs3\ttgs3\titerations\n";
        for (const auto& r : rows)
            f << fmt_double(r.beta) << '\t' << r.triangles << '\t' << fmt_double(r.gs3)
              << '\t' << fmt_double(r.tgs3) << '\t' << r.iterations << '\n';
    }
    write_align_outputs(dir, pa.g, pb.g, best_outcome);
    {
        auto f = open_out(dir / "manifest.txt");
        write_manifest_header(f, "sweep-beta");
        f << "flag.graph_a\t" << o.graph_a << '\n';
        f << "flag.graph_b\t" << o.graph_b << '\n';
        f << "flag.sim\t" << o.sim << '\n';
        f << "flag.out\t" << o.out_dir << '\n';
        f << "chosen.beta\t" << fmt_double(rows[winner].beta) << '\n';
        f << "chosen.conserved_triangles\t" << rows[winner].triangles << '\n';
        f << "input.graph_a.digest\t" << digest_hex(o.graph_a) << '\n';
        f << "input.graph_b.digest\t" << digest_hex(o.graph_b) << '\n';
        f << "input.sim.digest\t" << digest_hex(o.sim) << '\n';
        f << "output.alignment.digest\t" << digest_hex((dir / "alignment.tsv").string()) << '\n';
        f << "output.metrics.digest\t" << digest_hex((dir / "metrics.txt").string()) << '\n';
        f << "wallclock_seconds\t"
          << fmt_double(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())
          << '\n';
        f << "peak_memory_bytes\t" << peak_rss_bytes() << '\n';
    }
    std::cout << "best beta " << fmt_double(rows[winner].beta) << " with "
              << rows[winner].triangles << " conserved triangles -> " << o.out_dir << '\n';
    return 0;
}

struct generate_options {
    std::string out_dir;
    gen_config cfg;
};

int cmd_generate(const generate_options& o) {
    benchmark_pair p = generate(o.cfg);
    write_benchmark(p, o.out_dir);
    pair_summary s = summarize(p);
    std::cout << "graph_a: " << s.a.nodes << " nodes, " << s.a.edges << " edges, "
              << s.a.triangles << " triangles\n";
    std::cout << "graph_b: " << s.b.nodes << " nodes, " << s.b.edges << " edges, "
              << s.b.triangles << " triangles\n";
    std::cout << "sim: " << s.sim_entries << " entries; truth: " << s.truth_pairs
              << " pairs -> " << o.out_dir << '\n';
    return 0;
}

struct eval_options {
    std::string graph_a, graph_b, alignment, truth, out_file;
};

int cmd_eval(const eval_options& o) {
    auto pa = parse_graph_file(o.graph_a);
    auto pb = parse_graph_file(o.graph_b);
    matching m = read_matching_file(o.alignment, pa.g, pb.g);
    triangle_set ta = enumerate_triangles(pa.g);
    triangle_set tb = enumerate_triangles(pb.g);

    metric_report report;
    if (!o.truth.empty()) {
        ground_truth truth = read_truth_file(o.truth, pa.g, pb.g);
        report = evaluate_alignment(m, pa.g, pb.g, ta, tb, &truth);
    } else {
        report = evaluate_alignment(m, pa.g, pb.g, ta, tb);
    }

    if (o.out_file.empty()) {
        write_metric_report(report, std::cout);
    } else {
        auto f = open_out(o.out_file);
        write_metric_report(report, f);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangle-preserving global network alignment"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    align_options align_opts;
    auto* align_cmd = app.add_subcommand("align", "Align two networks");
    add_align_flags(align_cmd, align_opts, true);

    align_options sweep_opts;
    auto* sweep_cmd =
        app.add_subcommand("sweep-beta", "Align once per shift value, keep the best");
    add_align_flags(sweep_cmd, sweep_opts, false);

    generate_options gen_opts;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a benchmark pair");
    gen_cmd->add_option("--out", gen_opts.out_dir, "Output directory")->required();
    gen_cmd->add_option("--ancestor", gen_opts.cfg.ancestor_size, "Ancestor size");
    gen_cmd->add_option("--size-a", gen_opts.cfg.size_a, "First copy size");
    gen_cmd->add_option("--size-b", gen_opts.cfg.size_b, "Second copy size");
    gen_cmd->add_option("--dup-prob", gen_opts.cfg.dup_prob, "Duplication step probability");
    gen_cmd->add_option("--edge-keep-prob", gen_opts.cfg.edge_keep_prob,
                        "Parent edge survival probability");
    gen_cmd->add_option("--complement-prob", gen_opts.cfg.complement_prob,
                        "Parent-child edge probability");
    gen_cmd->add_option("--noise-per-node", gen_opts.cfg.noise_pairs_per_node,
                        "Spurious similarity entries per node");
    gen_cmd->add_option("--seed", gen_opts.cfg.seed, "Generator seed");

    eval_options eval_opts;
    auto* eval_cmd = app.add_subcommand("eval", "Score an existing alignment");
    eval_cmd->add_option("--graph-a", eval_opts.graph_a, "Edge list of the first network")
        ->required();
    eval_cmd->add_option("--graph-b", eval_opts.graph_b, "Edge list of the second network")
        ->required();
    eval_cmd->add_option("--alignment", eval_opts.alignment, "Alignment TSV to score")
        ->required();
    eval_cmd->add_option("--truth", eval_opts.truth, "Reference pairs (optional)");
    eval_cmd->add_option("--out", eval_opts.out_file, "Report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message
        return exit_usage;
    }

    try {
        if (align_cmd->parsed()) return cmd_align(align_opts, align_cmd);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, sweep_cmd);
        if (gen_cmd->parsed()) return cmd_generate(gen_opts);
        if (eval_cmd->parsed()) return cmd_eval(eval_opts);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const degenerate_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return 0;
}
