#include "trialign/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include "trialign/rng.hpp"

namespace trialign {

namespace {

// Growth workspace: adjacency in insertion order plus an edge key set, so
// the walk of the generator is a pure function of the seed.
struct grown_graph {
    std::vector<std::vector<int>> adj;
    std::unordered_set<std::uint64_t> edge_keys;

    static std::uint64_t key(int u, int v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    }

    bool add_edge(int u, int v) {
        if (u == v) return false;
        if (!edge_keys.insert(key(u, v)).second) return false;
        adj[u].push_back(v);
        adj[v].push_back(u);
        return true;
    }
};

grown_graph seed_triangle() {
    grown_graph g;
    g.adj.resize(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    return g;
}

void grow_to(grown_graph& g, int target, const gen_config& cfg, rng& r) {
    while (static_cast<int>(g.adj.size()) < target) {
        int n = static_cast<int>(g.adj.size());
        int v = n;
        g.adj.emplace_back();
        if (r.next_bool(cfg.dup_prob)) {
            // Duplicate: copy a random node's edges, each surviving
            // independently, then maybe wire parent to child.
            int u = static_cast<int>(r.next_below(n));
            // Snapshot: the copy must not see edges added below.
            std::vector<int> parents = g.adj[u];
            for (int x : parents)
                if (r.next_bool(cfg.edge_keep_prob)) g.add_edge(v, x);
            if (r.next_bool(cfg.complement_prob)) g.add_edge(u, v);
            if (g.adj[v].empty()) g.add_edge(u, v);  // no orphan copies
        } else {
            // Attach to both endpoints of a random wedge: u, one of its
            // neighbors, and the new node always close a triangle.
            int u = static_cast<int>(r.next_below(n));
            int x = g.adj[u][r.next_below(g.adj[u].size())];
            g.add_edge(v, u);
            g.add_edge(v, x);
        }
    }
}

graph finalize(const grown_graph& g, const std::string& prefix) {
    int n = static_cast<int>(g.adj.size());
    std::vector<std::string> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = prefix + std::to_string(v);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_keys.size());
    for (int v = 0; v < n; ++v)
        for (int u : g.adj[v])
            if (v < u) edges.emplace_back(v, u);
    return graph(std::move(labels), edges);
}

}  // namespace

benchmark_pair generate(const gen_config& cfg) {
    if (cfg.ancestor_size < 3)
        throw validation_error("generate: ancestor_size must be at least 3");
    if (cfg.size_a < cfg.ancestor_size || cfg.size_b < cfg.ancestor_size)
        throw validation_error("generate: copies cannot be smaller than the ancestor");
    for (double p : {cfg.dup_prob, cfg.edge_keep_prob, cfg.complement_prob})
        if (!(p >= 0.0 && p <= 1.0))
            throw validation_error("generate: probabilities must lie in [0, 1]");
    if (!(cfg.noise_pairs_per_node >= 0.0))
        throw validation_error("generate: noise_pairs_per_node must be nonnegative");

    rng root(cfg.seed);
    rng r_ancestor = root.split(0);
    rng r_a = root.split(1);
    rng r_b = root.split(2);
    rng r_sim = root.split(3);

    grown_graph ancestor = seed_triangle();
    grow_to(ancestor, cfg.ancestor_size, cfg, r_ancestor);

    grown_graph ga = ancestor;
    grown_graph gb = ancestor;
    grow_to(ga, cfg.size_a, cfg, r_a);
    grow_to(gb, cfg.size_b, cfg, r_b);

    benchmark_pair out;
    out.a = finalize(ga, "a");
    out.b = finalize(gb, "b");

    for (int v = 0; v < cfg.ancestor_size; ++v) out.truth.emplace_back(v, v);

    // Reference pairs first, then uniformly random distractors.
    std::vector<sim_entry> entries;
    std::unordered_set<std::uint64_t> used;
    for (auto [a, b] : out.truth) {
        entries.push_back({a, b, 1.0 + 0.5 * r_sim.next_double()});
        used.insert((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
    }
    auto noise_total = static_cast<std::int64_t>(
        std::llround(cfg.noise_pairs_per_node * cfg.size_a));
    for (std::int64_t i = 0; i < noise_total; ++i) {
        int a = static_cast<int>(r_sim.next_below(cfg.size_a));
        int b = static_cast<int>(r_sim.next_below(cfg.size_b));
        double w = r_sim.next_double();
        std::uint64_t k = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
        if (w <= 0.0 || !used.insert(k).second) continue;  // keep first draw per pair
        entries.push_back({a, b, w});
    }
    out.sim = similarity_matrix(cfg.size_a, cfg.size_b, std::move(entries));
    return out;
}

pair_summary summarize(const benchmark_pair& p) {
    pair_summary s;
    s.a = {p.a.node_count(), p.a.edge_count(), enumerate_triangles(p.a).size()};
    s.b = {p.b.node_count(), p.b.edge_count(), enumerate_triangles(p.b).size()};
    s.sim_entries = p.sim.nnz();
    s.truth_pairs = p.truth.size();
    return s;
}

void write_truth(const benchmark_pair& p, std::ostream& out) {
    for (auto [a, b] : p.truth)
        out << p.a.label(a) << '\t' << p.b.label(b) << '\n';
}

void write_benchmark(const benchmark_pair& p, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw validation_error("cannot create directory: " + dir);

    auto open = [&](const char* name) {
        std::ofstream f(fs::path(dir) / name, std::ios::binary);
        if (!f) throw validation_error(std::string("cannot write ") + name + " in " + dir);
        return f;
    };
    {
        auto f = open("graph_a.tsv");
        write_edge_list(p.a, f);
    }
    {
        auto f = open("graph_b.tsv");
        write_edge_list(p.b, f);
    }
    {
        auto f = open("sim.tsv");
        write_similarity(p.sim, p.a, p.b, f);
    }
    {
        auto f = open("truth.tsv");
        write_truth(p, f);
    }
}

}  // namespace trialign
