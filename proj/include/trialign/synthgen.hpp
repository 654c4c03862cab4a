#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trialign/graph.hpp"
#include "trialign/similarity.hpp"

namespace trialign {

// Duplication-divergence benchmark: grow an ancestor network from a seed
// triangle, clone it, grow both copies independently, and remember which
// nodes descend from the common ancestor. Alignment quality can then be
// scored against that reference.
struct gen_config {
    int ancestor_size = 200;  // at least 3 (the seed triangle)
    int size_a = 300;         // at least ancestor_size
    int size_b = 400;
    // Each growth step duplicates a random node with this probability;
    // otherwise the new node attaches to a random edge's endpoints, closing
    // a triangle. Duplication keeps each parent edge with edge_keep_prob
    // and wires parent to child with complement_prob (forced when the copy
    // would otherwise be isolated).
    double dup_prob = 0.8;
    double edge_keep_prob = 0.6;
    double complement_prob = 0.8;
    // Spurious similarity entries per first-graph node, weighted in (0, 1);
    // reference pairs get weight in [1, 1.5] so signal outranks noise.
    double noise_pairs_per_node = 2.0;
    std::uint64_t seed = 0;
};

struct benchmark_pair {
    graph a;
    graph b;
    similarity_matrix sim;
    std::vector<std::pair<int, int>> truth;  // index pairs, ancestor-derived
};

// Bitwise deterministic for a given config.
benchmark_pair generate(const gen_config& cfg);

struct side_summary {
    int nodes = 0;
    std::int64_t edges = 0;
    std::int64_t triangles = 0;
};

struct pair_summary {
    side_summary a;
    side_summary b;
    std::size_t sim_entries = 0;
    std::size_t truth_pairs = 0;
};

pair_summary summarize(const benchmark_pair& p);

// "labelA<TAB>labelB" lines.
void write_truth(const benchmark_pair& p, std::ostream& out);

// Writes graph_a.tsv, graph_b.tsv, sim.tsv and truth.tsv into dir
// (created when missing).
void write_benchmark(const benchmark_pair& p, const std::string& dir);

}  // namespace trialign
