#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "trialign/errors.hpp"

namespace trialign {

// Simple undirected graph with string node labels. Node indices are dense,
// assigned in first-appearance order when parsed. Self loops are not
// representable; parallel edges collapse to one. Degree-zero nodes are legal
// (they simply never take part in a triangle) but cannot round-trip through
// the edge-list text format, which has no way to mention a lone node.
class graph {
  public:
    graph() = default;

    // labels.size() fixes the node count; edges hold index pairs.
    // Throws validation_error on out-of-range indices, self loops or
    // duplicate edges: cleaning messy input is the parser's job.
    graph(std::vector<std::string> labels,
          const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return static_cast<int>(labels_.size()); }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Returns -1 when the label is unknown.
    int index_of(const std::string& label) const;

    // Sorted neighbor list.
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v) const;

    // Canonical edge list: (u, v) with u < v, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
    std::unordered_map<std::string, int> index_;
};

struct parse_stats {
    std::int64_t duplicate_edges = 0;
    std::int64_t self_loops = 0;
};

struct parsed_graph {
    graph g;
    parse_stats stats;
};

// Reads an edge list: one edge per line as two whitespace-separated labels,
// '#' starts a comment, blank lines ignored. Duplicate edges and self loops
// are dropped and counted. A line with any other token count is an error,
// as is input that leaves no edges at all.
parsed_graph parse_graph(std::istream& in);
parsed_graph parse_graph_text(const std::string& text);
parsed_graph parse_graph_file(const std::string& path);

// Writes the canonical edge list, one "labelA labelB" line per edge.
void write_edge_list(const graph& g, std::ostream& out);

// All triangles of a graph plus, for every node, the list of opposite edges
// of the triangles through it. For triangle (i, j, k) the node i sees the
// pair (j, k), and symmetrically. Both the triangle list and each incidence
// list are sorted, so the representation is canonical no matter how the
// enumeration visited the graph.
class triangle_set {
  public:
    triangle_set() : node_count_(0) {}

    static triangle_set from_triangles(int node_count,
                                       std::vector<std::array<int, 3>> triangles);

    int node_count() const { return node_count_; }
    std::int64_t size() const { return static_cast<std::int64_t>(triangles_.size()); }
    bool empty() const { return triangles_.empty(); }

    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }

    // Opposite-edge pairs (j, k), j < k, for triangles through v.
    const std::vector<std::pair<int, int>>& incidence(int v) const {
        return incidence_[v];
    }

    // Membership test for an arbitrary (unsorted) triple.
    bool contains(int a, int b, int c) const;

  private:
    static std::uint64_t key(int a, int b, int c);

    int node_count_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<std::vector<std::pair<int, int>>> incidence_;
    std::unordered_set<std::uint64_t> members_;
};

// Neighbor-intersection triangle enumeration over degree-ordered forward
// adjacency. O(sum over edges of min degree), fine for every graph this
// project touches.
triangle_set enumerate_triangles(const graph& g);

struct tensor_footprint {
    std::uint64_t full_bytes = 0;     // all 36 symmetric copies per entry
    std::uint64_t reduced_bytes = 0;  // one canonical copy per entry
};

// Memory that an explicit triangle-product tensor would need: one entry per
// triangle pair, 36 ordered copies each, three indices per copy. This is the
// "why the kernel is implicit" number; it overflows 64-bit arithmetic for
// plausible inputs, so it is computed wide and checked.
tensor_footprint product_tensor_footprint(std::uint64_t triangles_a,
                                          std::uint64_t triangles_b,
                                          std::uint64_t bytes_per_index);
tensor_footprint product_tensor_footprint(const triangle_set& ta,
                                          const triangle_set& tb,
                                          std::uint64_t bytes_per_index);

}  // namespace trialign
