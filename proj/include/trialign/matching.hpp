#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "trialign/graph.hpp"
#include "trialign/score_matrix.hpp"
#include "trialign/similarity.hpp"

namespace trialign {

struct matched_pair {
    int a;
    int b;
    double weight;
};

// One-to-one partial matching between the node sets of two graphs, with a
// score weight per pair (usually the iterate entry the pair was rounded
// from). Mutable: the post-processing stage swaps pairs in place.
class matching {
  public:
    matching() : rows_(0), cols_(0) {}
    matching(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return size_; }

    int partner_of_a(int a) const { return a_to_b_[a]; }
    int partner_of_b(int b) const { return b_to_a_[b]; }
    bool matched_a(int a) const { return a_to_b_[a] >= 0; }
    bool matched_b(int b) const { return b_to_a_[b] >= 0; }

    double weight_of_a(int a) const { return weight_[a]; }
    void set_weight_of_a(int a, double w);

    // Both endpoints must be free.
    void add(int a, int b, double weight);
    void remove_a(int a);

    double total_weight() const;

    // Pairs sorted by first-graph index.
    std::vector<matched_pair> pairs() const;

  private:
    int rows_, cols_;
    int size_ = 0;
    std::vector<int> a_to_b_;
    std::vector<int> b_to_a_;
    std::vector<double> weight_;
};

// Maximum-weight bipartite matching of a dense score matrix, Hungarian
// (shortest augmenting path) under the hood. Negative entries are treated
// as zero, and zero-weight pairs never make it into the result, so the
// matching can leave nodes of either side unmatched. Among equally heavy
// optima the lexicographically smallest pair set is returned, which pins
// the output down on degenerate inputs.
matching max_weight_matching(const score_matrix& x);
matching max_weight_matching(const similarity_matrix& w);

// Number of triangles of one side whose matched image is a triangle of the
// other. This is the integer objective the whole pipeline chases.
std::int64_t score_triangles(const matching& m, const triangle_set& ta,
                             const triangle_set& tb);

struct weighted_edge {
    int a;
    int b;
    double weight;
};

// Result of the greedy degree-constrained matching: every node keeps at
// most b incident edges.
struct b_matching {
    int b = 0;
    std::vector<weighted_edge> edges;  // sorted by (a, b)
    double total_weight = 0.0;
};

// Global greedy: scan edges by descending weight (ties by index), keep an
// edge when both endpoints still have capacity. Guaranteed at least half
// the optimal weight; used to harvest candidate pairs, where recall matters
// more than exactness. Only strictly positive weights participate.
b_matching greedy_b_matching(std::vector<weighted_edge> edges, int rows, int cols, int b);
b_matching greedy_b_matching(const score_matrix& x, int b);
b_matching greedy_b_matching(const similarity_matrix& w, int b);

// "labelA<TAB>labelB<TAB>weight" lines, sorted by first-graph index.
void write_matching(const matching& m, const graph& ga, const graph& gb,
                    std::ostream& out);

// Accepts two- or three-column lines; missing weights read as 0. Labels
// must resolve and the pairing must be one-to-one.
matching read_matching(std::istream& in, const graph& ga, const graph& gb);
matching read_matching_file(const std::string& path, const graph& ga, const graph& gb);

}  // namespace trialign
