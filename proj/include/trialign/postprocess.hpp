#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trialign/graph.hpp"
#include "trialign/matching.hpp"
#include "trialign/score_matrix.hpp"
#include "trialign/similarity.hpp"

namespace trialign {

// Pool of plausible pairs that swaps may draw partners from: the union of a
// generous b-matching on the iterate (topological evidence) and a tighter
// one on the similarity prior (sequence evidence).
struct candidate_set {
    std::vector<std::pair<int, int>> pairs;  // sorted, unique
    std::vector<std::vector<int>> by_a;      // per first-graph node: sorted partners
    std::vector<std::vector<int>> by_b;      // per second-graph node: sorted partners
};

candidate_set build_candidates(const score_matrix& x, const similarity_matrix& w,
                               int b_topo, int b_seq);

// Topological similarity of a matching, kept in two parts. `conserved` is
// the exact triangle count; `weighted` adds, per conserved triangle anchored
// at its smallest first-graph node, the better of the two ways to pair the
// remaining endpoints by prior weight. Keeping the integer apart from the
// float is what lets the swap rule test "same topology" exactly.
struct topo_value {
    std::int64_t conserved = 0;
    double weighted = 0.0;
    double scalar() const { return static_cast<double>(conserved) + weighted; }
};

topo_value topo_similarity(const matching& m, const triangle_set& ta,
                           const triangle_set& tb, const similarity_matrix& w);

// Sum of prior weights over the matched pairs.
double seq_similarity(const matching& m, const similarity_matrix& w);

struct refine_config {
    int rounds = 3;
    int b_topo = 200;
    int b_seq = 50;
};

// Optional audit trail: after every accepted swap the incremental totals are
// compared against a from-scratch recomputation. Costly; meant for tests.
struct refine_step {
    topo_value topo;       // running totals after the swap
    double seq;
    double topo_rescored;  // full recomputation, same moment
    double seq_rescored;
};

struct refine_audit {
    topo_value initial_topo;
    double initial_seq = 0.0;
    std::vector<refine_step> steps;
};

// Local-search cleanup of a rounded matching. Each round visits the matched
// pairs by descending iterate mass and tries, per pair, swaps against
// preferred partners (candidate pairs plus the neighborhoods of the current
// images). The first swap that strictly raises topological similarity, or
// ties it exactly and strictly raises sequence similarity, is applied in
// place; a displaced pair keeps its slot in the visiting order under its
// new partner. Deltas are evaluated incrementally from the triangles around
// the touched nodes only.
matching refine(const matching& m0, const score_matrix& x, const similarity_matrix& w,
                const graph& ga, const graph& gb, const triangle_set& ta,
                const triangle_set& tb, const refine_config& cfg,
                refine_audit* audit = nullptr);

}  // namespace trialign
