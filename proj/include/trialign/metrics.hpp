#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trialign/graph.hpp"
#include "trialign/matching.hpp"

namespace trialign {

// Reference node correspondence for benchmark pairs: one-to-one, nonempty.
class ground_truth {
  public:
    explicit ground_truth(std::vector<std::pair<int, int>> pairs);

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }

    // -1 when the first-graph node has no reference partner.
    int partner_of_a(int a) const;

  private:
    std::vector<std::pair<int, int>> pairs_;  // sorted by first index
};

// Reads "labelA<TAB>labelB" lines ('#' comments allowed). Labels must
// resolve; the mapping must be one-to-one and nonempty.
ground_truth read_truth(std::istream& in, const graph& ga, const graph& gb);
ground_truth read_truth_file(const std::string& path, const graph& ga, const graph& gb);

struct node_correctness_result {
    double precision = 0.0;  // correct pairs / predicted pairs
    double recall = 0.0;     // correct pairs / reference pairs
    double f_score = 0.0;
    bool degenerate = false;  // empty prediction: all three forced to zero
};

node_correctness_result node_correctness(const matching& m, const ground_truth& truth);

// Fraction of all nodes (both sides pooled) covered by the matching.
double node_coverage(const matching& m);

// Conserved/gapped structure counts and their ratio. Used for both edges
// (gs3) and triangles (tgs3): a structure counts only when every endpoint
// is matched; it is conserved when its image is a structure of the other
// graph, gapped when present on exactly one side.
struct conservation_result {
    std::int64_t conserved = 0;
    std::int64_t gapped = 0;
    double value = 0.0;
    bool degenerate = false;  // nothing fully matched on either side
};

conservation_result gs3(const matching& m, const graph& ga, const graph& gb);
conservation_result tgs3(const matching& m, const triangle_set& ta, const triangle_set& tb);

struct metric_report {
    bool has_node_correctness = false;
    node_correctness_result nc;
    double ncv = 0.0;
    conservation_result edges;
    conservation_result triangles;
    double ncv_gs3 = 0.0;   // geometric mean of coverage and edge conservation
    double ncv_tgs3 = 0.0;  // geometric mean of coverage and triangle conservation
};

metric_report evaluate_alignment(const matching& m, const graph& ga, const graph& gb,
                                 const triangle_set& ta, const triangle_set& tb,
                                 const ground_truth* truth = nullptr);

// Stable "key<TAB>value" lines. Node-correctness keys appear only when the
// report carries them.
void write_metric_report(const metric_report& r, std::ostream& out);

}  // namespace trialign
