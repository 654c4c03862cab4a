#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "trialign/graph.hpp"
#include "trialign/score_matrix.hpp"

namespace trialign {

struct sim_entry {
    int a;  // node of the first graph
    int b;  // node of the second graph
    double weight;
};

// Sparse nonnegative prior over node pairs, e.g. sequence similarity.
// Entries are stored canonically sorted by (a, b); zero weights are legal
// and keep their slot (the sparsity pattern is data).
class similarity_matrix {
  public:
    similarity_matrix() : rows_(0), cols_(0) {}
    similarity_matrix(int rows, int cols, std::vector<sim_entry> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<sim_entry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    // Weight at (a, b); absent pairs read as 0.
    double at(int a, int b) const;

    double norm() const;  // Euclidean norm of the weight vector

    score_matrix to_dense() const;

  private:
    friend similarity_matrix normalize_unit(const similarity_matrix&);

    int rows_, cols_;
    std::vector<sim_entry> entries_;
    std::unordered_map<std::uint64_t, double> lookup_;
};

// Reads "labelA<TAB>labelB<TAB>weight" lines ('#' comments allowed; any
// whitespace separates fields). Labels must exist in the respective graphs;
// weights must be finite and nonnegative. Repeated pairs collapse to the
// maximum weight.
similarity_matrix parse_similarity(std::istream& in, const graph& ga, const graph& gb);
similarity_matrix parse_similarity_text(const std::string& text, const graph& ga,
                                        const graph& gb);
similarity_matrix parse_similarity_file(const std::string& path, const graph& ga,
                                        const graph& gb);

void write_similarity(const similarity_matrix& w, const graph& ga, const graph& gb,
                      std::ostream& out);

// Scales all weights so the entry vector has Euclidean norm 1. The solver
// starts from this; an all-zero prior leaves it nothing to iterate on.
similarity_matrix normalize_unit(const similarity_matrix& w);

struct indicator_pair {
    std::vector<std::uint8_t> rows;  // 1 where the row has a positive entry
    std::vector<std::uint8_t> cols;
};

// Marks the rows and columns that carry at least one strictly positive
// weight. Explicit zeros do not count.
indicator_pair indicators(const similarity_matrix& w);

// Keeps only the triangles whose three corners are all flagged. This is how
// the constrained solver shrinks the motif sets to the similarity support.
triangle_set constrain_triangles(const triangle_set& t,
                                 const std::vector<std::uint8_t>& keep);

}  // namespace trialign
