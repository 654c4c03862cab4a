#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "trialign/graph.hpp"
#include "trialign/matching.hpp"
#include "trialign/score_matrix.hpp"
#include "trialign/similarity.hpp"

namespace trialign {

enum class matcher_kind {
    hungarian,  // exact rounding every time it scores an iterate
    greedy,     // cheap 1-matching fallback for large instances
};

struct solver_config {
    double beta = 1.0;          // shift toward the previous iterate
    int max_iters = 30;
    double lambda_tol = 1e-6;   // stop when lambda stalls by less than this
    bool score_every_iter = true;
    matcher_kind matcher = matcher_kind::hungarian;
    int threads = 1;            // kernel workers; results identical for any value
};

struct iteration_record {
    int k;
    double lambda;       // Rayleigh quotient of the previous iterate
    std::int64_t score;  // conserved triangles of this iterate, -1 when not scored
    double seconds;
};

struct solver_trace {
    std::vector<iteration_record> iterations;
    std::int64_t best_score = 0;
    int best_iteration = 0;  // 0 means no iterate beat the prior
    bool converged = false;  // lambda criterion hit before max_iters
};

struct solver_result {
    score_matrix best;  // best-scoring iterate; the normalized prior if none scored
    solver_trace trace;
};

// Shifted power iteration on the implicit triangle-product tensor:
//   x~ = imp_ttv(x_k);  lambda = <x_k, x~>;  x_{k+1} = (x~ + beta x_k) / ||.||
// Each iterate is rounded to a matching and scored by conserved triangles;
// the best iterate wins, which matters because later iterations tend to
// focus mass on one dense region and lose the global picture. With
// score_every_iter off only the final iterate is rounded and scored.
solver_result tame(const triangle_set& ta, const triangle_set& tb,
                   const similarity_matrix& w, const solver_config& cfg);

// Constrained variant: triangles with any corner outside the similarity
// support cannot receive weight, so both triangle sets are filtered to the
// support before iterating. Same prior, same iteration.
solver_result ctame(const graph& ga, const graph& gb, const similarity_matrix& w,
                    const solver_config& cfg);

// Rounds an iterate to a one-to-one matching with the chosen matcher.
matching round_iterate(const score_matrix& x, matcher_kind kind);

// The standard shift grid for sweeps: 0 and the powers of ten from 1e-3 to 1e3.
const std::vector<double>& beta_grid();

// Tab-separated "k lambda score seconds" records, '#' header line.
void write_trace(const solver_trace& t, std::ostream& out);

}  // namespace trialign
