#pragma once

#include "trialign/graph.hpp"
#include "trialign/score_matrix.hpp"

namespace trialign {

// Implicit tensor-times-vector-squared product for the triangle alignment
// tensor. Given the current iterate X, returns Y with
//
//   Y(i, i') = 2 * sum over (j, k) opposite i in ta, (j', k') opposite i'
//              in tb, of X(j, j') X(k, k') + X(j, k') X(k, j').
//
// This equals the contraction of the (never materialized) Kronecker product
// of the two triangle tensors with vec(X) twice. Cost is proportional to the
// product of the triangle counts, not to any tensor dimension.
//
// threads > 1 splits the nonzero rows across worker threads. Every entry is
// still accumulated by one thread in one fixed order, so the result is
// bitwise identical for any thread count.
score_matrix imp_ttv(const triangle_set& ta, const triangle_set& tb,
                     const score_matrix& x, int threads = 1);

// <vec(X), vec(imp_ttv(X))>: the cubic form of the product tensor at vec(X).
// On the 0/1 indicator of a matching this is exactly six times the number of
// conserved triangles.
double contract_cubic(const triangle_set& ta, const triangle_set& tb,
                      const score_matrix& x, int threads = 1);

// Reference implementation that walks all 36 ordered copies of every
// triangle pair, the way an explicit tensor kernel would. Used only to
// validate imp_ttv; refuses instances with more than max_pairs triangle
// pairs so a careless call cannot run for hours.
score_matrix explicit_ttv_oracle(const triangle_set& ta, const triangle_set& tb,
                                 const score_matrix& x,
                                 std::uint64_t max_pairs = 1000000);

}  // namespace trialign
