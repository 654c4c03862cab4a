#include "trialign/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "trialign/ttv.hpp"

namespace trialign {

namespace {

void validate(const triangle_set& ta, const triangle_set& tb,
              const similarity_matrix& w, const solver_config& cfg) {
    if (w.rows() != ta.node_count() || w.cols() != tb.node_count())
        throw validation_error("tame: prior dimensions do not match node counts");
    if (!(cfg.beta >= 0.0) || !std::isfinite(cfg.beta))
        throw validation_error("tame: beta must be finite and nonnegative");
    if (cfg.max_iters < 1) throw validation_error("tame: max_iters must be positive");
    if (!(cfg.lambda_tol >= 0.0))
        throw validation_error("tame: lambda_tol must be nonnegative");
    if (cfg.threads < 1) throw validation_error("tame: threads must be positive");
}

}  // namespace

matching round_iterate(const score_matrix& x, matcher_kind kind) {
    if (kind == matcher_kind::hungarian) return max_weight_matching(x);
    // Greedy 1-matching: same edge set, half-optimal guarantee, much cheaper.
    b_matching bm = greedy_b_matching(x, 1);
    matching m(x.rows(), x.cols());
    for (const auto& e : bm.edges) m.add(e.a, e.b, e.weight);
    return m;
}

solver_result tame(const triangle_set& ta, const triangle_set& tb,
                   const similarity_matrix& w, const solver_config& cfg) {
    validate(ta, tb, w, cfg);
    similarity_matrix prior = normalize_unit(w);

    score_matrix x = prior.to_dense();
    solver_result res;
    res.best = x;

    double lambda_prev = 0.0;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        auto t0 = std::chrono::steady_clock::now();

        score_matrix y = imp_ttv(ta, tb, x, cfg.threads);
        const auto& xv = x.vec();
        const auto& yv = y.vec();
        double lambda = 0.0;
        for (std::size_t i = 0; i < xv.size(); ++i) lambda += xv[i] * yv[i];
        if (!std::isfinite(lambda))
            throw numeric_error("tame: non-finite Rayleigh quotient at iteration " +
                                std::to_string(k));

        // Shift, then renormalize. Reuse y as the shifted vector.
        auto& hv = y.vec();
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < hv.size(); ++i) {
            hv[i] += cfg.beta * xv[i];
            norm_sq += hv[i] * hv[i];
        }
        double norm = std::sqrt(norm_sq);
        if (!std::isfinite(norm))
            throw numeric_error("tame: iterate overflowed at iteration " + std::to_string(k));
        if (norm == 0.0)
            throw degenerate_error(
                "tame: iterate collapsed to zero (prior support misses every "
                "triangle); a positive beta keeps the iteration alive");
        for (auto& v : hv) v /= norm;
        x = std::move(y);

        bool converged_now = k >= 2 && std::abs(lambda - lambda_prev) < cfg.lambda_tol;
        bool last = converged_now || k == cfg.max_iters;
        std::int64_t score = -1;
        if (cfg.score_every_iter || last) {
            matching m = round_iterate(x, cfg.matcher);
            score = score_triangles(m, ta, tb);
        }

        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.trace.iterations.push_back({k, lambda, score, seconds});

        if (score > res.trace.best_score) {
            res.trace.best_score = score;
            res.trace.best_iteration = k;
            res.best = x;
        }

        if (converged_now) {
            res.trace.converged = true;
            break;
        }
        lambda_prev = lambda;
    }
    return res;
}

solver_result ctame(const graph& ga, const graph& gb, const similarity_matrix& w,
                    const solver_config& cfg) {
    if (w.rows() != ga.node_count() || w.cols() != gb.node_count())
        throw validation_error("ctame: prior dimensions do not match node counts");
    indicator_pair ind = indicators(w);
    triangle_set ta = constrain_triangles(enumerate_triangles(ga), ind.rows);
    triangle_set tb = constrain_triangles(enumerate_triangles(gb), ind.cols);
    if (ta.empty() && tb.empty())
        throw degenerate_error("ctame: no triangles survive the similarity constraint");
    return tame(ta, tb, w, cfg);
}

const std::vector<double>& beta_grid() {
    static const std::vector<double> grid = {0.0, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    return grid;
}

void write_trace(const solver_trace& t, std::ostream& out) {
    out << "# k\tlambda\tscore\tseconds\n";
    char lam[32], sec[32];
    for (const auto& it : t.iterations) {
        std::snprintf(lam, sizeof lam, "%.17g", it.lambda);
        std::snprintf(sec, sizeof sec, "%.6f", it.seconds);
        out << it.k << '\t' << lam << '\t' << it.score << '\t' << sec << '\n';
    }
}

}  // namespace trialign
