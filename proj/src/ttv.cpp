#include "trialign/ttv.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace trialign {

namespace {

void check_dims(const triangle_set& ta, const triangle_set& tb, const score_matrix& x,
                const char* who) {
    if (x.rows() != ta.node_count() || x.cols() != tb.node_count())
        throw validation_error(std::string(who) + ": iterate dimensions do not match node counts");
}

// Rows of A that sit in at least one triangle, i.e. have incidence pairs.
std::vector<int> active_nodes(const triangle_set& t) {
    std::vector<int> nodes;
    for (int v = 0; v < t.node_count(); ++v)
        if (!t.incidence(v).empty()) nodes.push_back(v);
    return nodes;
}

void ttv_rows(const triangle_set& ta, const triangle_set& tb, const score_matrix& x,
              const std::vector<int>& rows, const std::vector<int>& cols,
              std::size_t row_begin, std::size_t row_end, score_matrix& y) {
    for (std::size_t r = row_begin; r < row_end; ++r) {
        int i = rows[r];
        const auto& inc_a = ta.incidence(i);
        for (int ip : cols) {
            const auto& inc_b = tb.incidence(ip);
            double acc = 0.0;
            for (auto [j, k] : inc_a) {
                for (auto [jp, kp] : inc_b) {
                    acc += x(j, jp) * x(k, kp) + x(j, kp) * x(k, jp);
                }
            }
            y(i, ip) = 2.0 * acc;
        }
    }
}

}  // namespace

score_matrix imp_ttv(const triangle_set& ta, const triangle_set& tb,
                     const score_matrix& x, int threads) {
    check_dims(ta, tb, x, "imp_ttv");
    if (threads < 1) throw validation_error("imp_ttv: threads must be positive");

    score_matrix y(x.rows(), x.cols());
    std::vector<int> rows = active_nodes(ta);
    std::vector<int> cols = active_nodes(tb);
    if (rows.empty() || cols.empty()) return y;

    std::size_t n = rows.size();
    std::size_t workers = std::min<std::size_t>(threads, n);
    if (workers <= 1) {
        ttv_rows(ta, tb, x, rows, cols, 0, n, y);
        return y;
    }

    // Whole rows per worker: each Y entry is owned by exactly one thread and
    // summed in a fixed order, so the split cannot change the result.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] { ttv_rows(ta, tb, x, rows, cols, begin, end, y); });
    }
    for (auto& t : pool) t.join();
    return y;
}

double contract_cubic(const triangle_set& ta, const triangle_set& tb,
                      const score_matrix& x, int threads) {
    score_matrix y = imp_ttv(ta, tb, x, threads);
    const auto& xv = x.vec();
    const auto& yv = y.vec();
    double acc = 0.0;
    for (std::size_t i = 0; i < xv.size(); ++i) acc += xv[i] * yv[i];
    return acc;
}

score_matrix explicit_ttv_oracle(const triangle_set& ta, const triangle_set& tb,
                                 const score_matrix& x, std::uint64_t max_pairs) {
    check_dims(ta, tb, x, "explicit_ttv_oracle");
    std::uint64_t pairs = static_cast<std::uint64_t>(ta.size()) * static_cast<std::uint64_t>(tb.size());
    if (pairs > max_pairs)
        throw validation_error("explicit_ttv_oracle: instance too large for the reference path");

    score_matrix y(x.rows(), x.cols());
    for (const auto& tri_a : ta.triangles()) {
        // All six ordered copies of the canonical triple.
        const int perms_a[6][3] = {
            {tri_a[0], tri_a[1], tri_a[2]}, {tri_a[0], tri_a[2], tri_a[1]},
            {tri_a[1], tri_a[0], tri_a[2]}, {tri_a[1], tri_a[2], tri_a[0]},
            {tri_a[2], tri_a[0], tri_a[1]}, {tri_a[2], tri_a[1], tri_a[0]}};
        for (const auto& tri_b : tb.triangles()) {
            const int perms_b[6][3] = {
                {tri_b[0], tri_b[1], tri_b[2]}, {tri_b[0], tri_b[2], tri_b[1]},
                {tri_b[1], tri_b[0], tri_b[2]}, {tri_b[1], tri_b[2], tri_b[0]},
                {tri_b[2], tri_b[0], tri_b[1]}, {tri_b[2], tri_b[1], tri_b[0]}};
            for (const auto& pa : perms_a)
                for (const auto& pb : perms_b)
                    y(pa[0], pb[0]) += x(pa[1], pb[1]) * x(pa[2], pb[2]);
        }
    }
    return y;
}

}  // namespace trialign
