#include "trialign/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace trialign {

matching::matching(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw validation_error("matching: negative dimension");
    a_to_b_.assign(rows, -1);
    b_to_a_.assign(cols, -1);
    weight_.assign(rows, 0.0);
}

void matching::set_weight_of_a(int a, double w) {
    if (a_to_b_[a] < 0) throw validation_error("matching: node is unmatched");
    weight_[a] = w;
}

void matching::add(int a, int b, double weight) {
    if (a < 0 || a >= rows_ || b < 0 || b >= cols_)
        throw validation_error("matching: pair out of range");
    if (a_to_b_[a] >= 0 || b_to_a_[b] >= 0)
        throw validation_error("matching: endpoint already matched");
    a_to_b_[a] = b;
    b_to_a_[b] = a;
    weight_[a] = weight;
    ++size_;
}

void matching::remove_a(int a) {
    int b = a_to_b_[a];
    if (b < 0) throw validation_error("matching: node is unmatched");
    a_to_b_[a] = -1;
    b_to_a_[b] = -1;
    weight_[a] = 0.0;
    --size_;
}

double matching::total_weight() const {
    double s = 0.0;
    for (int a = 0; a < rows_; ++a)
        if (a_to_b_[a] >= 0) s += weight_[a];
    return s;
}

std::vector<matched_pair> matching::pairs() const {
    std::vector<matched_pair> out;
    out.reserve(size_);
    for (int a = 0; a < rows_; ++a)
        if (a_to_b_[a] >= 0) out.push_back({a, a_to_b_[a], weight_[a]});
    return out;
}

namespace {

// Shortest-augmenting-path assignment on an n x n cost matrix (minimize).
// Returns the column assigned to each row plus the optimal dual potentials,
// which certify which edges may appear in any optimal assignment.
struct assignment_result {
    std::vector<int> row_to_col;
    std::vector<double> u, v;
};

assignment_result solve_assignment(const std::vector<double>& cost, int n) {
    const double inf = std::numeric_limits<double>::infinity();
    // 1-based with column 0 as the virtual start of each augmentation.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    assignment_result res;
    res.row_to_col.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) res.row_to_col[p[j] - 1] = j - 1;
    res.u.assign(n, 0.0);
    res.v.assign(n, 0.0);
    for (int i = 1; i <= n; ++i) res.u[i - 1] = u[i];
    for (int j = 1; j <= n; ++j) res.v[j - 1] = v[j];
    return res;
}

// Any optimal assignment uses only edges whose reduced cost is zero, so the
// set of optima is exactly the set of perfect matchings of the tight graph.
// Walking rows in order and committing the smallest tight column that still
// allows a perfect completion yields the lexicographically smallest optimum.
// Columns carrying positive weight are tried ascending before any
// zero-weight or padding column, because a matched pair erased from the
// output (weight zero) must not shadow a reportable one.
struct lex_canonicalizer {
    int n;
    const std::vector<std::vector<int>>& tight;  // per row, ascending cols
    std::vector<int>& row_to_col;
    std::vector<int> col_to_row;
    std::vector<int> visited;  // per-column stamp
    int stamp = 0;
    long long budget;

    lex_canonicalizer(int n_, const std::vector<std::vector<int>>& tight_,
                      std::vector<int>& rtc, long long budget_)
        : n(n_), tight(tight_), row_to_col(rtc), visited(n_, -1), budget(budget_) {
        col_to_row.assign(n, -1);
        for (int i = 0; i < n; ++i) col_to_row[row_to_col[i]] = i;
    }

    bool augment(int row, const std::vector<char>& fixed_col) {
        if (--budget < 0) return false;
        for (int c : tight[row]) {
            if (fixed_col[c] || visited[c] == stamp) continue;
            visited[c] = stamp;
            if (col_to_row[c] < 0 || augment(col_to_row[c], fixed_col)) {
                col_to_row[c] = row;
                row_to_col[row] = c;
                return true;
            }
        }
        return false;
    }

    // Try to re-route so that `row` takes column `col`. Returns false and
    // restores the matching when impossible.
    bool force(int row, int col, const std::vector<char>& fixed_col) {
        int old_col = row_to_col[row];
        if (old_col == col) return true;
        int displaced = col_to_row[col];
        std::vector<int> saved_rtc = row_to_col;
        std::vector<int> saved_ctr = col_to_row;
        row_to_col[row] = col;
        col_to_row[col] = row;
        col_to_row[old_col] = -1;
        bool ok = true;
        if (displaced >= 0) {
            ++stamp;
            visited[col] = stamp;  // taken
            ok = augment(displaced, fixed_col);
        }
        if (!ok) {
            row_to_col = saved_rtc;
            col_to_row = saved_ctr;
        }
        return ok;
    }
};

matching dense_max_weight(const score_matrix& x) {
    const int nr = x.rows(), nc = x.cols();
    const int n = std::max(nr, nc);
    matching out(nr, nc);
    if (n == 0) return out;

    double wmax = 0.0;
    std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nc; ++j) {
            double w = x(i, j);
            if (!std::isfinite(w))
                throw numeric_error("max_weight_matching: non-finite score");
            if (w < 0.0) w = 0.0;  // negatives can never help a max matching
            cost[static_cast<std::size_t>(i) * n + j] = -w;
            wmax = std::max(wmax, w);
        }
    }

    assignment_result res = solve_assignment(cost, n);

    const double tol = 1e-9 * (1.0 + wmax);
    std::vector<std::vector<int>> tight(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cost[static_cast<std::size_t>(i) * n + j] - res.u[i] - res.v[j] <= tol)
                tight[i].push_back(j);

    // Canonical pass. The work budget keeps adversarially degenerate inputs
    // (everything tied) from going quadratic-in-paths; when it runs out the
    // solver's own deterministic optimum stands for the remaining rows.
    lex_canonicalizer canon(n, tight, res.row_to_col,
                            4LL * n * std::max(64, n));
    std::vector<char> fixed_col(n, 0);
    for (int i = 0; i < nr; ++i) {
        int committed = -1;
        int current = canon.row_to_col[i];
        for (int c : tight[i]) {
            if (c >= nc || fixed_col[c]) continue;
            if (x(i, c) <= 0.0) continue;
            if (c > current && (current < nc && x(i, current) > 0.0)) break;
            if (canon.force(i, c, fixed_col)) {
                committed = c;
                break;
            }
        }
        if (committed < 0) committed = canon.row_to_col[i];
        fixed_col[committed] = 1;
        if (committed < nc && x(i, committed) > 0.0)
            out.add(i, committed, x(i, committed));
    }
    return out;
}

}  // namespace

matching max_weight_matching(const score_matrix& x) { return dense_max_weight(x); }

matching max_weight_matching(const similarity_matrix& w) {
    return dense_max_weight(w.to_dense());
}

std::int64_t score_triangles(const matching& m, const triangle_set& ta,
                             const triangle_set& tb) {
    std::int64_t count = 0;
    if (ta.size() <= tb.size()) {
        for (const auto& tri : ta.triangles()) {
            int a = m.partner_of_a(tri[0]);
            int b = m.partner_of_a(tri[1]);
            int c = m.partner_of_a(tri[2]);
            if (a >= 0 && b >= 0 && c >= 0 && tb.contains(a, b, c)) ++count;
        }
    } else {
        for (const auto& tri : tb.triangles()) {
            int a = m.partner_of_b(tri[0]);
            int b = m.partner_of_b(tri[1]);
            int c = m.partner_of_b(tri[2]);
            if (a >= 0 && b >= 0 && c >= 0 && ta.contains(a, b, c)) ++count;
        }
    }
    return count;
}

b_matching greedy_b_matching(std::vector<weighted_edge> edges, int rows, int cols, int b) {
    if (b < 1) throw validation_error("greedy_b_matching: b must be positive");
    for (const auto& e : edges) {
        if (e.a < 0 || e.a >= rows || e.b < 0 || e.b >= cols)
            throw validation_error("greedy_b_matching: edge out of range");
        if (!std::isfinite(e.weight))
            throw numeric_error("greedy_b_matching: non-finite weight");
    }
    std::sort(edges.begin(), edges.end(), [](const weighted_edge& x, const weighted_edge& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    b_matching out;
    out.b = b;
    std::vector<int> deg_a(rows, 0), deg_b(cols, 0);
    for (const auto& e : edges) {
        if (e.weight <= 0.0) break;  // sorted: nothing positive remains
        if (deg_a[e.a] >= b || deg_b[e.b] >= b) continue;
        ++deg_a[e.a];
        ++deg_b[e.b];
        out.edges.push_back(e);
        out.total_weight += e.weight;
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const weighted_edge& x, const weighted_edge& y) {
                  if (x.a != y.a) return x.a < y.a;
                  return x.b < y.b;
              });
    return out;
}

b_matching greedy_b_matching(const score_matrix& x, int b) {
    std::vector<weighted_edge> edges;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if (x(i, j) > 0.0) edges.push_back({i, j, x(i, j)});
    return greedy_b_matching(std::move(edges), x.rows(), x.cols(), b);
}

b_matching greedy_b_matching(const similarity_matrix& w, int b) {
    std::vector<weighted_edge> edges;
    for (const auto& e : w.entries())
        if (e.weight > 0.0) edges.push_back({e.a, e.b, e.weight});
    return greedy_b_matching(std::move(edges), w.rows(), w.cols(), b);
}

void write_matching(const matching& m, const graph& ga, const graph& gb,
                    std::ostream& out) {
    char buf[32];
    for (const auto& p : m.pairs()) {
        std::snprintf(buf, sizeof buf, "%.17g", p.weight);
        out << ga.label(p.a) << '\t' << gb.label(p.b) << '\t' << buf << '\n';
    }
}

matching read_matching(std::istream& in, const graph& ga, const graph& gb) {
    matching m(ga.node_count(), gb.node_count());
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        std::string body = line.substr(0, line.find('#'));
        std::istringstream ss(body);
        std::string la, lb, wtext;
        if (!(ss >> la)) continue;
        if (!(ss >> lb))
            throw parse_error("matching line " + std::to_string(lineno) +
                              ": expected at least two labels");
        double w = 0.0;
        if (ss >> wtext) {
            char* end = nullptr;
            w = std::strtod(wtext.c_str(), &end);
            if (end != wtext.c_str() + wtext.size() || !std::isfinite(w))
                throw parse_error("matching line " + std::to_string(lineno) +
                                  ": bad weight '" + wtext + "'");
            std::string extra;
            if (ss >> extra)
                throw parse_error("matching line " + std::to_string(lineno) +
                                  ": trailing tokens");
        }
        int a = ga.index_of(la);
        if (a < 0)
            throw validation_error("matching line " + std::to_string(lineno) +
                                   ": unknown label '" + la + "' in first graph");
        int b = gb.index_of(lb);
        if (b < 0)
            throw validation_error("matching line " + std::to_string(lineno) +
                                   ": unknown label '" + lb + "' in second graph");
        if (m.matched_a(a) || m.matched_b(b))
            throw validation_error("matching line " + std::to_string(lineno) +
                                   ": node matched twice");
        m.add(a, b, w);
    }
    return m;
}

matching read_matching_file(const std::string& path, const graph& ga, const graph& gb) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open matching file: " + path);
    return read_matching(in, ga, gb);
}

}  // namespace trialign
