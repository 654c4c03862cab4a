#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "trialign/graph.hpp"
#include "trialign/matching.hpp"
#include "trialign/rng.hpp"
#include "trialign/score_matrix.hpp"
#include "trialign/similarity.hpp"
#include "trialign/ttv.hpp"
#include "test_util.hpp"

using namespace trialign;

namespace {

std::vector<std::pair<int, int>> pair_list(const matching& m) {
    std::vector<std::pair<int, int>> out;
    for (const auto& p : m.pairs()) out.emplace_back(p.a, p.b);
    return out;
}

score_matrix from_rows(const std::vector<std::vector<double>>& rows) {
    score_matrix x(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) x(i, j) = rows[i][j];
    return x;
}

}  // namespace

TEST_CASE("matching container enforces the one-to-one rule") {
    matching m(3, 4);
    m.add(0, 1, 0.5);
    m.add(2, 0, 1.5);
    CHECK(m.size() == 2);
    CHECK(m.partner_of_a(0) == 1);
    CHECK(m.partner_of_b(0) == 2);
    CHECK(m.partner_of_a(1) == -1);
    CHECK(m.matched_a(2));
    CHECK_FALSE(m.matched_b(2));
    CHECK(m.total_weight() == doctest::Approx(2.0));
    CHECK_THROWS_AS(m.add(0, 2, 1.0), validation_error);
    CHECK_THROWS_AS(m.add(1, 1, 1.0), validation_error);
    m.remove_a(0);
    CHECK_FALSE(m.matched_a(0));
    CHECK_FALSE(m.matched_b(1));
    m.add(1, 1, 1.0);
    CHECK(pair_list(m) == std::vector<std::pair<int, int>>{{1, 1}, {2, 0}});
}

TEST_CASE("identity matrix matches the diagonal") {
    score_matrix x(3, 3);
    for (int i = 0; i < 3; ++i) x(i, i) = 1.0;
    matching m = max_weight_matching(x);
    CHECK(pair_list(m) == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});
    CHECK(m.total_weight() == doctest::Approx(3.0));
}

TEST_CASE("anti-diagonal matrix matches the anti-diagonal") {
    matching m = max_weight_matching(from_rows({{0, 1}, {1, 0}}));
    CHECK(pair_list(m) == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
    CHECK(m.total_weight() == doctest::Approx(2.0));
}

TEST_CASE("zero and negative entries are never matched") {
    matching m = max_weight_matching(from_rows({{-5.0, 1.0}, {1.0, -5.0}}));
    CHECK(pair_list(m) == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});

    matching z = max_weight_matching(score_matrix(3, 3));
    CHECK(z.size() == 0);
}

TEST_CASE("optimal weight equals brute force on random rectangular instances") {
    rng r(61);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 1 + static_cast<int>(r.next_below(6));
        int cols = 1 + static_cast<int>(r.next_below(8));
        score_matrix x = testutil::random_scores(rows, cols, r, 0.35);
        matching m = max_weight_matching(x);
        CHECK(m.total_weight() ==
              doctest::Approx(testutil::exhaustive_matching_best(x)).epsilon(1e-9));
        // Every reported pair weight must be the matrix entry.
        for (const auto& p : m.pairs()) {
            CHECK(p.weight == x(p.a, p.b));
            CHECK(p.weight > 0.0);
        }
    }
}

TEST_CASE("ties break toward the lexicographically smallest pair set") {
    // Both diagonals weigh 2; the main diagonal sorts first.
    matching m = max_weight_matching(from_rows({{1, 1}, {1, 1}}));
    CHECK(pair_list(m) == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});

    // Optimal weight 2 via (0,0) alone or (0,1)+(1,0); the singleton wins.
    matching s = max_weight_matching(from_rows({{2, 1}, {1, 0}}));
    CHECK(pair_list(s) == std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("tie-break agrees with the exhaustive argmax on tie-heavy instances") {
    rng r(67);
    const double levels[3] = {0.0, 1.0, 2.0};
    for (int trial = 0; trial < 80; ++trial) {
        int rows = 2 + static_cast<int>(r.next_below(3));
        int cols = 2 + static_cast<int>(r.next_below(3));
        score_matrix x(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) x(i, j) = levels[r.next_below(3)];

        auto winners = testutil::exhaustive_matching_argmax(x);
        REQUIRE(!winners.empty());
        for (auto& w : winners) std::sort(w.begin(), w.end());
        auto smallest = *std::min_element(winners.begin(), winners.end());
        CHECK(pair_list(max_weight_matching(x)) == smallest);
    }
}

TEST_CASE("the similarity overload agrees with the dense one") {
    similarity_matrix w(3, 3, {{0, 1, 2.0}, {1, 0, 1.0}, {2, 2, 3.0}});
    matching ms = max_weight_matching(w);
    matching md = max_weight_matching(w.to_dense());
    CHECK(pair_list(ms) == pair_list(md));
}

TEST_CASE("non-finite scores are a numeric error") {
    score_matrix x(2, 2);
    x(0, 0) = std::nan("");
    CHECK_THROWS_AS(max_weight_matching(x), numeric_error);
}

TEST_CASE("identity matching on a shared triangle scores one, on K4 four") {
    auto k3 = parse_graph_text("a b\nb c\na c\n").g;
    triangle_set t3 = enumerate_triangles(k3);
    matching id3 = testutil::matching_from_pairs(3, 3, {{0, 0}, {1, 1}, {2, 2}});
    CHECK(score_triangles(id3, t3, t3) == 1);

    auto k4 = parse_graph_text("a b\na c\na d\nb c\nb d\nc d\n").g;
    triangle_set t4 = enumerate_triangles(k4);
    matching id4 = testutil::matching_from_pairs(4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(score_triangles(id4, t4, t4) == 4);
}

TEST_CASE("triangle scoring equals a direct recount and the cubic contraction") {
    rng r(71);
    for (int trial = 0; trial < 40; ++trial) {
        int na = 5 + static_cast<int>(r.next_below(8));
        int nb = 5 + static_cast<int>(r.next_below(8));
        graph ga = testutil::random_graph(na, 0.5, r, "g");
        graph gb = testutil::random_graph(nb, 0.5, r, "h");
        triangle_set ta = enumerate_triangles(ga);
        triangle_set tb = enumerate_triangles(gb);
        int k = static_cast<int>(r.next_below(std::min(na, nb) + 1));
        matching m = testutil::random_matching(na, nb, k, r);

        std::int64_t direct = 0;
        for (const auto& tri : ta.triangles()) {
            int i = m.partner_of_a(tri[0]);
            int j = m.partner_of_a(tri[1]);
            int l = m.partner_of_a(tri[2]);
            if (i >= 0 && j >= 0 && l >= 0 && tb.contains(i, j, l)) ++direct;
        }
        std::int64_t fast = score_triangles(m, ta, tb);
        CHECK(fast == direct);
        CHECK(fast <= std::min(ta.size(), tb.size()));

        score_matrix ind(na, nb);
        for (const auto& p : m.pairs()) ind(p.a, p.b) = 1.0;
        double c = contract_cubic(ta, tb, ind);
        CHECK(std::llround(c) == 6 * fast);
    }
}

TEST_CASE("triangle scoring is invariant under consistent relabeling") {
    rng r(73);
    graph ga = testutil::random_graph(10, 0.5, r, "g");
    graph gb = testutil::random_graph(10, 0.5, r, "h");
    triangle_set ta = enumerate_triangles(ga);
    triangle_set tb = enumerate_triangles(gb);
    matching m = testutil::random_matching(10, 10, 7, r);

    std::vector<int> perm{4, 7, 0, 9, 2, 5, 8, 1, 6, 3};
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : ga.edges()) edges.emplace_back(perm[u], perm[v]);
    graph gap(testutil::make_labels(10, "p"), edges);
    matching mp(10, 10);
    for (const auto& p : m.pairs()) mp.add(perm[p.a], p.b, p.weight);

    CHECK(score_triangles(mp, enumerate_triangles(gap), tb) == score_triangles(m, ta, tb));
}

TEST_CASE("b=1 greedy picks the perfect matching of the anti-diagonal") {
    b_matching bm = greedy_b_matching(from_rows({{0, 1}, {1, 0}}), 1);
    REQUIRE(bm.edges.size() == 2);
    CHECK(bm.total_weight == doctest::Approx(2.0));
}

TEST_CASE("b=2 on an all-ones 2x2 keeps all four edges") {
    b_matching bm = greedy_b_matching(from_rows({{1, 1}, {1, 1}}), 2);
    CHECK(bm.edges.size() == 4);
    CHECK(bm.total_weight == doctest::Approx(4.0));
}

TEST_CASE("greedy b-matching is capacity-feasible and at least half optimal") {
    rng r(79);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 3 + static_cast<int>(r.next_below(5));
        int cols = 3 + static_cast<int>(r.next_below(5));
        std::vector<weighted_edge> edges;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (r.next_double() < 0.35) edges.push_back({i, j, r.next_double()});
        if (edges.size() > 16) edges.resize(16);  // keep the oracle affordable
        int b = 1 + static_cast<int>(r.next_below(3));

        b_matching bm = greedy_b_matching(edges, rows, cols, b);
        std::vector<int> deg_a(rows, 0), deg_b(cols, 0);
        double total = 0.0;
        for (const auto& e : bm.edges) {
            ++deg_a[e.a];
            ++deg_b[e.b];
            total += e.weight;
        }
        for (int d : deg_a) CHECK(d <= b);
        for (int d : deg_b) CHECK(d <= b);
        CHECK(total == doctest::Approx(bm.total_weight).epsilon(1e-12));

        double opt = testutil::exhaustive_b_matching_best(edges, rows, cols, b);
        CHECK(bm.total_weight >= 0.5 * opt - 1e-9);
    }
}

TEST_CASE("greedy with a huge capacity keeps every positive edge") {
    std::vector<weighted_edge> edges{{0, 0, 1.0}, {0, 1, 0.5}, {1, 0, 0.25}, {1, 1, 0.0}};
    b_matching bm = greedy_b_matching(edges, 2, 2, 1000);
    CHECK(bm.edges.size() == 3);  // the zero-weight edge is dropped
    CHECK(bm.total_weight == doctest::Approx(1.75));
}

TEST_CASE("greedy is deterministic for a fixed input") {
    rng r(83);
    std::vector<weighted_edge> edges;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (r.next_double() < 0.5) edges.push_back({i, j, r.next_below(3) * 0.5});
    b_matching one = greedy_b_matching(edges, 6, 6, 2);
    b_matching two = greedy_b_matching(edges, 6, 6, 2);
    REQUIRE(one.edges.size() == two.edges.size());
    for (std::size_t i = 0; i < one.edges.size(); ++i) {
        CHECK(one.edges[i].a == two.edges[i].a);
        CHECK(one.edges[i].b == two.edges[i].b);
    }
}

TEST_CASE("matching files round-trip with labels and weights") {
    auto ga = parse_graph_text("a b\nb c\na c\n").g;
    auto gb = parse_graph_text("x y\ny z\nx z\n").g;
    matching m(3, 3);
    m.add(0, 2, 0.5);
    m.add(2, 0, 1.25);
    std::ostringstream out;
    write_matching(m, ga, gb, out);
    std::istringstream in(out.str());
    matching m2 = read_matching(in, ga, gb);
    CHECK(pair_list(m2) == pair_list(m));
    CHECK(m2.weight_of_a(0) == 0.5);
    CHECK(m2.weight_of_a(2) == 1.25);
}

TEST_CASE("matching reader accepts two columns and rejects bad input") {
    auto ga = parse_graph_text("a b\nb c\na c\n").g;
    auto gb = parse_graph_text("x y\ny z\nx z\n").g;
    std::istringstream two_cols("a\tx\nb\ty\n");
    matching m = read_matching(two_cols, ga, gb);
    CHECK(m.size() == 2);
    CHECK(m.weight_of_a(0) == 0.0);

    std::istringstream dup_a("a x\na y\n");
    CHECK_THROWS_AS(read_matching(dup_a, ga, gb), validation_error);
    std::istringstream dup_b("a x\nb x\n");
    CHECK_THROWS_AS(read_matching(dup_b, ga, gb), validation_error);
    std::istringstream unknown("a nope\n");
    CHECK_THROWS_AS(read_matching(unknown, ga, gb), validation_error);
    std::istringstream bad_weight("a x oops\n");
    CHECK_THROWS_AS(read_matching(bad_weight, ga, gb), parse_error);
}
