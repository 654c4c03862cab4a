#include "trialign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace trialign {

ground_truth::ground_truth(std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw validation_error("ground truth: no pairs");
    std::sort(pairs_.begin(), pairs_.end());
    std::unordered_set<int> seen_b;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (i > 0 && pairs_[i - 1].first == pairs_[i].first)
            throw validation_error("ground truth: node mapped twice");
        if (!seen_b.insert(pairs_[i].second).second)
            throw validation_error("ground truth: node mapped twice");
    }
}

int ground_truth::partner_of_a(int a) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(a, -1));
    if (it == pairs_.end() || it->first != a) return -1;
    return it->second;
}

ground_truth read_truth(std::istream& in, const graph& ga, const graph& gb) {
    std::vector<std::pair<int, int>> pairs;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        std::string body = line.substr(0, line.find('#'));
        std::istringstream ss(body);
        std::string la, lb, extra;
        if (!(ss >> la)) continue;
        if (!(ss >> lb) || (ss >> extra))
            throw parse_error("truth line " + std::to_string(lineno) +
                              ": expected two labels");
        int a = ga.index_of(la);
        if (a < 0)
            throw validation_error("truth line " + std::to_string(lineno) +
                                   ": unknown label '" + la + "' in first graph");
        int b = gb.index_of(lb);
        if (b < 0)
            throw validation_error("truth line " + std::to_string(lineno) +
                                   ": unknown label '" + lb + "' in second graph");
        pairs.emplace_back(a, b);
    }
    return ground_truth(std::move(pairs));
}

ground_truth read_truth_file(const std::string& path, const graph& ga, const graph& gb) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open truth file: " + path);
    return read_truth(in, ga, gb);
}

node_correctness_result node_correctness(const matching& m, const ground_truth& truth) {
    node_correctness_result r;
    if (m.size() == 0) {
        r.degenerate = true;
        return r;
    }
    std::int64_t hits = 0;
    for (auto [a, b] : truth.pairs())
        if (m.partner_of_a(a) == b) ++hits;
    r.precision = static_cast<double>(hits) / m.size();
    r.recall = static_cast<double>(hits) / truth.size();
    if (hits > 0) r.f_score = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

double node_coverage(const matching& m) {
    std::int64_t total = m.rows() + m.cols();
    if (total == 0) return 0.0;
    return 2.0 * m.size() / static_cast<double>(total);
}

conservation_result gs3(const matching& m, const graph& ga, const graph& gb) {
    conservation_result r;
    for (auto [u, v] : ga.edges()) {
        int up = m.partner_of_a(u), vp = m.partner_of_a(v);
        if (up < 0 || vp < 0) continue;
        if (gb.has_edge(up, vp))
            ++r.conserved;
        else
            ++r.gapped;
    }
    for (auto [u, v] : gb.edges()) {
        int up = m.partner_of_b(u), vp = m.partner_of_b(v);
        if (up < 0 || vp < 0) continue;
        if (!ga.has_edge(up, vp)) ++r.gapped;
        // Conserved pairs were already counted from the first graph's side.
    }
    std::int64_t denom = r.conserved + r.gapped;
    if (denom == 0)
        r.degenerate = true;
    else
        r.value = static_cast<double>(r.conserved) / static_cast<double>(denom);
    return r;
}

conservation_result tgs3(const matching& m, const triangle_set& ta,
                         const triangle_set& tb) {
    conservation_result r;
    for (const auto& tri : ta.triangles()) {
        int a = m.partner_of_a(tri[0]);
        int b = m.partner_of_a(tri[1]);
        int c = m.partner_of_a(tri[2]);
        if (a < 0 || b < 0 || c < 0) continue;
        if (tb.contains(a, b, c))
            ++r.conserved;
        else
            ++r.gapped;
    }
    for (const auto& tri : tb.triangles()) {
        int a = m.partner_of_b(tri[0]);
        int b = m.partner_of_b(tri[1]);
        int c = m.partner_of_b(tri[2]);
        if (a < 0 || b < 0 || c < 0) continue;
        if (!ta.contains(a, b, c)) ++r.gapped;
    }
    std::int64_t denom = r.conserved + r.gapped;
    if (denom == 0)
        r.degenerate = true;
    else
        r.value = static_cast<double>(r.conserved) / static_cast<double>(denom);
    return r;
}

metric_report evaluate_alignment(const matching& m, const graph& ga, const graph& gb,
                                 const triangle_set& ta, const triangle_set& tb,
                                 const ground_truth* truth) {
    if (m.rows() != ga.node_count() || m.cols() != gb.node_count())
        throw validation_error("evaluate_alignment: dimension mismatch");
    metric_report r;
    if (truth != nullptr) {
        r.has_node_correctness = true;
        r.nc = node_correctness(m, *truth);
    }
    r.ncv = node_coverage(m);
    r.edges = gs3(m, ga, gb);
    r.triangles = tgs3(m, ta, tb);
    r.ncv_gs3 = std::sqrt(r.ncv * r.edges.value);
    r.ncv_tgs3 = std::sqrt(r.ncv * r.triangles.value);
    return r;
}

namespace {

void put(std::ostream& out, const char* key, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << key << '\t' << buf << '\n';
}

void put(std::ostream& out, const char* key, std::int64_t v) {
    out << key << '\t' << v << '\n';
}

void put(std::ostream& out, const char* key, bool v) {
    out << key << '\t' << (v ? 1 : 0) << '\n';
}

}  // namespace

void write_metric_report(const metric_report& r, std::ostream& out) {
    if (r.has_node_correctness) {
        put(out, "precision", r.nc.precision);
        put(out, "recall", r.nc.recall);
        put(out, "f_nc", r.nc.f_score);
        put(out, "nc_degenerate", r.nc.degenerate);
    }
    put(out, "ncv", r.ncv);
    put(out, "gs3", r.edges.value);
    put(out, "ncv_gs3", r.ncv_gs3);
    put(out, "conserved_edges", r.edges.conserved);
    put(out, "gapped_edges", r.edges.gapped);
    put(out, "gs3_degenerate", r.edges.degenerate);
    put(out, "tgs3", r.triangles.value);
    put(out, "ncv_tgs3", r.ncv_tgs3);
    put(out, "conserved_triangles", r.triangles.conserved);
    put(out, "gapped_triangles", r.triangles.gapped);
    put(out, "tgs3_degenerate", r.triangles.degenerate);
}

}  // namespace trialign
