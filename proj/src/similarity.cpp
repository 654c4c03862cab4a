#include "trialign/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace trialign {

namespace {

std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

similarity_matrix::similarity_matrix(int rows, int cols, std::vector<sim_entry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0)
        throw validation_error("similarity_matrix: negative dimension");
    for (const auto& e : entries_) {
        if (e.a < 0 || e.a >= rows || e.b < 0 || e.b >= cols)
            throw validation_error("similarity_matrix: entry out of range");
        if (!std::isfinite(e.weight) || e.weight < 0.0)
            throw validation_error("similarity_matrix: weights must be finite and nonnegative");
    }
    std::sort(entries_.begin(), entries_.end(), [](const sim_entry& x, const sim_entry& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i - 1].a == entries_[i].a && entries_[i - 1].b == entries_[i].b)
            throw validation_error("similarity_matrix: duplicate entry");
    lookup_.reserve(entries_.size() * 2);
    for (const auto& e : entries_) lookup_.emplace(pair_key(e.a, e.b), e.weight);
}

double similarity_matrix::at(int a, int b) const {
    auto it = lookup_.find(pair_key(a, b));
    return it == lookup_.end() ? 0.0 : it->second;
}

double similarity_matrix::norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.weight * e.weight;
    return std::sqrt(s);
}

score_matrix similarity_matrix::to_dense() const {
    score_matrix m(rows_, cols_);
    for (const auto& e : entries_) m(e.a, e.b) = e.weight;
    return m;
}

similarity_matrix parse_similarity(std::istream& in, const graph& ga, const graph& gb) {
    std::vector<sim_entry> entries;
    std::unordered_map<std::uint64_t, std::size_t> slot;

    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        std::string body = line.substr(0, line.find('#'));
        std::istringstream ss(body);
        std::string la, lb, wtext;
        if (!(ss >> la)) continue;  // blank or comment-only line
        std::string extra;
        if (!(ss >> lb >> wtext) || (ss >> extra))
            throw parse_error("similarity line " + std::to_string(lineno) +
                              ": expected labelA labelB weight");
        int a = ga.index_of(la);
        if (a < 0)
            throw validation_error("similarity line " + std::to_string(lineno) +
                                   ": unknown label '" + la + "' in first graph");
        int b = gb.index_of(lb);
        if (b < 0)
            throw validation_error("similarity line " + std::to_string(lineno) +
                                   ": unknown label '" + lb + "' in second graph");
        char* end = nullptr;
        double w = std::strtod(wtext.c_str(), &end);
        if (end != wtext.c_str() + wtext.size() || !std::isfinite(w))
            throw parse_error("similarity line " + std::to_string(lineno) +
                              ": bad weight '" + wtext + "'");
        if (w < 0.0)
            throw validation_error("similarity line " + std::to_string(lineno) +
                                   ": negative weight");
        auto key = pair_key(a, b);
        auto it = slot.find(key);
        if (it != slot.end()) {
            // Repeated pair: keep the best score, like merging hit lists.
            entries[it->second].weight = std::max(entries[it->second].weight, w);
        } else {
            slot.emplace(key, entries.size());
            entries.push_back({a, b, w});
        }
    }
    return similarity_matrix(ga.node_count(), gb.node_count(), std::move(entries));
}

similarity_matrix parse_similarity_text(const std::string& text, const graph& ga,
                                        const graph& gb) {
    std::istringstream in(text);
    return parse_similarity(in, ga, gb);
}

similarity_matrix parse_similarity_file(const std::string& path, const graph& ga,
                                        const graph& gb) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open similarity file: " + path);
    return parse_similarity(in, ga, gb);
}

void write_similarity(const similarity_matrix& w, const graph& ga, const graph& gb,
                      std::ostream& out) {
    char buf[32];
    for (const auto& e : w.entries()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.weight);
        out << ga.label(e.a) << '\t' << gb.label(e.b) << '\t' << buf << '\n';
    }
}

similarity_matrix normalize_unit(const similarity_matrix& w) {
    double n = w.norm();
    if (n == 0.0)
        throw degenerate_error("similarity prior is all zero; nothing to normalize");
    similarity_matrix out = w;
    for (auto& e : out.entries_) e.weight /= n;
    for (auto& [k, v] : out.lookup_) v /= n;
    return out;
}

indicator_pair indicators(const similarity_matrix& w) {
    indicator_pair ind;
    ind.rows.assign(w.rows(), 0);
    ind.cols.assign(w.cols(), 0);
    for (const auto& e : w.entries()) {
        if (e.weight > 0.0) {
            ind.rows[e.a] = 1;
            ind.cols[e.b] = 1;
        }
    }
    return ind;
}

triangle_set constrain_triangles(const triangle_set& t,
                                 const std::vector<std::uint8_t>& keep) {
    if (static_cast<int>(keep.size()) != t.node_count())
        throw validation_error("constrain_triangles: indicator length mismatch");
    std::vector<std::array<int, 3>> kept;
    for (const auto& tri : t.triangles())
        if (keep[tri[0]] && keep[tri[1]] && keep[tri[2]]) kept.push_back(tri);
    return triangle_set::from_triangles(t.node_count(), std::move(kept));
}

}  // namespace trialign
