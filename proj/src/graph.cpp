#include "trialign/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace trialign {

graph::graph(std::vector<std::string> labels,
             const std::vector<std::pair<int, int>>& edges)
    : labels_(std::move(labels)) {
    const int n = node_count();
    adj_.resize(n);
    for (int v = 0; v < n; ++v) {
        auto [it, fresh] = index_.emplace(labels_[v], v);
        if (!fresh)
            throw validation_error("graph: duplicate label '" + labels_[v] + "'");
    }
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw validation_error("graph: edge index out of range");
        if (u == v)
            throw validation_error("graph: self loop on node " + labels_[u]);
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw validation_error("graph: duplicate edge");
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

int graph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

bool graph::has_edge(int u, int v) const {
    if (u == v) return false;
    // Probe the smaller adjacency list.
    if (adj_[u].size() > adj_[v].size()) std::swap(u, v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

namespace {

// Strips a '#' comment and splits the rest on whitespace.
std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(std::move(tok));
    return tokens;
}

}  // namespace

parsed_graph parse_graph(std::istream& in) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    std::vector<std::pair<int, int>> edges;
    std::unordered_set<std::uint64_t> seen;
    parse_stats stats;

    auto intern = [&](const std::string& label) {
        auto it = index.find(label);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(labels.size());
        labels.push_back(label);
        index.emplace(label, id);
        return id;
    };

    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            throw parse_error("edge list line " + std::to_string(lineno) +
                              ": expected two labels, got " +
                              std::to_string(tokens.size()));
        if (tokens[0] == tokens[1]) {
            // Dropped before the label is interned, so a node mentioned only
            // by self loops does not exist.
            ++stats.self_loops;
            continue;
        }
        int u = intern(tokens[0]);
        int v = intern(tokens[1]);
        int a = std::min(u, v), b = std::max(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
        if (!seen.insert(key).second) {
            ++stats.duplicate_edges;
            continue;
        }
        edges.emplace_back(a, b);
    }

    if (labels.empty())
        throw validation_error("edge list: graph is empty after cleaning");
    return {graph(std::move(labels), edges), stats};
}

parsed_graph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

parsed_graph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open graph file: " + path);
    return parse_graph(in);
}

void write_edge_list(const graph& g, std::ostream& out) {
    for (auto [u, v] : g.edges())
        out << g.label(u) << ' ' << g.label(v) << '\n';
}

std::uint64_t triangle_set::key(int a, int b, int c) {
    // Node indices fit comfortably in 21 bits at the scales this project
    // runs at; from_triangles validates that.
    return (static_cast<std::uint64_t>(a) << 42) |
           (static_cast<std::uint64_t>(b) << 21) |
           static_cast<std::uint64_t>(c);
}

triangle_set triangle_set::from_triangles(int node_count,
                                          std::vector<std::array<int, 3>> triangles) {
    if (node_count < 0 || node_count >= (1 << 21))
        throw validation_error("triangle_set: node count out of range");
    triangle_set t;
    t.node_count_ = node_count;
    for (auto& tri : triangles) {
        std::sort(tri.begin(), tri.end());
        if (tri[0] < 0 || tri[2] >= node_count || tri[0] == tri[1] || tri[1] == tri[2])
            throw validation_error("triangle_set: bad triple");
    }
    std::sort(triangles.begin(), triangles.end());
    triangles.erase(std::unique(triangles.begin(), triangles.end()), triangles.end());
    t.triangles_ = std::move(triangles);
    t.incidence_.resize(node_count);
    t.members_.reserve(t.triangles_.size() * 2);
    for (const auto& tri : t.triangles_) {
        auto [i, j, k] = tri;
        t.incidence_[i].emplace_back(j, k);
        t.incidence_[j].emplace_back(i, k);
        t.incidence_[k].emplace_back(i, j);
        t.members_.insert(key(i, j, k));
    }
    // Triangles are visited in sorted order, so each incidence list is
    // already sorted; keep the explicit sort as the canonical guarantee.
    for (auto& inc : t.incidence_) std::sort(inc.begin(), inc.end());
    return t;
}

bool triangle_set::contains(int a, int b, int c) const {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (a < 0 || c >= node_count_ || a == b || b == c) return false;
    return members_.count(key(a, b, c)) != 0;
}

triangle_set enumerate_triangles(const graph& g) {
    const int n = g.node_count();
    // Rank nodes by (degree, index); forward adjacency keeps only
    // higher-ranked neighbors, so every triangle is found exactly once.
    std::vector<int> rank(n);
    {
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
            return a < b;
        });
        for (int pos = 0; pos < n; ++pos) rank[order[pos]] = pos;
    }

    std::vector<std::vector<int>> forward(n);
    for (int v = 0; v < n; ++v) {
        for (int u : g.neighbors(v))
            if (rank[u] > rank[v]) forward[v].push_back(u);
        std::sort(forward[v].begin(), forward[v].end(),
                  [&](int a, int b) { return rank[a] < rank[b]; });
    }

    std::vector<std::array<int, 3>> triangles;
    for (int v = 0; v < n; ++v) {
        for (int u : forward[v]) {
            // Merge-intersect the two forward lists (both rank-sorted).
            const auto& fv = forward[v];
            const auto& fu = forward[u];
            std::size_t a = 0, b = 0;
            while (a < fv.size() && b < fu.size()) {
                int ra = rank[fv[a]], rb = rank[fu[b]];
                if (ra < rb) {
                    ++a;
                } else if (ra > rb) {
                    ++b;
                } else {
                    triangles.push_back({v, u, fv[a]});
                    ++a;
                    ++b;
                }
            }
        }
    }
    return triangle_set::from_triangles(n, std::move(triangles));
}

tensor_footprint product_tensor_footprint(std::uint64_t triangles_a,
                                          std::uint64_t triangles_b,
                                          std::uint64_t bytes_per_index) {
    if (bytes_per_index == 0)
        throw validation_error("product_tensor_footprint: bytes_per_index must be positive");
    using wide = unsigned __int128;
    wide pairs = static_cast<wide>(triangles_a) * triangles_b;
    wide reduced = pairs * 3u * bytes_per_index;
    wide full = reduced * 36u;
    if (full > std::numeric_limits<std::uint64_t>::max())
        throw numeric_error("product_tensor_footprint: byte count exceeds 64 bits");
    return {static_cast<std::uint64_t>(full), static_cast<std::uint64_t>(reduced)};
}

tensor_footprint product_tensor_footprint(const triangle_set& ta,
                                          const triangle_set& tb,
                                          std::uint64_t bytes_per_index) {
    return product_tensor_footprint(static_cast<std::uint64_t>(ta.size()),
                                    static_cast<std::uint64_t>(tb.size()),
                                    bytes_per_index);
}

}  // namespace trialign
