#include "trialign/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace trialign {

namespace {

constexpr double topo_tie_eps = 1e-12;  // tolerance on the weighted part only

// Contribution of one canonical triangle (i < j < k) under the current
// matching: 1 + the better endpoint pairing, or nothing when the image is
// not a triangle. The anchor is the smallest node, so the value is well
// defined per unordered triple.
topo_value triple_value(const matching& m, const triangle_set& tb,
                        const similarity_matrix& w, int i, int j, int k) {
    topo_value v;
    int ip = m.partner_of_a(i);
    int jp = m.partner_of_a(j);
    int kp = m.partner_of_a(k);
    if (ip < 0 || jp < 0 || kp < 0 || !tb.contains(ip, jp, kp)) return v;
    v.conserved = 1;
    v.weighted = std::max(w.at(j, jp) + w.at(k, kp), w.at(j, kp) + w.at(k, jp));
    return v;
}

}  // namespace

candidate_set build_candidates(const score_matrix& x, const similarity_matrix& w,
                               int b_topo, int b_seq) {
    if (x.rows() != w.rows() || x.cols() != w.cols())
        throw validation_error("build_candidates: dimension mismatch");
    b_matching topo = greedy_b_matching(x, b_topo);
    b_matching seq = greedy_b_matching(w, b_seq);

    candidate_set cs;
    cs.pairs.reserve(topo.edges.size() + seq.edges.size());
    for (const auto& e : topo.edges) cs.pairs.emplace_back(e.a, e.b);
    for (const auto& e : seq.edges) cs.pairs.emplace_back(e.a, e.b);
    std::sort(cs.pairs.begin(), cs.pairs.end());
    cs.pairs.erase(std::unique(cs.pairs.begin(), cs.pairs.end()), cs.pairs.end());

    cs.by_a.resize(x.rows());
    cs.by_b.resize(x.cols());
    for (auto [a, b] : cs.pairs) {
        cs.by_a[a].push_back(b);
        cs.by_b[b].push_back(a);
    }
    return cs;
}

topo_value topo_similarity(const matching& m, const triangle_set& ta,
                           const triangle_set& tb, const similarity_matrix& w) {
    topo_value total;
    for (const auto& tri : ta.triangles()) {
        topo_value v = triple_value(m, tb, w, tri[0], tri[1], tri[2]);
        total.conserved += v.conserved;
        total.weighted += v.weighted;
    }
    return total;
}

double seq_similarity(const matching& m, const similarity_matrix& w) {
    double s = 0.0;
    for (int a = 0; a < m.rows(); ++a) {
        int b = m.partner_of_a(a);
        if (b >= 0) s += w.at(a, b);
    }
    return s;
}

namespace {

struct swap_candidate {
    double w_pot;  // prior weight the new pairs would carry
    double x_pot;  // iterate weight, the tie-break
    int kind;      // 0: exchange with a matched pair, 1: move to a free
                   // second-graph node, 2: hand the partner to a free
                   // first-graph node
    int other;     // the j' (kind 0/1) or j (kind 2) involved
};

// The matched pairs of one round, visited by descending iterate mass.
// Entries are keyed by first-graph node: a displaced pair keeps its entry
// and is simply seen under its new partner if its turn is still to come.
std::vector<int> round_order(const matching& m, const std::vector<double>& row_mass,
                             const std::vector<double>& col_mass) {
    std::vector<int> order;
    order.reserve(m.size());
    for (int a = 0; a < m.rows(); ++a)
        if (m.matched_a(a)) order.push_back(a);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        double dl = row_mass[lhs] + col_mass[m.partner_of_a(lhs)];
        double dr = row_mass[rhs] + col_mass[m.partner_of_a(rhs)];
        if (dl != dr) return dl > dr;
        return lhs < rhs;
    });
    return order;
}

// Union of the candidate partners and a graph neighborhood, sorted unique.
std::vector<int> preferred(const std::vector<int>& from_candidates,
                           const std::vector<int>& neighborhood) {
    std::vector<int> out;
    out.reserve(from_candidates.size() + neighborhood.size());
    std::merge(from_candidates.begin(), from_candidates.end(), neighborhood.begin(),
               neighborhood.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

class refine_state {
  public:
    refine_state(matching m, const score_matrix& x, const similarity_matrix& w,
                 const triangle_set& ta, const triangle_set& tb)
        : m_(std::move(m)), x_(x), w_(w), ta_(ta), tb_(tb) {}

    const matching& current() const { return m_; }
    matching take() && { return std::move(m_); }

    // Applies the swap when it wins under the accept rule; reports whether
    // it did. `a_second` is -1 for a plain move (kind 1).
    bool try_swap(int kind, int a_first, int b_first, int a_second, int b_second,
                  topo_value& topo, double& seq) {
        // Only triangles through a first-graph node whose partner changes
        // can change value; gather them once, before and after.
        affected_.clear();
        affected_.push_back(a_first);
        if (a_second >= 0) affected_.push_back(a_second);

        topo_value before = local_topo();
        double seq_before = local_seq();

        apply(kind, a_first, b_first, a_second, b_second);

        topo_value after = local_topo();
        double seq_after = local_seq();

        std::int64_t d_cons = after.conserved - before.conserved;
        double d_weighted = after.weighted - before.weighted;
        double d_seq = seq_after - seq_before;

        bool tie = d_cons == 0 && std::abs(d_weighted) <= topo_tie_eps;
        bool accept;
        if (tie) {
            accept = d_seq > 0.0;
        } else {
            accept = static_cast<double>(d_cons) + d_weighted > 0.0;
        }
        if (!accept) {
            unapply(kind, a_first, b_first, a_second, b_second);
            return false;
        }
        topo.conserved += d_cons;
        topo.weighted += d_weighted;
        seq += d_seq;
        return true;
    }

  private:
    void apply(int kind, int a_first, int b_first, int a_second, int b_second) {
        // kind 0: (a1,b1) (a2,b2) -> (a1,b2) (a2,b1)
        // kind 1: (a1,b1), b2 free -> (a1,b2), b1 freed
        // kind 2: (a1,b1), a2 free -> (a2,b1), a1 freed
        m_.remove_a(a_first);
        if (kind == 0) {
            m_.remove_a(a_second);
            m_.add(a_first, b_second, x_(a_first, b_second));
            m_.add(a_second, b_first, x_(a_second, b_first));
        } else if (kind == 1) {
            m_.add(a_first, b_second, x_(a_first, b_second));
        } else {
            m_.add(a_second, b_first, x_(a_second, b_first));
        }
    }

    void unapply(int kind, int a_first, int b_first, int a_second, int b_second) {
        if (kind == 0) {
            m_.remove_a(a_first);
            m_.remove_a(a_second);
            m_.add(a_second, b_second, x_(a_second, b_second));
        } else if (kind == 1) {
            m_.remove_a(a_first);
        } else {
            m_.remove_a(a_second);
        }
        m_.add(a_first, b_first, x_(a_first, b_first));
    }

    topo_value local_topo() {
        triples_.clear();
        for (int a : affected_)
            for (auto [j, k] : ta_.incidence(a)) {
                int t0 = a, t1 = j, t2 = k;  // incidence pairs are sorted, a anywhere
                if (t0 > t1) std::swap(t0, t1);
                if (t1 > t2) std::swap(t1, t2);
                if (t0 > t1) std::swap(t0, t1);
                triples_.push_back({t0, t1, t2});
            }
        std::sort(triples_.begin(), triples_.end());
        triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
        topo_value v;
        for (const auto& t : triples_) {
            topo_value one = triple_value(m_, tb_, w_, t[0], t[1], t[2]);
            v.conserved += one.conserved;
            v.weighted += one.weighted;
        }
        return v;
    }

    double local_seq() {
        double s = 0.0;
        for (int a : affected_) {
            int b = m_.partner_of_a(a);
            if (b >= 0) s += w_.at(a, b);
        }
        return s;
    }

    matching m_;
    const score_matrix& x_;
    const similarity_matrix& w_;
    const triangle_set& ta_;
    const triangle_set& tb_;
    std::vector<int> affected_;
    std::vector<std::array<int, 3>> triples_;
};

}  // namespace

matching refine(const matching& m0, const score_matrix& x, const similarity_matrix& w,
                const graph& ga, const graph& gb, const triangle_set& ta,
                const triangle_set& tb, const refine_config& cfg, refine_audit* audit) {
    if (cfg.rounds < 0) throw validation_error("refine: rounds must be nonnegative");
    if (m0.rows() != x.rows() || m0.cols() != x.cols() || x.rows() != w.rows() ||
        x.cols() != w.cols() || w.rows() != ga.node_count() || w.cols() != gb.node_count())
        throw validation_error("refine: dimension mismatch");

    candidate_set cand = build_candidates(x, w, cfg.b_topo, cfg.b_seq);
    std::vector<double> row_mass = x.row_sums();
    std::vector<double> col_mass = x.col_sums();

    refine_state state(m0, x, w, ta, tb);
    topo_value topo = topo_similarity(state.current(), ta, tb, w);
    double seq = seq_similarity(state.current(), w);
    if (audit) {
        audit->initial_topo = topo;
        audit->initial_seq = seq;
    }

    std::vector<swap_candidate> cands;
    for (int round = 0; round < cfg.rounds; ++round) {
        std::vector<int> order = round_order(state.current(), row_mass, col_mass);
        for (int i : order) {
            const matching& m = state.current();
            if (!m.matched_a(i)) continue;
            int ip = m.partner_of_a(i);

            std::vector<int> pref_h = preferred(cand.by_a[i], gb.neighbors(ip));
            std::vector<int> pref_g = preferred(cand.by_b[ip], ga.neighbors(i));

            cands.clear();
            for (int jp : pref_h) {
                if (jp == ip) continue;
                int j = m.partner_of_b(jp);
                if (j >= 0) {
                    if (j == i) continue;
                    if (!std::binary_search(pref_g.begin(), pref_g.end(), j)) continue;
                    cands.push_back({w.at(i, jp) + w.at(j, ip), x(i, jp) + x(j, ip), 0, jp});
                } else {
                    cands.push_back({w.at(i, jp), x(i, jp), 1, jp});
                }
            }
            for (int j : pref_g) {
                if (j == i || m.matched_a(j)) continue;
                cands.push_back({w.at(j, ip), x(j, ip), 2, j});
            }
            std::sort(cands.begin(), cands.end(),
                      [](const swap_candidate& a, const swap_candidate& b) {
                          if (a.w_pot != b.w_pot) return a.w_pot > b.w_pot;
                          if (a.x_pot != b.x_pot) return a.x_pot > b.x_pot;
                          if (a.kind != b.kind) return a.kind < b.kind;
                          return a.other < b.other;
                      });

            for (const auto& c : cands) {
                bool ok;
                if (c.kind == 0) {
                    int jp = c.other;
                    int j = m.partner_of_b(jp);
                    ok = state.try_swap(0, i, ip, j, jp, topo, seq);
                } else if (c.kind == 1) {
                    ok = state.try_swap(1, i, ip, -1, c.other, topo, seq);
                } else {
                    ok = state.try_swap(2, i, ip, c.other, -1, topo, seq);
                }
                if (ok) {
                    if (audit) {
                        topo_value full = topo_similarity(state.current(), ta, tb, w);
                        audit->steps.push_back({topo, seq, full.scalar(),
                                                seq_similarity(state.current(), w)});
                    }
                    break;  // first improvement wins; next entry
                }
            }
        }
    }
    return std::move(state).take();
}

}  // namespace trialign
