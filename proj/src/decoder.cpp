#include "pairgraft/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "pairgraft/matching.hpp"

namespace pairgraft {

namespace {
constexpr int64_t kInf = int64_t(1) << 40;
constexpr int32_t kInf32 = std::numeric_limits<int32_t>::max() / 2;
}  // namespace

void Decoder::dijkstra(int src, const std::vector<int64_t>& w, std::vector<int64_t>& dist,
                       std::vector<int>& parent_edge, std::vector<uint8_t>* pathmask) const {
    const int total = n_ + 1;
    dist.assign(total, kInf);
    parent_edge.assign(total, -1);
    if (pathmask) pathmask->assign(total, 0);
    dist[src] = 0;
    using Item = std::pair<int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0, src});
    std::vector<char> popped(total, 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (popped[u]) continue;
        popped[u] = 1;
        auto relax = [&](int v, int64_t nd, int eid) {
            if (!popped[v] && nd < dist[v]) {
                dist[v] = nd;
                parent_edge[v] = eid;
                if (pathmask)
                    (*pathmask)[v] = uint8_t((*pathmask)[u] ^ graph_->edges[eid].mask);
                pq.push({nd, v});
            }
        };
        if (u == n_) {
            for (const auto& e : graph_->edges)
                if (e.dangling()) relax(e.u, d + w[e.id], e.id);
            continue;
        }
        for (int k = graph_->adj_offset[u]; k < graph_->adj_offset[u + 1]; ++k) {
            int eid = graph_->adj_edges[k];
            const GraphEdge& e = graph_->edges[eid];
            int v = e.dangling() ? n_ : (e.u == u ? e.v : e.u);
            relax(v, d + w[eid], eid);
        }
    }
}

Decoder::Decoder(const DecodingGraph& graph) : graph_(&graph) {
    n_ = graph.num_detectors;
    edge_w_.resize(graph.edges.size());
    for (const auto& e : graph.edges) {
        edge_w_[e.id] = llround(e.weight * double(kWeightScale));
        if (e.dangling()) has_boundary_ = true;
    }
    rules_by_trigger_.resize(n_);
    for (size_t r = 0; r < graph.rules.size(); ++r)
        rules_by_trigger_[graph.rules[r].trigger].push_back(int(r));

    const int total = n_ + 1;
    dist_.assign(size_t(total) * total, kInf32);
    mask_.assign(size_t(total) * total, 0);
    std::vector<int64_t> dist;
    std::vector<int> parent;
    std::vector<uint8_t> pmask;
    for (int src = 0; src < total; ++src) {
        dijkstra(src, edge_w_, dist, parent, &pmask);
        for (int v = 0; v < total; ++v) {
            size_t idx = size_t(src) * total + v;
            dist_[idx] = dist[v] >= kInf ? kInf32 : int32_t(dist[v]);
            mask_[idx] = pmask[v];
        }
    }
}

std::vector<int> Decoder::reconstruct(int u, int v, const std::vector<int64_t>& w) const {
    std::vector<int64_t> dist;
    std::vector<int> parent;
    dijkstra(u, w, dist, parent, nullptr);
    std::vector<int> edges;
    int cur = v;
    while (cur != u) {
        int eid = parent[cur];
        if (eid < 0) throw std::runtime_error("no path between matched detectors");
        edges.push_back(eid);
        const GraphEdge& e = graph_->edges[eid];
        int other = e.dangling() ? n_ : e.v;
        cur = (cur == e.u) ? other : e.u;
    }
    return edges;
}

MatchResult Decoder::decode(const Syndrome& syndrome, bool want_edges) const {
    MatchResult res;
    std::vector<int> defects;
    std::vector<int> zero_edges;
    for (int d : syndrome.triggered) {
        if (d < 0 || d >= n_) throw std::invalid_argument("detector id out of range");
        if (!rules_by_trigger_[d].empty()) {
            // Dangling-edge absorption: the trigger is matched to nothing and
            // its rules' listed edges become free for this decode.
            for (int ri : rules_by_trigger_[d]) {
                const ReweightRule& r = graph_->rules[ri];
                zero_edges.insert(zero_edges.end(), r.edge_ids.begin(), r.edge_ids.end());
            }
            int best = -1;
            for (int k = graph_->adj_offset[d]; k < graph_->adj_offset[d + 1]; ++k) {
                int eid = graph_->adj_edges[k];
                if (!graph_->edges[eid].dangling()) continue;
                if (best < 0 || edge_w_[eid] < edge_w_[best]) best = eid;
            }
            if (best >= 0) {
                res.predicted_logical ^= graph_->edges[best].mask;
                res.total_weight += graph_->edges[best].weight;
                if (want_edges) res.matched_edges.push_back(best);
                continue;
            }
        }
        defects.push_back(d);
    }
    std::sort(zero_edges.begin(), zero_edges.end());
    zero_edges.erase(std::unique(zero_edges.begin(), zero_edges.end()), zero_edges.end());

    const int m = int(defects.size());
    if (m == 0) return res;

    std::vector<int64_t> dmat(size_t(m) * m, kInf);
    std::vector<uint8_t> mmat(size_t(m) * m, 0);
    std::vector<int64_t> dbound(m, kInf);
    std::vector<uint8_t> mbound(m, 0);
    if (zero_edges.empty()) {
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                int a = std::min(defects[i], defects[j]), b = std::max(defects[i], defects[j]);
                dmat[size_t(i) * m + j] = dmat[size_t(j) * m + i] = sdist(a, b);
                mmat[size_t(i) * m + j] = mmat[size_t(j) * m + i] = smask(a, b);
            }
            if (has_boundary_) {
                dbound[i] = sdist(defects[i], n_);
                mbound[i] = smask(defects[i], n_);
            }
        }
    } else {
        // Small overlay graph: defects, zeroed-edge endpoints, boundary.
        std::vector<int> nodes = defects;
        for (int eid : zero_edges) {
            const GraphEdge& e = graph_->edges[eid];
            nodes.push_back(e.u);
            if (!e.dangling()) nodes.push_back(e.v);
        }
        if (has_boundary_) nodes.push_back(n_);
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        const int k = int(nodes.size());
        auto node_pos = [&](int v) {
            return int(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
        };
        std::vector<int64_t> base(size_t(k) * k);
        std::vector<uint8_t> bmask(size_t(k) * k, 0);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (i == j) {
                    base[size_t(i) * k + j] = 0;
                    continue;
                }
                int a = std::min(nodes[i], nodes[j]), b = std::max(nodes[i], nodes[j]);
                base[size_t(i) * k + j] = sdist(a, b);
                bmask[size_t(i) * k + j] = smask(a, b);
            }
        }
        for (int eid : zero_edges) {
            const GraphEdge& e = graph_->edges[eid];
            int a = node_pos(e.u);
            int b = e.dangling() ? (has_boundary_ ? node_pos(n_) : -1) : node_pos(e.v);
            if (b < 0) continue;
            if (base[size_t(a) * k + b] > 0) {
                base[size_t(a) * k + b] = base[size_t(b) * k + a] = 0;
                bmask[size_t(a) * k + b] = bmask[size_t(b) * k + a] = uint8_t(e.mask);
            }
        }
        std::vector<int64_t> dist(k);
        std::vector<uint8_t> dm(k);
        std::vector<char> done(k);
        for (int i = 0; i < m; ++i) {
            std::fill(dist.begin(), dist.end(), kInf);
            std::fill(dm.begin(), dm.end(), 0);
            std::fill(done.begin(), done.end(), 0);
            dist[node_pos(defects[i])] = 0;
            for (int it = 0; it < k; ++it) {
                int best = -1;
                for (int v = 0; v < k; ++v)
                    if (!done[v] && (best < 0 || dist[v] < dist[best])) best = v;
                if (best < 0 || dist[best] >= kInf) break;
                done[best] = 1;
                for (int v = 0; v < k; ++v) {
                    int64_t nd = dist[best] + base[size_t(best) * k + v];
                    if (!done[v] && nd < dist[v]) {
                        dist[v] = nd;
                        dm[v] = uint8_t(dm[best] ^ bmask[size_t(best) * k + v]);
                    }
                }
            }
            for (int j = 0; j < m; ++j) {
                dmat[size_t(i) * m + j] = dist[node_pos(defects[j])];
                mmat[size_t(i) * m + j] = dm[node_pos(defects[j])];
            }
            if (has_boundary_) {
                dbound[i] = dist[node_pos(n_)];
                mbound[i] = dm[node_pos(n_)];
            }
        }
    }

    const bool odd = m % 2;
    if (odd && !has_boundary_)
        throw std::runtime_error("invalid syndrome: odd defect count with no boundary");
    const int nm = m + (odd ? 1 : 0);
    std::vector<std::vector<int64_t>> w(nm, std::vector<int64_t>(nm, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            int64_t direct = dmat[size_t(i) * m + j];
            int64_t via_b =
                (dbound[i] >= kInf || dbound[j] >= kInf) ? kInf : dbound[i] + dbound[j];
            w[i][j] = w[j][i] = std::min(std::min(direct, via_b), kInf);
        }
        if (odd) w[i][m] = w[m][i] = std::min(dbound[i], kInf);
    }

    std::vector<int> mate = min_weight_perfect_matching(w);

    int64_t total = 0;
    std::vector<int64_t> ww;
    if (want_edges) {
        ww = edge_w_;
        for (int e : zero_edges) ww[e] = 0;
    }
    for (int i = 0; i < nm; ++i) {
        int j = mate[i];
        if (j < i) continue;
        int64_t wij = w[i][j];
        if (wij >= kInf) throw std::runtime_error("invalid syndrome: unmatched component");
        total += wij;
        bool to_virtual = (j == m);
        // direct path wins ties against the double-boundary route
        bool via_b = !to_virtual && wij < dmat[size_t(i) * m + j];
        if (to_virtual) {
            res.predicted_logical ^= mbound[i];
            if (want_edges) {
                auto es = reconstruct(defects[i], n_, ww);
                res.matched_edges.insert(res.matched_edges.end(), es.begin(), es.end());
            }
        } else if (via_b) {
            res.predicted_logical ^= uint32_t(mbound[i]) ^ uint32_t(mbound[j]);
            if (want_edges) {
                for (int v : {i, j}) {
                    auto es = reconstruct(defects[v], n_, ww);
                    res.matched_edges.insert(res.matched_edges.end(), es.begin(), es.end());
                }
            }
        } else {
            res.predicted_logical ^= mmat[size_t(i) * m + j];
            if (want_edges) {
                auto es = reconstruct(defects[i], defects[j], ww);
                res.matched_edges.insert(res.matched_edges.end(), es.begin(), es.end());
            }
        }
    }
    res.total_weight += double(total) / double(kWeightScale);
    return res;
}

uint32_t decode_exact(const std::vector<Fault>& faults, const DetectorModel& model,
                      const Syndrome& syndrome, int max_faults) {
    struct Cls {
        std::vector<int> syn;
        uint32_t mask;
        double w;
    };
    std::map<std::pair<std::vector<int>, uint32_t>, double> best_w;
    for (const auto& f : faults) {
        if (f.syndrome.empty()) continue;
        double w = std::log((1 - f.probability) / f.probability);
        auto key = std::make_pair(f.syndrome, f.logical_mask);
        auto it = best_w.find(key);
        if (it == best_w.end() || w < it->second) best_w[key] = w;
    }
    std::vector<Cls> classes;
    classes.reserve(best_w.size());
    for (auto& [k, w] : best_w) classes.push_back({k.first, k.second, w});
    std::vector<std::vector<int>> by_det(model.num_detectors());
    for (size_t i = 0; i < classes.size(); ++i)
        for (int d : classes[i].syn) by_det[d].push_back(int(i));

    constexpr double eps = 1e-9;
    double bw = std::numeric_limits<double>::infinity();
    uint32_t bm = 0;
    bool found = false;
    std::function<void(const std::vector<int>&, uint32_t, double, int)> dfs =
        [&](const std::vector<int>& syn, uint32_t mask, double acc, int depth) {
            if (syn.empty()) {
                if (!found || acc < bw - eps) {
                    bw = acc;
                    bm = mask;
                    found = true;
                } else if (acc <= bw + eps && mask < bm) {
                    bm = mask;
                }
                return;
            }
            if (depth == 0 || acc > bw + eps) return;
            int d = syn[0];
            for (int ci : by_det[d]) {
                const Cls& cl = classes[ci];
                std::vector<int> rest = syn;
                rest.insert(rest.end(), cl.syn.begin(), cl.syn.end());
                std::sort(rest.begin(), rest.end());
                std::vector<int> reduced;
                for (size_t i = 0; i < rest.size();) {
                    size_t j = i;
                    while (j < rest.size() && rest[j] == rest[i]) ++j;
                    if ((j - i) % 2) reduced.push_back(rest[i]);
                    i = j;
                }
                dfs(reduced, mask ^ cl.mask, acc + cl.w, depth - 1);
            }
        };
    dfs(syndrome.triggered, 0, 0.0, max_faults);
    if (!found) throw std::runtime_error("inconsistent syndrome: no fault set explains it");
    return bm;
}

}  // namespace pairgraft
