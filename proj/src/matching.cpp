#include "pairgraft/matching.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>

namespace pairgraft {

namespace {

// Dense maximum-weight perfect matching with blossoms. Classic primal-dual
// formulation on an adjacency matrix; vertices are 1-based, blossoms occupy
// ids n+1..3n/2.
class Blossom {
  public:
    explicit Blossom(const std::vector<std::vector<int64_t>>& weights) {
        n = int(weights.size());
        nx = n;
        const int cap = n * 3 / 2 + 2;
        g.assign(cap, std::vector<Edge>(cap));
        lab.assign(cap, 0);
        match.assign(cap, 0);
        slack.assign(cap, 0);
        st.assign(cap, 0);
        pa.assign(cap, 0);
        S.assign(cap, 0);
        vis.assign(cap, 0);
        flower.assign(cap, {});
        flower_from.assign(cap, std::vector<int>(cap, 0));
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v) g[u][v] = Edge{u, v, 0};
        int64_t wmax = 0;
        for (int u = 1; u <= n; ++u) {
            for (int v = 1; v <= n; ++v) {
                if (u == v) continue;
                g[u][v].w = 2 * weights[u - 1][v - 1];
                wmax = std::max(wmax, g[u][v].w);
            }
        }
        for (int u = 1; u <= n; ++u) {
            st[u] = u;
            flower_from[u][u] = u;
            lab[u] = wmax / 2 + 1;
        }
    }

    std::vector<int> solve() {
        int matched = 0;
        while (matched < n / 2) {
            if (!grow()) throw std::logic_error("perfect matching does not exist");
            ++matched;
        }
        std::vector<int> out(n);
        for (int u = 1; u <= n; ++u) out[u - 1] = match[u] - 1;
        return out;
    }

  private:
    struct Edge {
        int u = 0, v = 0;
        int64_t w = 0;
    };

    int n = 0, nx = 0;
    std::vector<std::vector<Edge>> g;
    std::vector<int64_t> lab;
    std::vector<int> match, slack, st, pa, S, vis;
    std::vector<std::vector<int>> flower;
    std::vector<std::vector<int>> flower_from;
    std::deque<int> q;
    int timestamp = 0;

    int64_t e_delta(const Edge& e) const { return lab[e.u] + lab[e.v] - g[e.u][e.v].w; }

    void update_slack(int u, int x) {
        if (!slack[x] || e_delta(g[u][x]) < e_delta(g[slack[x]][x])) slack[x] = u;
    }
    void set_slack(int x) {
        slack[x] = 0;
        for (int u = 1; u <= n; ++u)
            if (g[u][x].w > 0 && st[u] != x && S[st[u]] == 0) update_slack(u, x);
    }
    void q_push(int x) {
        if (x <= n) q.push_back(x);
        else
            for (int i : flower[x]) q_push(i);
    }
    void set_st(int x, int b) {
        st[x] = b;
        if (x > n)
            for (int i : flower[x]) set_st(i, b);
    }
    int get_pr(int b, int xr) {
        int pr = int(std::find(flower[b].begin(), flower[b].end(), xr) - flower[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower[b].begin() + 1, flower[b].end());
            return int(flower[b].size()) - pr;
        }
        return pr;
    }
    void set_match(int u, int v) {
        match[u] = g[u][v].v;
        if (u > n) {
            Edge e = g[u][v];
            int xr = flower_from[u][e.u];
            int pr = get_pr(u, xr);
            for (int i = 0; i < pr; ++i) set_match(flower[u][i], flower[u][i ^ 1]);
            set_match(xr, v);
            std::rotate(flower[u].begin(), flower[u].begin() + pr, flower[u].end());
        }
    }
    void augment(int u, int v) {
        for (;;) {
            int xnv = st[match[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st[pa[xnv]]);
            u = st[pa[xnv]];
            v = xnv;
        }
    }
    int get_lca(int u, int v) {
        for (++timestamp; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis[u] == timestamp) return u;
            vis[u] = timestamp;
            u = st[match[u]];
            if (u) u = st[pa[u]];
        }
        return 0;
    }
    void add_blossom(int u, int lca, int v) {
        int b = n + 1;
        while (b <= nx && st[b]) ++b;
        if (b > nx) ++nx;
        lab[b] = 0;
        S[b] = 0;
        match[b] = match[lca];
        flower[b].clear();
        flower[b].push_back(lca);
        for (int x = u, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            y = st[match[x]];
            flower[b].push_back(y);
            q_push(y);
        }
        std::reverse(flower[b].begin() + 1, flower[b].end());
        for (int x = v, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            y = st[match[x]];
            flower[b].push_back(y);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= nx; ++x) g[b][x].w = g[x][b].w = 0;
        for (int x = 1; x <= n; ++x) flower_from[b][x] = 0;
        for (int xs : flower[b]) {
            for (int x = 1; x <= nx; ++x) {
                if (g[b][x].w == 0 || e_delta(g[xs][x]) < e_delta(g[b][x])) {
                    g[b][x] = g[xs][x];
                    g[x][b] = g[x][xs];
                }
            }
            for (int x = 1; x <= n; ++x) {
                if (flower_from[xs][x]) flower_from[b][x] = xs;
            }
        }
        set_slack(b);
    }
    void expand_blossom(int b) {
        for (int i : flower[b]) set_st(i, i);
        int xr = flower_from[b][g[b][pa[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower[b][i];
            int xns = flower[b][i + 1];
            pa[xs] = g[xns][xs].u;
            S[xs] = 1;
            S[xns] = 0;
            slack[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        S[xr] = 1;
        pa[xr] = pa[b];
        for (size_t i = pr + 1; i < flower[b].size(); ++i) {
            int xs = flower[b][i];
            S[xs] = -1;
            set_slack(xs);
        }
        st[b] = 0;
    }
    bool on_found_edge(const Edge& e) {
        int u = st[e.u], v = st[e.v];
        if (S[v] == -1) {
            pa[v] = e.u;
            S[v] = 1;
            int nu = st[match[v]];
            slack[v] = slack[nu] = 0;
            S[nu] = 0;
            q_push(nu);
        } else if (S[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }
    bool grow() {
        std::fill(S.begin(), S.begin() + nx + 1, -1);
        std::fill(slack.begin(), slack.begin() + nx + 1, 0);
        q.clear();
        for (int x = 1; x <= nx; ++x) {
            if (st[x] == x && !match[x]) {
                pa[x] = 0;
                S[x] = 0;
                q_push(x);
            }
        }
        if (q.empty()) return false;
        for (;;) {
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                if (S[st[u]] == 1) continue;
                for (int v = 1; v <= n; ++v) {
                    if (g[u][v].w > 0 && st[u] != st[v]) {
                        if (e_delta(g[u][v]) == 0) {
                            if (on_found_edge(g[u][v])) return true;
                        } else {
                            update_slack(u, st[v]);
                        }
                    }
                }
            }
            int64_t d = std::numeric_limits<int64_t>::max();
            for (int b = n + 1; b <= nx; ++b)
                if (st[b] == b && S[b] == 1) d = std::min(d, lab[b] / 2);
            for (int x = 1; x <= nx; ++x)
                if (st[x] == x && slack[x]) {
                    if (S[x] == -1) d = std::min(d, e_delta(g[slack[x]][x]));
                    else if (S[x] == 0) d = std::min(d, e_delta(g[slack[x]][x]) / 2);
                }
            for (int u = 1; u <= n; ++u) {
                if (S[st[u]] == 0) {
                    if (lab[u] <= d) return false;  // dual hit zero: no perfect matching
                    lab[u] -= d;
                } else if (S[st[u]] == 1) {
                    lab[u] += d;
                }
            }
            for (int b = n + 1; b <= nx; ++b) {
                if (st[b] == b && S[b] >= 0) {
                    if (S[b] == 0) lab[b] += d * 2;
                    else lab[b] -= d * 2;
                }
            }
            q.clear();
            for (int x = 1; x <= nx; ++x) {
                if (st[x] == x && slack[x] && st[slack[x]] != x && e_delta(g[slack[x]][x]) == 0) {
                    if (on_found_edge(g[slack[x]][x])) return true;
                }
            }
            for (int b = n + 1; b <= nx; ++b) {
                if (st[b] == b && S[b] == 1 && lab[b] == 0) expand_blossom(b);
            }
        }
        return false;
    }
};

}  // namespace

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& w) {
    const int n = int(w.size());
    if (n == 0) return {};
    if (n % 2) throw std::invalid_argument("odd vertex count");
    if (n == 2) return {1, 0};
    // Convert to maximum weight: wmax - w, keeping everything positive.
    int64_t wmax = 0;
    for (const auto& row : w)
        for (int64_t x : row) wmax = std::max(wmax, x);
    std::vector<std::vector<int64_t>> t(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) t[i][j] = wmax - w[i][j] + 1;
    Blossom b(t);
    return b.solve();
}

std::vector<int> brute_force_perfect_matching(const std::vector<std::vector<int64_t>>& w) {
    const int n = int(w.size());
    if (n % 2 || n > 12) throw std::invalid_argument("brute force needs even n <= 12");
    std::vector<int> best, cur(n, -1);
    int64_t best_w = std::numeric_limits<int64_t>::max();
    std::vector<int> order;
    std::function<void(int64_t)> rec = [&](int64_t acc) {
        int u = -1;
        for (int i = 0; i < n; ++i)
            if (cur[i] < 0) {
                u = i;
                break;
            }
        if (u < 0) {
            if (acc < best_w) {
                best_w = acc;
                best = cur;
            }
            return;
        }
        for (int v = u + 1; v < n; ++v) {
            if (cur[v] >= 0) continue;
            cur[u] = v;
            cur[v] = u;
            if (acc + w[u][v] < best_w) rec(acc + w[u][v]);
            cur[u] = cur[v] = -1;
        }
    };
    rec(0);
    return best;
}

}  // namespace pairgraft
