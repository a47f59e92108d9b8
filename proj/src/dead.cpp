#include "pairgraft/dead.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pairgraft {

namespace {

std::pair<int, int> norm_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Intra-plaquette connectivity: data attach to their serving aux, aux form
// the A-B-C chain. Edges as qubit pairs.
std::vector<std::pair<int, int>> plaquette_edges(const Plaquette& p) {
    std::vector<std::pair<int, int>> out;
    auto add = [&](int a, int b) {
        if (a >= 0 && b >= 0) out.push_back(norm_pair(a, b));
    };
    if (p.form == CircuitForm::OneGon) return out;
    if (p.form == CircuitForm::TwoGonAlpha || p.form == CircuitForm::TwoGonGamma) {
        int mu = p.aux[0] >= 0 ? p.aux[0] : p.aux[2];
        for (int q : p.slot_data)
            if (q >= 0) add(q, mu);
        return out;
    }
    add(p.slot_data[0], p.aux[0]);
    add(p.slot_data[2], p.aux[0]);
    add(p.slot_data[1], p.aux[2]);
    add(p.slot_data[3], p.aux[2]);
    add(p.aux[0], p.aux[1]);
    add(p.aux[1], p.aux[2]);
    return out;
}

// Standard4 pipelining: X local step -> co-scheduled Z slot.
int co_z_slot(PauliType t, int slot) {
    if (t == PauliType::Z) return slot + 1;
    static const int xmap[4] = {3, 4, 1, 2};
    return xmap[slot];
}

struct FragmentDraft {
    PauliType pauli;
    Coord anchor;
    std::array<int, 4> slot_data{-1, -1, -1, -1};
    std::array<int, 3> aux{-1, -1, -1};
    CircuitForm form = CircuitForm::SlotPreserving;
    Shape shape = Shape::SplitFragment;
    int parent = -1;
    int single_aux_k = -1;  // for one-aux two-gons
};

}  // namespace

DeadSet parse_dead_set(const Layout& layout, std::istream& in) {
    DeadSet dead;
    std::string line;
    auto qubit_of = [&](const std::string& tok) {
        double r, c;
        char comma;
        std::istringstream ss(tok);
        if (!(ss >> r >> comma >> c) || comma != ',')
            throw std::runtime_error("bad coordinate: " + tok);
        Coord coord{int(std::lround(2 * r)), int(std::lround(2 * c))};
        int q = layout.find_qubit(coord);
        if (q < 0) throw std::runtime_error("no qubit at " + tok);
        return q;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string kind, a, b;
        ss >> kind;
        if (kind == "DATA") {
            ss >> a;
            int q = qubit_of(a);
            if (layout.qubits[q].role != Role::Data)
                throw std::runtime_error("not a data qubit: " + a);
            dead.dead_data.push_back(q);
        } else if (kind == "AUX") {
            ss >> a;
            int q = qubit_of(a);
            if (layout.qubits[q].role == Role::Data)
                throw std::runtime_error("not an auxiliary qubit: " + a);
            dead.dead_aux.push_back(q);
        } else if (kind == "CONN") {
            ss >> a >> b;
            dead.dead_connections.push_back(norm_pair(qubit_of(a), qubit_of(b)));
        } else {
            throw std::runtime_error("bad dead-set line: " + line);
        }
    }
    // connections must exist in some plaquette circuit
    std::set<std::pair<int, int>> valid;
    for (const auto& p : layout.plaquettes)
        for (auto e : plaquette_edges(p)) valid.insert(e);
    for (auto c : dead.dead_connections)
        if (!valid.count(c)) throw std::runtime_error("dead connection is not a measured pair");
    return dead;
}

void write_dead_set(const Layout& layout, const DeadSet& dead, std::ostream& out) {
    auto coord_str = [&](int q) {
        Coord c = layout.qubits[q].coord;
        std::ostringstream ss;
        ss << c.r2 / 2.0 << "," << c.c2 / 2.0;
        std::string s = ss.str();
        return s;
    };
    for (int q : dead.dead_data) out << "DATA " << coord_str(q) << "\n";
    for (int q : dead.dead_aux) out << "AUX " << coord_str(q) << "\n";
    for (auto [a, b] : dead.dead_connections)
        out << "CONN " << coord_str(a) << " " << coord_str(b) << "\n";
}

Layout apply_dead(const Layout& layout, const DeadSet& dead) {
    std::set<int> dd(dead.dead_data.begin(), dead.dead_data.end());
    std::set<int> da(dead.dead_aux.begin(), dead.dead_aux.end());
    std::set<std::pair<int, int>> dc(dead.dead_connections.begin(), dead.dead_connections.end());
    for (int q : dd)
        if (layout.qubits.at(q).role != Role::Data) throw std::invalid_argument("bad dead data");
    for (int q : da)
        if (layout.qubits.at(q).role == Role::Data) throw std::invalid_argument("bad dead aux");

    std::vector<FragmentDraft> drafts;
    for (const auto& p : layout.plaquettes) {
        // live intra-plaquette graph
        std::vector<std::pair<int, int>> edges;
        for (auto e : plaquette_edges(p)) {
            if (dd.count(e.first) || dd.count(e.second)) continue;
            if (da.count(e.first) || da.count(e.second)) continue;
            if (dc.count(e)) continue;
            edges.push_back(e);
        }
        std::vector<int> verts;
        for (int q : p.slot_data)
            if (q >= 0 && !dd.count(q)) verts.push_back(q);
        for (int q : p.aux)
            if (q >= 0 && !da.count(q)) verts.push_back(q);
        std::map<int, int> comp;
        for (int v : verts) comp[v] = v;
        std::function<int(int)> find = [&](int v) {
            while (comp[v] != v) v = comp[v] = comp[comp[v]];
            return v;
        };
        for (auto [a, b] : edges) comp[find(a)] = find(b);

        std::map<int, FragmentDraft> by_comp;
        for (int s = 0; s < 4; ++s) {
            int q = p.slot_data[s];
            if (q < 0 || dd.count(q)) continue;
            FragmentDraft& f = by_comp[find(q)];
            f.slot_data[s] = q;
        }
        for (int k = 0; k < 3; ++k) {
            int q = p.aux[k];
            if (q < 0 || da.count(q)) continue;
            int root = find(q);
            if (by_comp.count(root)) by_comp[root].aux[k] = q;
            // aux-only components dissolve
        }
        for (auto& [root, f] : by_comp) {
            f.pauli = p.pauli;
            f.anchor = p.anchor;
            f.parent = p.parent_id;
            int nd = 0;
            for (int q : f.slot_data) nd += q >= 0;
            if (nd == 0) continue;
            if (nd == 1) {
                f.form = CircuitForm::OneGon;
                f.aux = {-1, -1, -1};
                f.shape = Shape::OneGon;
            } else {
                // all data on one serving aux -> canonical single-aux two-gon
                bool a_side = f.slot_data[1] < 0 && f.slot_data[3] < 0 && f.aux[0] >= 0;
                bool c_side = f.slot_data[0] < 0 && f.slot_data[2] < 0 && f.aux[2] >= 0;
                if (a_side || c_side) {
                    int keep = a_side ? 0 : 2;
                    for (int k = 0; k < 3; ++k)
                        if (k != keep) f.aux[k] = -1;
                    f.single_aux_k = keep;
                    f.form = CircuitForm::TwoGonAlpha;  // slots fixed below
                    f.shape = nd == 2 ? Shape::TwoGon : Shape::SplitFragment;
                } else {
                    f.form = CircuitForm::SlotPreserving;
                    f.shape = nd == 4 ? Shape::FourGon
                                      : (nd == 3 ? Shape::ThreeGon : Shape::TwoGon);
                }
            }
            drafts.push_back(f);
        }
    }

    // slot occupancy of everything with fixed step assignments
    std::map<std::pair<int, int>, int> busy;  // (data qubit, z slot) -> count
    auto occupy = [&](const FragmentDraft& f, int sign) {
        if (f.single_aux_k >= 0) return;
        for (int s = 0; s < 4; ++s) {
            if (f.slot_data[s] < 0) continue;
            busy[{f.slot_data[s], co_z_slot(f.pauli, s)}] += sign;
        }
    };
    for (auto& f : drafts) occupy(f, +1);

    for (auto& f : drafts) {
        if (f.single_aux_k < 0) continue;
        // choose alpha or gamma so the re-slotted data avoid their neighbors
        int first = -1, second = -1;  // lower/left, upper/right
        if (f.single_aux_k == 0) { second = f.slot_data[0]; first = f.slot_data[2]; }
        else { first = f.slot_data[1]; second = f.slot_data[3]; }
        auto fits = [&](CircuitForm form) {
            int s_first, s_second;
            if (form == CircuitForm::TwoGonAlpha) {
                s_first = f.pauli == PauliType::Z ? 2 : co_z_slot(PauliType::X, 1);
                s_second = f.pauli == PauliType::Z ? 4 : co_z_slot(PauliType::X, 3);
            } else {
                s_second = f.pauli == PauliType::Z ? 1 : co_z_slot(PauliType::X, 0);
                s_first = f.pauli == PauliType::Z ? 3 : co_z_slot(PauliType::X, 2);
            }
            return busy[{first, s_first}] == 0 && busy[{second, s_second}] == 0;
        };
        CircuitForm natural =
            f.single_aux_k == 0 ? CircuitForm::TwoGonAlpha : CircuitForm::TwoGonGamma;
        CircuitForm other =
            natural == CircuitForm::TwoGonAlpha ? CircuitForm::TwoGonGamma : CircuitForm::TwoGonAlpha;
        if (fits(natural)) f.form = natural;
        else if (fits(other)) f.form = other;
        else throw std::logic_error("no conflict-free schedule for split two-gon");
        // mark the chosen slots busy for subsequent floating fragments
        int sf, ss;
        if (f.form == CircuitForm::TwoGonAlpha) {
            sf = f.pauli == PauliType::Z ? 2 : co_z_slot(PauliType::X, 1);
            ss = f.pauli == PauliType::Z ? 4 : co_z_slot(PauliType::X, 3);
        } else {
            ss = f.pauli == PauliType::Z ? 1 : co_z_slot(PauliType::X, 0);
            sf = f.pauli == PauliType::Z ? 3 : co_z_slot(PauliType::X, 2);
        }
        busy[{first, sf}]++;
        busy[{second, ss}]++;
    }

    Layout out;
    out.topology = layout.topology;
    out.d = layout.d;
    out.qubits = layout.qubits;
    out.qubit_at = layout.qubit_at;
    out.logicals = layout.logicals;
    for (auto& f : drafts) {
        Plaquette p;
        p.id = int(out.plaquettes.size());
        p.parent_id = f.parent;
        p.pauli = f.pauli;
        p.shape = f.shape;
        p.form = f.form;
        p.anchor = f.anchor;
        p.slot_data = f.slot_data;
        p.aux = f.aux;
        out.plaquettes.push_back(p);
    }
    // Logical strings through dead data are no longer usable; keep the ones
    // that survive, shifting straight strings away from the damage if needed.
    std::vector<LogicalString> kept;
    for (const auto& ls : out.logicals) {
        bool ok = true;
        for (int q : ls.path)
            if (dd.count(q)) ok = false;
        if (ok) kept.push_back(ls);
    }
    out.logicals = std::move(kept);
    return out;
}

std::vector<DeadRegion> region_layers(const Layout& layout, const DeadSet& dead) {
    std::vector<DeadRegion> regions;
    std::set<int> dd(dead.dead_data.begin(), dead.dead_data.end());
    // data qubits sharing a plaquette are adjacent
    std::map<int, std::vector<int>> adj;
    for (const auto& p : layout.plaquettes) {
        std::vector<int> dq;
        for (int q : p.slot_data)
            if (q >= 0 && dd.count(q)) dq.push_back(q);
        for (size_t i = 0; i < dq.size(); ++i)
            for (size_t j = i + 1; j < dq.size(); ++j) {
                adj[dq[i]].push_back(dq[j]);
                adj[dq[j]].push_back(dq[i]);
            }
    }
    std::set<int> seen;
    for (int q0 : dd) {
        if (seen.count(q0)) continue;
        DeadRegion reg;
        std::queue<int> bfs;
        bfs.push(q0);
        seen.insert(q0);
        int rlo = 1 << 30, rhi = -(1 << 30), clo = 1 << 30, chi = -(1 << 30);
        while (!bfs.empty()) {
            int q = bfs.front();
            bfs.pop();
            reg.dead_data.push_back(q);
            Coord c = layout.qubits[q].coord;
            rlo = std::min(rlo, c.r2);
            rhi = std::max(rhi, c.r2);
            clo = std::min(clo, c.c2);
            chi = std::max(chi, c.c2);
            for (int nq : adj[q])
                if (!seen.count(nq)) {
                    seen.insert(nq);
                    bfs.push(nq);
                }
        }
        std::sort(reg.dead_data.begin(), reg.dead_data.end());
        reg.row_extent = (rhi - rlo) / 2 + 1;
        reg.col_extent = (chi - clo) / 2 + 1;
        reg.layers = 1 + reg.row_extent + reg.col_extent;
        for (const auto& p : layout.plaquettes)
            for (int q : p.slot_data)
                if (q >= 0 && std::find(reg.dead_data.begin(), reg.dead_data.end(), q) !=
                                  reg.dead_data.end()) {
                    reg.plaquettes.push_back(p.id);
                    break;
                }
        regions.push_back(std::move(reg));
    }
    // damage that kills no data qubits forms l=2 regions
    if (regions.empty() && !dead.empty()) {
        DeadRegion reg;
        reg.layers = 2;
        regions.push_back(std::move(reg));
    }
    return regions;
}

int interleaved_measurements(int rounds, int layers, bool second_type) {
    // r+1-ceil((l-1)/2) and r+1-ceil(l/2) for the two superplaquette types
    int pen = second_type ? (layers + 1) / 2 : layers / 2;
    return rounds + 1 - pen;
}

SuperplaquetteReport superplaquettes(const Layout& damaged, const DeadSet& dead) {
    SuperplaquetteReport rep;
    rep.regions = region_layers(damaged, dead);

    // Group stabilizers whose product commutes with every opposite-type
    // measured operator: kernel of the anticommutation matrix, echelonized.
    std::vector<PauliString> stabs;
    for (const auto& p : damaged.plaquettes) stabs.push_back(damaged.stabilizer(p));
    for (PauliType t : {PauliType::Z, PauliType::X}) {
        std::vector<int> mine, other;
        for (const auto& p : damaged.plaquettes)
            (p.pauli == t ? mine : other).push_back(p.id);
        if (mine.empty()) continue;
        // rows: anticommutation with each opposite operator, cols: mine
        std::vector<BitRow> rows(other.size());
        for (size_t r = 0; r < other.size(); ++r) {
            rows[r] = BitRow(mine.size());
            for (size_t c = 0; c < mine.size(); ++c)
                if (!stabs[mine[c]].commutes_with(stabs[other[r]])) rows[r].flip(c);
        }
        // kernel basis by Gaussian elimination over columns
        std::vector<BitRow> sol;  // column combinations, over mine indices
        std::vector<BitRow> work = rows;
        std::vector<BitRow> id(mine.size());
        for (size_t c = 0; c < mine.size(); ++c) {
            id[c] = BitRow(mine.size());
            id[c].flip(c);
        }
        // column elimination: transpose approach
        size_t nr = other.size();
        std::vector<BitRow> cols(mine.size());
        for (size_t c = 0; c < mine.size(); ++c) {
            cols[c] = BitRow(nr ? nr : 1);
            for (size_t r = 0; r < nr; ++r)
                if (work[r].get(c)) cols[c].flip(r);
        }
        std::vector<long> pivot_row_of_col(mine.size(), -1);
        std::vector<int> pivot_cols;
        for (size_t c = 0; c < mine.size(); ++c) {
            BitRow cur = cols[c];
            BitRow combo = id[c];
            for (;;) {
                long pr = cur.lowest();
                if (pr < 0) {
                    SuperGroup g;
                    g.pauli = t;
                    for (uint32_t i : combo.ones()) g.members.push_back(mine[i]);
                    PauliString sup(damaged.num_qubits());
                    for (int pid : g.members) sup.mul_in_place(stabs[pid]);
                    for (size_t q = 0; q < damaged.num_qubits(); ++q)
                        if (sup.letter(q) != 0) g.support.push_back(int(q));
                    rep.groups.push_back(std::move(g));
                    break;
                }
                bool found = false;
                for (size_t pc = 0; pc < c; ++pc) {
                    if (pivot_row_of_col[pc] == pr) {
                        cur.xor_in(cols[pc]);
                        combo.xor_in(id[pc]);
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    pivot_row_of_col[c] = pr;
                    cols[c] = cur;
                    id[c] = combo;
                    break;
                }
            }
        }
    }

    // Distance summary through the damaged check structure (rotated patches).
    if (damaged.topology == Topology::RotatedGood || damaged.topology == Topology::RotatedBad) {
        const bool z_horizontal = damaged.topology == Topology::RotatedGood;
        for (PauliType err : {PauliType::Z, PauliType::X}) {
            // err-type chains are caught by opposite-type groups
            std::vector<const SuperGroup*> checks;
            for (const auto& g : rep.groups)
                if (g.pauli != err) checks.push_back(&g);
            // boundary sides for err strings: the sides their conjugate leaves from
            // data -> groups containing it
            std::map<int, std::vector<int>> at;
            for (size_t gi = 0; gi < checks.size(); ++gi)
                for (int q : checks[gi]->support) at[q].push_back(int(gi));
            // BFS over checks + two virtual boundaries; edge = data qubit
            // boundary side: data with fewer than 2 opposite checks
            const int B0 = int(checks.size()), B1 = B0 + 1;
            auto side_of = [&](int q) {
                // err strings run along their logical direction; endpoints sit on
                // the two edges the string terminates on
                Coord c = damaged.qubits[q].coord;
                int lim = 2 * (damaged.d - 1);
                bool horizontal = (err == PauliType::Z) == z_horizontal;
                if (horizontal) return (c.c2 == 0) ? B0 : (c.c2 == lim ? B1 : -1);
                return (c.r2 == 0) ? B0 : (c.r2 == lim ? B1 : -1);
            };
            std::vector<std::vector<std::pair<int, int>>> adj(B1 + 1);  // (node, viaqubit)
            for (const auto& q : damaged.qubits) {
                if (q.role != Role::Data) continue;
                std::vector<int> ends;
                auto it = at.find(int(q.index));
                if (it != at.end())
                    for (int g : it->second) ends.push_back(g);
                int sb = side_of(int(q.index));
                if (sb >= 0 && ends.size() < 2) ends.push_back(sb);
                if (ends.size() == 2) {
                    adj[ends[0]].push_back({ends[1], int(q.index)});
                    adj[ends[1]].push_back({ends[0], int(q.index)});
                }
            }
            // BFS shortest B0 -> B1 in number of data qubits
            std::vector<int> distv(B1 + 1, -1);
            std::queue<int> bfs;
            bfs.push(B0);
            distv[B0] = 0;
            while (!bfs.empty()) {
                int u = bfs.front();
                bfs.pop();
                for (auto [v, q] : adj[u]) {
                    if (distv[v] < 0) {
                        distv[v] = distv[u] + 1;
                        bfs.push(v);
                    }
                }
            }
            int dd = distv[B1];
            if (err == PauliType::Z) rep.z_distance = dd;
            else rep.x_distance = dd;
        }
    }
    return rep;
}

}  // namespace pairgraft
