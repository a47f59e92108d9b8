#include "pairgraft/dem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <optional>
#include <unordered_map>

namespace pairgraft {

namespace {

long highest_bit(const BitRow& r) {
    for (size_t i = r.w.size(); i-- > 0;) {
        if (r.w[i]) return long(i * 64 + 63 - __builtin_clzll(r.w[i]));
    }
    return -1;
}

PauliString instruction_pauli(const Circuit& c, const Instruction& ins) {
    PauliString p(c.lay().num_qubits());
    for (int i = 0; i < ins.n_targets; ++i) {
        int q = ins.targets[i];
        switch (ins.bases[i]) {
            case 'X': p.set_x(q, true); break;
            case 'Z': p.set_z(q, true); break;
            case 'Y': p.set_x(q, true); p.set_z(q, true); break;
            default: throw std::logic_error("bad measurement basis");
        }
    }
    return p;
}

struct SymbolicRun {
    std::vector<BitRow> exprs;
    std::vector<char> consts;
};

SymbolicRun run_symbolic(const Circuit& c, const std::vector<PauliString>& seeds,
                         const std::vector<PauliString>& final_ops,
                         std::vector<OutcomeExpr>* final_exprs) {
    Tableau tab(c.lay().num_qubits());
    for (const auto& s : seeds) tab.seed(s);
    SymbolicRun run;
    run.exprs.resize(c.num_measurements);
    run.consts.resize(c.num_measurements, 0);
    for (const auto& step : c.steps) {
        for (const auto& ins : step) {
            if (!ins.is_measurement()) continue;
            OutcomeExpr e = tab.apply_measurement(instruction_pauli(c, ins));
            BitRow row;
            for (uint32_t b : e.random_bits) row.flip(b);
            run.exprs[ins.meas_index] = std::move(row);
            run.consts[ins.meas_index] = e.constant;
        }
    }
    if (final_exprs) {
        final_exprs->clear();
        for (const auto& op : final_ops) final_exprs->push_back(tab.apply_measurement(op));
    }
    return run;
}

// Online GF(2) elimination over outcome expressions, newest-bit pivots,
// rows swapped so pivots always carry the most recent member combination.
struct Eliminator {
    struct Row {
        BitRow expr;
        BitRow members;
        int latest = -1;
        bool cc = false;
    };
    std::unordered_map<long, Row> pivots;
    bool prefer_recent = true;

    // returns the closed detector row if the inserted row was dependent
    std::optional<Row> insert(Row row) {
        for (;;) {
            long b = highest_bit(row.expr);
            if (b < 0) return row;
            auto it = pivots.find(b);
            if (it == pivots.end()) {
                pivots.emplace(b, std::move(row));
                return std::nullopt;
            }
            bool swap_in = prefer_recent ? row.latest > it->second.latest
                                         : row.latest < it->second.latest;
            if (swap_in) std::swap(row, it->second);
            row.expr.xor_in(it->second.expr);
            row.members.xor_in(it->second.members);
            row.cc ^= it->second.cc;
            row.latest = int(highest_bit_of(row.members));
        }
    }

    static long highest_bit_of(const BitRow& r) {
        for (size_t i = r.w.size(); i-- > 0;)
            if (r.w[i]) return long(i * 64 + 63 - __builtin_clzll(r.w[i]));
        return -1;
    }

    // reduce an external expression; true if it lands on zero
    bool reduce(BitRow& expr, BitRow& members, bool& cc) const {
        for (;;) {
            long b = highest_bit(expr);
            if (b < 0) return true;
            auto it = pivots.find(b);
            if (it == pivots.end()) return false;
            expr.xor_in(it->second.expr);
            members.xor_in(it->second.members);
            cc ^= it->second.cc;
        }
    }
};

// Per-qubit measurement timeline for frame propagation.
struct Timelines {
    // (step, meas_index, letter 1=X 2=Y 3=Z) per qubit, time-ordered
    std::vector<std::vector<std::array<int, 3>>> per_qubit;

    explicit Timelines(const Circuit& c) : per_qubit(c.lay().num_qubits()) {
        for (const auto& step : c.steps) {
            for (const auto& ins : step) {
                if (!ins.is_measurement()) continue;
                for (int i = 0; i < ins.n_targets; ++i) {
                    int letter = ins.bases[i] == 'X' ? 1 : (ins.bases[i] == 'Y' ? 2 : 3);
                    per_qubit[ins.targets[i]].push_back({ins.step, ins.meas_index, letter});
                }
            }
        }
    }

    // Appends outcomes after `step` on qubit q anticommuting with `letter`.
    void collect(int q, int step, int letter, std::vector<int>& out) const {
        for (const auto& e : per_qubit[q]) {
            if (e[0] <= step) continue;
            if (e[2] != letter) out.push_back(e[1]);
        }
    }
};

void xor_reduce(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    std::vector<int> out;
    for (size_t i = 0; i < v.size();) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) % 2) out.push_back(v[i]);
        i = j;
    }
    v = std::move(out);
}

int letter_of(char b) { return b == 'X' ? 1 : (b == 'Y' ? 2 : 3); }

}  // namespace

std::vector<OutcomeExpr> symbolic_outcomes(const Circuit& circuit,
                                           const std::vector<PauliString>& seeds) {
    SymbolicRun run = run_symbolic(circuit, seeds, {}, nullptr);
    std::vector<OutcomeExpr> out(circuit.num_measurements);
    for (int m = 0; m < circuit.num_measurements; ++m) {
        out[m].constant = run.consts[m];
        for (uint32_t b : run.exprs[m].ones()) out[m].random_bits.push_back(b);
    }
    return out;
}

std::vector<int> DetectorModel::project(const std::vector<int>& flipped_outcomes) const {
    std::vector<int> dets;
    for (int m : flipped_outcomes) {
        for (int k = incidence_offset[m]; k < incidence_offset[m + 1]; ++k)
            dets.push_back(incidence[k]);
    }
    xor_reduce(dets);
    return dets;
}

DetectorModel find_detectors(std::shared_ptr<const Circuit> circuit, MemoryBasis basis) {
    DetectorModel model;
    model.circuit = circuit;
    const Circuit& c = *circuit;
    const Layout& lay = c.lay();

    SymbolicRun mixed = run_symbolic(c, {}, {}, nullptr);

    // Greedy time-ordered elimination keyed by newest random bit. Pivot rows
    // are swapped toward the most recent member set, which telescopes the
    // accumulated plaquette chains into per-round-pair detectors.
    auto meas = c.measurements();
    Eliminator elim;
    for (int m = 0; m < c.num_measurements; ++m) {
        Eliminator::Row row;
        row.expr = mixed.exprs[m];
        row.members.flip(size_t(m));
        row.latest = m;
        row.cc = mixed.consts[m];
        if (auto det = elim.insert(std::move(row))) {
            Detector d;
            d.id = int(model.detectors.size());
            for (uint32_t i : det->members.ones()) d.measurements.push_back(int(i));
            d.parity = det->cc;
            const Instruction* latest = meas[d.measurements.back()];
            d.plaquette = latest->plaquette;
            d.round = latest->round;
            if (d.measurements.size() == 2) {
                const Instruction* a = meas[d.measurements[0]];
                const Instruction* b2 = meas[d.measurements[1]];
                bool same = a->n_targets == b2->n_targets;
                for (int i = 0; same && i < a->n_targets; ++i)
                    same = a->targets[i] == b2->targets[i] && a->bases[i] == b2->bases[i];
                d.kind = same ? Detector::Kind::LowWeight : Detector::Kind::HighWeight;
            }
            model.detectors.push_back(std::move(d));
        }
    }

    // Outcome -> detector incidence.
    std::vector<std::vector<int>> inc(c.num_measurements);
    for (const auto& det : model.detectors)
        for (int m : det.measurements) inc[m].push_back(det.id);
    model.incidence_offset.assign(c.num_measurements + 1, 0);
    for (int m = 0; m < c.num_measurements; ++m)
        model.incidence_offset[m + 1] = model.incidence_offset[m] + int(inc[m].size());
    model.incidence.reserve(model.incidence_offset.back());
    for (auto& v : inc) model.incidence.insert(model.incidence.end(), v.begin(), v.end());

    // Memory observables: logical strings of the requested type(s), read out
    // as ideal end-of-circuit string measurements plus whatever prior outcomes
    // are needed to make the parity deterministic (frame corrections).
    for (PauliType pt : {PauliType::Z, PauliType::X}) {
        if (basis == MemoryBasis::Z && pt != PauliType::Z) continue;
        if (basis == MemoryBasis::X && pt != PauliType::X) continue;
        std::vector<PauliString> seeds;
        for (const auto& q : lay.qubits) {
            if (q.role != Role::Data) continue;
            PauliString s(lay.num_qubits());
            if (pt == PauliType::Z) s.set_z(q.index, true);
            else s.set_x(q.index, true);
            seeds.push_back(std::move(s));
        }
        std::vector<PauliString> ops;
        std::vector<const LogicalString*> strs;
        for (const auto& ls : lay.logicals) {
            if (ls.pauli != pt) continue;
            ops.push_back(lay.string_operator(ls));
            strs.push_back(&ls);
        }
        if (ops.empty()) continue;
        std::vector<OutcomeExpr> final_exprs;
        SymbolicRun seeded = run_symbolic(c, seeds, ops, &final_exprs);
        // Earliest-preference pivots: corrections fold into the clean opening
        // rounds, which no in-window fault can ever flip.
        Eliminator selim;
        selim.prefer_recent = false;
        for (int m = 0; m < c.num_measurements; ++m) {
            Eliminator::Row row;
            row.expr = seeded.exprs[m];
            row.members.flip(size_t(m));
            row.latest = m;
            row.cc = seeded.consts[m];
            selim.insert(std::move(row));
        }
        for (size_t k = 0; k < ops.size(); ++k) {
            BitRow expr;
            for (uint32_t b : final_exprs[k].random_bits) expr.flip(b);
            BitRow members;
            bool cc = final_exprs[k].constant;
            if (!selim.reduce(expr, members, cc))
                throw std::logic_error("logical observable " + strs[k]->label +
                                       " is not deterministic in this memory experiment");
            LogicalObservable obs;
            obs.label = strs[k]->label;
            obs.pauli = pt;
            obs.init_parity = cc;
            obs.op = ops[k];
            for (uint32_t m : members.ones()) obs.measurements.push_back(int(m));
            obs.measurements.push_back(c.num_measurements + int(model.observables.size()));
            model.observables.push_back(std::move(obs));
        }
    }
    if (model.observables.size() > 32) throw std::logic_error("too many observables");

    // outcome -> observable incidence (real measurements only)
    std::vector<std::vector<int>> oinc(c.num_measurements);
    for (size_t k = 0; k < model.observables.size(); ++k)
        for (int m : model.observables[k].measurements)
            if (m < c.num_measurements) oinc[m].push_back(int(k));
    model.obs_incidence_offset.assign(c.num_measurements + 1, 0);
    for (int m = 0; m < c.num_measurements; ++m)
        model.obs_incidence_offset[m + 1] = model.obs_incidence_offset[m] + int(oinc[m].size());
    model.obs_incidence.reserve(model.obs_incidence_offset.back());
    for (auto& v : oinc)
        model.obs_incidence.insert(model.obs_incidence.end(), v.begin(), v.end());
    return model;
}

std::vector<int> propagate_fault(const Circuit& circuit, int step,
                                 const std::vector<std::pair<int, char>>& pauli_errors,
                                 const std::vector<int>& readout_flips) {
    Timelines tl(circuit);
    std::vector<int> flips;
    for (auto [q, p] : pauli_errors) {
        if (p == 'I') continue;
        tl.collect(q, step, letter_of(p), flips);
    }
    for (int m : readout_flips) flips.push_back(m);
    xor_reduce(flips);
    return flips;
}

std::vector<Fault> enumerate_faults(const DetectorModel& model, double p, bool idle_noise) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p must be in (0,1)");
    const Circuit& c = *model.circuit;
    Timelines tl(c);
    const int nobs = int(model.observables.size());

    // detector flips and observable mask for a single-qubit Pauli at (q, step):
    // flipped outcomes hit detectors and correction sets, and the residual
    // Pauli flips the end-time string readout if it anticommutes
    auto flips_of = [&](int q, int step, int letter) {
        std::vector<int> outs;
        tl.collect(q, step, letter, outs);
        uint32_t m = 0;
        for (int out : outs)
            for (int k = model.obs_incidence_offset[out]; k < model.obs_incidence_offset[out + 1];
                 ++k)
                m ^= 1u << model.obs_incidence[k];
        for (int k = 0; k < nobs; ++k) {
            int ol = model.observables[k].op.letter(q);
            if (ol != 0 && ol != letter) m ^= 1u << k;
        }
        return std::make_pair(model.project(outs), m);
    };
    auto obs_of_outcome = [&](int out) {
        uint32_t m = 0;
        for (int k = model.obs_incidence_offset[out]; k < model.obs_incidence_offset[out + 1];
             ++k)
            m ^= 1u << model.obs_incidence[k];
        return m;
    };

    std::vector<Fault> out;
    auto push = [&](FaultOrigin origin, double prob, std::vector<int> syn, uint32_t mask) {
        if (syn.empty() && mask != 0)
            throw std::logic_error(
                "undetectable single fault flips a logical observable (meas " +
                std::to_string(origin.meas_index) + " step " + std::to_string(origin.step) +
                " q" + std::to_string(origin.qubit0) + ":" + origin.pauli0 +
                (origin.qubit1 >= 0 ? " q" + std::to_string(origin.qubit1) + ":" + origin.pauli1
                                    : std::string()) +
                (origin.readout_flip ? " +readout" : "") + ")");
        Fault f;
        f.id = int(out.size());
        f.origin = origin;
        f.probability = prob;
        f.syndrome = std::move(syn);
        f.logical_mask = mask;
        out.push_back(std::move(f));
    };

    for (const auto& step : c.steps) {
        for (const auto& ins : step) {
            if (!ins.noisy) continue;
            if (!ins.is_measurement()) {
                if (!idle_noise) continue;
                for (int l = 1; l <= 3; ++l) {
                    FaultOrigin o;
                    o.step = ins.step;
                    o.qubit0 = ins.targets[0];
                    o.pauli0 = "IXYZ"[l];
                    auto [syn, mask] = flips_of(o.qubit0, ins.step, l);
                    push(o, p / 3, std::move(syn), mask);
                }
                continue;
            }
            std::vector<int> own = model.project({ins.meas_index});
            uint32_t own_obs = obs_of_outcome(ins.meas_index);
            if (ins.n_targets == 1) {
                // {(P,F)} minus {(I,0)}: 7 variants
                for (int l = 0; l <= 3; ++l) {
                    std::vector<int> base;
                    uint32_t lmask = 0;
                    if (l) std::tie(base, lmask) = flips_of(ins.targets[0], ins.step, l);
                    for (int f = 0; f < 2; ++f) {
                        if (l == 0 && f == 0) continue;
                        FaultOrigin o;
                        o.meas_index = ins.meas_index;
                        o.step = ins.step;
                        o.qubit0 = ins.targets[0];
                        o.pauli0 = "IXYZ"[l];
                        o.readout_flip = f;
                        std::vector<int> syn = base;
                        uint32_t mask = lmask;
                        if (f) {
                            syn.insert(syn.end(), own.begin(), own.end());
                            xor_reduce(syn);
                            mask ^= own_obs;
                        }
                        push(o, p / 7, std::move(syn), mask);
                    }
                }
            } else {
                std::array<std::vector<int>, 4> fl0, fl1;
                std::array<uint32_t, 4> mk0{}, mk1{};
                for (int l = 1; l <= 3; ++l) {
                    std::tie(fl0[l], mk0[l]) = flips_of(ins.targets[0], ins.step, l);
                    std::tie(fl1[l], mk1[l]) = flips_of(ins.targets[1], ins.step, l);
                }
                for (int l0 = 0; l0 <= 3; ++l0) {
                    for (int l1 = 0; l1 <= 3; ++l1) {
                        for (int f = 0; f < 2; ++f) {
                            if (l0 == 0 && l1 == 0 && f == 0) continue;
                            FaultOrigin o;
                            o.meas_index = ins.meas_index;
                            o.step = ins.step;
                            o.qubit0 = ins.targets[0];
                            o.qubit1 = ins.targets[1];
                            o.pauli0 = "IXYZ"[l0];
                            o.pauli1 = "IXYZ"[l1];
                            o.readout_flip = f;
                            std::vector<int> syn;
                            if (l0) syn.insert(syn.end(), fl0[l0].begin(), fl0[l0].end());
                            if (l1) syn.insert(syn.end(), fl1[l1].begin(), fl1[l1].end());
                            if (f) syn.insert(syn.end(), own.begin(), own.end());
                            xor_reduce(syn);
                            uint32_t mask = (l0 ? mk0[l0] : 0) ^ (l1 ? mk1[l1] : 0);
                            if (f) mask ^= own_obs;
                            push(o, p / 31, std::move(syn), mask);
                        }
                    }
                }
            }
        }
    }
    return out;
}

void DecodingGraph::build_adjacency() {
    std::vector<std::vector<int>> adj(num_detectors);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.id);
        if (e.v >= 0) adj[e.v].push_back(e.id);
    }
    adj_offset.assign(num_detectors + 1, 0);
    for (int v = 0; v < num_detectors; ++v)
        adj_offset[v + 1] = adj_offset[v] + int(adj[v].size());
    adj_edges.clear();
    adj_edges.reserve(adj_offset.back());
    for (auto& v : adj) adj_edges.insert(adj_edges.end(), v.begin(), v.end());
}

DecodingGraph split_and_build(const std::vector<Fault>& faults, const DetectorModel& model) {
    DecodingGraph g;
    g.num_detectors = model.num_detectors();
    g.num_observables = int(model.observables.size());
    g.kinds.resize(g.num_detectors);
    for (int i = 0; i < g.num_detectors; ++i) g.kinds[i] = model.detectors[i].kind;

    // Group faults into classes by (syndrome, mask).
    struct Class {
        std::vector<int> syn;
        uint32_t mask = 0;
        double prob = 0;
        std::vector<int> fault_ids;
        bool pure_readout = true;
    };
    std::map<std::pair<std::vector<int>, uint32_t>, int> class_of;
    std::vector<Class> classes;
    for (const auto& f : faults) {
        if (f.syndrome.empty()) continue;
        auto key = std::make_pair(f.syndrome, f.logical_mask);
        auto it = class_of.find(key);
        int id;
        if (it == class_of.end()) {
            id = int(classes.size());
            class_of.emplace(key, id);
            classes.push_back(Class{f.syndrome, f.logical_mask, 0.0, {}, true});
        } else {
            id = it->second;
        }
        Class& cl = classes[id];
        cl.prob = cl.prob * (1 - f.probability) + f.probability * (1 - cl.prob);
        cl.fault_ids.push_back(f.id);
        bool pr = f.origin.pauli0 == 'I' && f.origin.pauli1 == 'I' && f.origin.readout_flip;
        cl.pure_readout = cl.pure_readout && pr;
    }

    // Availability of single-detector masks (for 2-fault decomposability).
    std::map<std::pair<int, uint32_t>, bool> single;
    for (const auto& cl : classes)
        if (cl.syn.size() == 1) single[{cl.syn[0], cl.mask}] = true;

    auto decomposable_pair = [&](const Class& cl) {
        if (cl.syn.size() != 2) return false;
        const uint32_t bound = 1u << g.num_observables;
        for (uint32_t ma = 0; ma < bound; ++ma) {
            if (single.count({cl.syn[0], ma}) && single.count({cl.syn[1], ma ^ cl.mask}))
                return true;
        }
        return false;
    };

    // Edge assembly keyed by (u, v, mask).
    std::map<std::tuple<int, int, uint32_t>, int> edge_of;
    auto edge_for = [&](int u, int v, uint32_t mask) {
        if (v >= 0 && u > v) std::swap(u, v);
        auto key = std::make_tuple(u, v, mask);
        auto it = edge_of.find(key);
        if (it != edge_of.end()) return it->second;
        GraphEdge e;
        e.id = int(g.edges.size());
        e.u = u;
        e.v = v;
        e.mask = mask;
        edge_of.emplace(key, e.id);
        g.edges.push_back(std::move(e));
        return g.edges.back().id;
    };
    auto add_prob = [&](int eid, double prob, const std::vector<int>& fault_ids) {
        GraphEdge& e = g.edges[eid];
        e.probability = e.probability * (1 - prob) + prob * (1 - e.probability);
        e.fault_ids.insert(e.fault_ids.end(), fault_ids.begin(), fault_ids.end());
    };

    std::vector<int> primitive_edge_of_class(classes.size(), -1);
    std::vector<int> nonprim;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        const Class& cl = classes[ci];
        if (cl.syn.size() == 1) {
            primitive_edge_of_class[ci] = edge_for(cl.syn[0], -1, cl.mask);
        } else if (cl.syn.size() == 2 && !decomposable_pair(cl)) {
            primitive_edge_of_class[ci] = edge_for(cl.syn[0], cl.syn[1], cl.mask);
        } else {
            nonprim.push_back(int(ci));
        }
    }
    for (size_t ci = 0; ci < classes.size(); ++ci)
        if (primitive_edge_of_class[ci] >= 0)
            add_prob(primitive_edge_of_class[ci], classes[ci].prob, classes[ci].fault_ids);

    // detector -> primitive edges
    std::vector<std::vector<int>> prim_at(g.num_detectors);
    for (const auto& e : g.edges) {
        prim_at[e.u].push_back(e.id);
        if (e.v >= 0) prim_at[e.v].push_back(e.id);
    }
    auto edge_syn = [&](int eid) {
        const GraphEdge& e = g.edges[eid];
        std::vector<int> s{e.u};
        if (e.v >= 0) s.push_back(e.v);
        return s;
    };

    // Decompose a (syndrome, mask) into primitive edges; deterministic DFS.
    std::function<bool(std::vector<int>, uint32_t, int, std::vector<int>&)> dfs =
        [&](std::vector<int> syn, uint32_t mask, int depth, std::vector<int>& comp) -> bool {
        if (syn.empty()) return mask == 0;
        if (depth == 0) return false;
        int d = syn[0];
        for (int eid : prim_at[d]) {
            if (!comp.empty() && std::find(comp.begin(), comp.end(), eid) != comp.end()) continue;
            std::vector<int> rest = syn;
            auto es = edge_syn(eid);
            rest.insert(rest.end(), es.begin(), es.end());
            xor_reduce(rest);
            comp.push_back(eid);
            if (dfs(std::move(rest), mask ^ g.edges[eid].mask, depth - 1, comp)) return true;
            comp.pop_back();
        }
        return false;
    };

    for (int ci : nonprim) {
        const Class& cl = classes[ci];
        std::vector<int> comp;
        bool is_rule = cl.pure_readout && cl.syn.size() == 3;
        if (is_rule) {
            // force the dangling component to sit on the LowWeight detector
            int j = -1;
            for (int d : cl.syn)
                if (g.kinds[d] == Detector::Kind::LowWeight) j = j < 0 ? d : -2;
            if (j < 0)
                throw std::logic_error("pure readout 3-fault without unique LowWeight trigger");
            bool ok = false;
            for (int eid : prim_at[j]) {
                if (!g.edges[eid].dangling()) continue;
                std::vector<int> rest = cl.syn;
                rest.erase(std::find(rest.begin(), rest.end(), j));
                comp = {eid};
                if (dfs(rest, cl.mask ^ g.edges[eid].mask, 3, comp)) {
                    ok = true;
                    break;
                }
            }
            if (!ok)
                throw std::logic_error("re-weighting fault has no consistent split (fault id " +
                                       std::to_string(cl.fault_ids[0]) + ")");
            ReweightRule rule;
            rule.trigger = j;
            for (size_t k = 1; k < comp.size(); ++k) rule.edge_ids.push_back(comp[k]);
            std::sort(rule.edge_ids.begin(), rule.edge_ids.end());
            bool dup = false;
            for (const auto& r : g.rules)
                if (r.trigger == rule.trigger && r.edge_ids == rule.edge_ids) dup = true;
            if (!dup) g.rules.push_back(rule);
        } else {
            if (!dfs(cl.syn, cl.mask, 4, comp)) {
                const Fault& f = faults[cl.fault_ids[0]];
                throw std::logic_error(
                    "fault has no decomposition into primitive faults (meas " +
                    std::to_string(f.origin.meas_index) + ", syndrome weight " +
                    std::to_string(cl.syn.size()) + ")");
            }
        }
        for (int eid : comp) add_prob(eid, cl.prob, cl.fault_ids);
    }

    for (auto& e : g.edges) {
        double q = std::min(std::max(e.probability, 1e-300), 0.5 - 1e-12);
        e.weight = std::log((1 - q) / q);
    }
    g.build_adjacency();
    return g;
}

void write_dem_text(const DetectorModel& model, const std::vector<Fault>& faults,
                    const DecodingGraph& graph, std::ostream& out) {
    for (const auto& d : model.detectors) {
        out << "DET " << d.id << " " << (d.kind == Detector::Kind::LowWeight ? "low" : "high")
            << " m:";
        for (size_t i = 0; i < d.measurements.size(); ++i)
            out << (i ? "," : "") << d.measurements[i];
        out << "\n";
    }
    for (const auto& o : model.observables) {
        out << "OBS " << o.label << " m:";
        for (size_t i = 0; i < o.measurements.size(); ++i)
            out << (i ? "," : "") << o.measurements[i];
        out << "\n";
    }
    for (const auto& f : faults) {
        out << "FAULT " << f.id << " p:" << f.probability << " d:";
        for (size_t i = 0; i < f.syndrome.size(); ++i) out << (i ? "," : "") << f.syndrome[i];
        out << " l:" << f.logical_mask << "\n";
    }
    for (const auto& e : graph.edges) {
        out << "EDGE " << e.u << " ";
        if (e.dangling()) out << "B";
        else out << e.v;
        out << " " << e.weight << " " << e.mask << "\n";
    }
    for (const auto& r : graph.rules) {
        out << "RULE " << r.trigger << " ->";
        for (int e : r.edge_ids) out << " " << e;
        out << "\n";
    }
}

const char* to_string(MemoryBasis b) {
    switch (b) {
        case MemoryBasis::Z: return "Z";
        case MemoryBasis::X: return "X";
        case MemoryBasis::Both: return "both";
    }
    return "?";
}

}  // namespace pairgraft
