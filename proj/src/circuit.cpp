#include "pairgraft/circuit.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <cstdlib>
#include <stdexcept>

namespace pairgraft {

namespace {

// One measurement of a plaquette's micro-circuit, slot-level.
struct Micro {
    enum class What : uint8_t { DataAux, AuxAux, SingleAux, SingleData };
    What what;
    int a = 0;  // DataAux/SingleData: data slot 0..3; SingleAux/AuxAux: aux index 0..2
    int b = 0;  // AuxAux: second aux index
};

// local step -> measurements, for one round. Local steps are 1-based.
using MicroTable = std::vector<std::vector<Micro>>;

MicroTable standard_table() {
    MicroTable t(7);
    t[1] = {{Micro::What::DataAux, 0}, {Micro::What::SingleAux, 1}, {Micro::What::SingleAux, 2}};
    t[2] = {{Micro::What::AuxAux, 0, 1}, {Micro::What::DataAux, 1}};
    t[3] = {{Micro::What::AuxAux, 1, 2}, {Micro::What::DataAux, 2}};
    t[4] = {{Micro::What::DataAux, 3}, {Micro::What::SingleAux, 1}, {Micro::What::SingleAux, 0}};
    t.resize(5);
    return t;
}

MicroTable hook_preventing_table() {
    MicroTable t(8);
    t[1] = {{Micro::What::DataAux, 0}, {Micro::What::SingleAux, 1}, {Micro::What::SingleAux, 2}};
    t[2] = {{Micro::What::AuxAux, 0, 1}, {Micro::What::DataAux, 1}};
    t[3] = {{Micro::What::AuxAux, 1, 2}};
    t[4] = {{Micro::What::AuxAux, 0, 1}};
    t[5] = {{Micro::What::AuxAux, 1, 2}, {Micro::What::DataAux, 2}};
    t[6] = {{Micro::What::DataAux, 3}, {Micro::What::SingleAux, 1}, {Micro::What::SingleAux, 0}};
    t[7] = {{Micro::What::SingleAux, 0}, {Micro::What::SingleAux, 1}, {Micro::What::SingleAux, 2}};
    return t;
}

// Single-rail: step 1 loses the B measurement, which reappears alone as
// local step 5 at the end of the period.
MicroTable single_rail_table() {
    MicroTable t(6);
    t[1] = {{Micro::What::DataAux, 0}, {Micro::What::SingleAux, 2}};
    t[2] = {{Micro::What::AuxAux, 0, 1}, {Micro::What::DataAux, 1}};
    t[3] = {{Micro::What::AuxAux, 1, 2}, {Micro::What::DataAux, 2}};
    t[4] = {{Micro::What::DataAux, 3}, {Micro::What::SingleAux, 1}, {Micro::What::SingleAux, 0}};
    t[5] = {{Micro::What::SingleAux, 1}};
    return t;
}

// Reduced templates for plaquettes that keep a single auxiliary qubit.
// Slot numbers refer to the parent cell's addressing slots.
MicroTable alpha_table(int period) {
    MicroTable t(period + 1);
    t[1] = {{Micro::What::SingleAux, -1}};  // -1: the surviving aux
    t[2] = {{Micro::What::DataAux, -2}};    // -2: first data slot
    int second = period == 7 ? 6 : 4;
    t[second] = {{Micro::What::DataAux, -3}};  // -3: second data slot
    return t;
}
MicroTable gamma_table(int period) {
    MicroTable t(period + 1);
    t[1] = {{Micro::What::DataAux, -3}};
    int first = period == 7 ? 5 : 3;
    int close = period == 7 ? 6 : 4;
    t[first] = {{Micro::What::DataAux, -2}};
    t[close] = {{Micro::What::SingleAux, -1}};
    return t;
}
MicroTable one_gon_table(int period, int slot) {
    MicroTable t(period + 1);
    int local = slot + 1;
    if (period == 7) local = slot < 2 ? slot + 1 : slot + 3;  // 1,2 -> 1,2; 3,4 -> 5,6
    t[local] = {{Micro::What::SingleData, slot}};
    return t;
}

int period_of(Schedule s) {
    switch (s) {
        case Schedule::Standard4: return 4;
        case Schedule::HookPreventing7: return 7;
        case Schedule::SingleRail5: return 5;
        case Schedule::InterleavedSync: return 4;
    }
    return 4;
}

// Interleaved circuits address the X plaquettes' data in a different order.
int remap_slot(const Circuit& c, const Plaquette& p, int slot) {
    if (c.schedule == Schedule::InterleavedSync && p.pauli == PauliType::X) {
        static const int perm[4] = {2, 3, 0, 1};  // 1=NW 2=SE 3=NE 4=SW
        return perm[slot];
    }
    return slot;
}

struct Emitter {
    Circuit& c;
    std::vector<std::vector<Instruction>>& steps;

    void ensure(int step) {
        if (int(steps.size()) <= step) steps.resize(step + 1);
    }
    void meas(int step, char b0, int q0, char b1 = 'I', int q1 = -1, int plaq = -1,
              int round = -1, int local = 0) {
        ensure(step);
        Instruction ins;
        ins.kind = Instruction::Kind::MeasureP;
        ins.step = step;
        ins.plaquette = plaq;
        ins.round = round;
        ins.local_step = local;
        ins.targets[0] = q0;
        ins.bases[0] = b0;
        ins.n_targets = 1;
        if (q1 >= 0) {
            ins.targets[1] = q1;
            ins.bases[1] = b1;
            ins.n_targets = 2;
        }
        steps[step].push_back(ins);
    }
};

void emit_micro(Emitter& em, const Circuit& c, const Plaquette& p, const Micro& m, int step,
                int round, int local) {
    const char same = p.pauli == PauliType::Z ? 'Z' : 'X';
    const char conj = p.pauli == PauliType::Z ? 'X' : 'Z';
    auto the_aux = [&]() {
        for (int k = 0; k < 3; ++k)
            if (p.aux[k] >= 0) return k;
        return -1;
    };
    switch (m.what) {
        case Micro::What::DataAux: {
            int slot = m.a;
            if (slot == -2 || slot == -3) {
                // alpha/gamma templates: first/second surviving data slot
                int k = the_aux();
                int s_second = k == 0 ? 0 : 3;
                int s_first = k == 0 ? 2 : 1;
                slot = (m.a == -2) ? s_first : s_second;
                int dq = p.slot_data[remap_slot(c, p, slot)];
                em.meas(step, same, dq, same, p.aux[k], p.id, round, local);
                return;
            }
            int aux_k = (slot == 0 || slot == 2) ? 0 : 2;  // slots 1,3 via A; 2,4 via C
            int dq = p.slot_data[remap_slot(c, p, slot)];
            if (dq >= 0 && p.aux[aux_k] >= 0) {
                em.meas(step, same, dq, same, p.aux[aux_k], p.id, round, local);
            } else if (p.aux[aux_k] >= 0) {
                // reduction: missing data turns the pair into a single-aux measurement
                em.meas(step, same, p.aux[aux_k], 'I', -1, p.id, round, local);
            } else if (dq >= 0) {
                throw std::logic_error("data slot present without its auxiliary");
            }
            return;
        }
        case Micro::What::AuxAux:
            if (p.aux[m.a] >= 0 && p.aux[m.b] >= 0)
                em.meas(step, conj, p.aux[m.a], conj, p.aux[m.b], p.id, round, local);
            return;
        case Micro::What::SingleAux: {
            int k = m.a == -1 ? the_aux() : m.a;
            if (k < 0 || p.aux[k] < 0) return;
            // B carries the same-type single measurement, A/C the conjugate.
            char b = (k == 1) ? same : conj;
            if (m.a == -1) b = conj;
            em.meas(step, b, p.aux[k], 'I', -1, p.id, round, local);
            return;
        }
        case Micro::What::SingleData: {
            int dq = p.slot_data[remap_slot(c, p, m.a)];
            if (dq >= 0) em.meas(step, same, dq, 'I', -1, p.id, round, local);
            return;
        }
    }
}

const MicroTable& table_for(const Circuit& c, const Plaquette& p) {
    static const MicroTable std4 = standard_table();
    static const MicroTable hook7 = hook_preventing_table();
    static const MicroTable rail5 = single_rail_table();
    static const MicroTable a4 = alpha_table(4), g4 = gamma_table(4);
    static const MicroTable a7 = alpha_table(7), g7 = gamma_table(7);
    static const std::array<MicroTable, 4> one4 = {one_gon_table(4, 0), one_gon_table(4, 1),
                                                   one_gon_table(4, 2), one_gon_table(4, 3)};
    static const std::array<MicroTable, 4> one7 = {one_gon_table(7, 0), one_gon_table(7, 1),
                                                   one_gon_table(7, 2), one_gon_table(7, 3)};
    const bool seven = c.schedule == Schedule::HookPreventing7;
    switch (p.form) {
        case CircuitForm::TwoGonAlpha: return seven ? a7 : a4;
        case CircuitForm::TwoGonGamma: return seven ? g7 : g4;
        case CircuitForm::OneGon: {
            int slot = 0;
            for (int s = 0; s < 4; ++s)
                if (p.slot_data[s] >= 0) slot = s;
            return seven ? one7[slot] : one4[slot];
        }
        case CircuitForm::SlotPreserving:
            if (seven) return hook7;
            if (c.schedule == Schedule::SingleRail5 && p.pauli == PauliType::Z) return rail5;
            return std4;
    }
    return std4;
}

// Global step of (plaquette type, round, local step). round -1 = ramp-up,
// round `rounds` = ramp-down slot of the closing single measurement.
int global_step(const Circuit& c, PauliType t, int round, int local) {
    const int r = c.rounds;
    switch (c.schedule) {
        case Schedule::Standard4: {
            int off = t == PauliType::Z ? 0 : 2;
            if (round < 0) return off;                 // ramp 0
            if (round >= r) return 4 * r + 1 + off;    // ramp 5
            return 4 * round + local + off;
        }
        case Schedule::InterleavedSync: {
            if (round < 0) return 0;
            if (round >= r) return 4 * r + 1;
            return 4 * round + local;
        }
        case Schedule::HookPreventing7: {
            int off = t == PauliType::Z ? 0 : c.pipeline_option + 1;
            if (round < 0) return off;
            if (round >= r) return -1;  // step 7 already closes the round
            return 7 * round + local + off;
        }
        case Schedule::SingleRail5: {
            if (t == PauliType::Z) {
                if (round < 0) return 0;
                if (round >= r) return 5 * r + 1;  // final X_C
                return 5 * round + local;
            }
            if (round < 0) return 2;
            if (round >= r) return 5 * r + 3;
            static const int xslot[5] = {0, 3, 5, 6, 7};  // local 1..4
            return 5 * round + xslot[local];
        }
    }
    return -1;
}

bool has_ramp0(const Plaquette& p, Schedule s) {
    if (p.form == CircuitForm::OneGon) return false;
    if (p.form == CircuitForm::TwoGonAlpha) return false;  // opens itself at local 1
    if (p.form == CircuitForm::TwoGonGamma) return true;
    return p.aux[0] >= 0 || s == Schedule::HookPreventing7;
}
bool has_ramp5(const Plaquette& p, Schedule s) {
    if (s == Schedule::HookPreventing7) return false;
    if (p.form == CircuitForm::OneGon) return false;
    if (p.form == CircuitForm::TwoGonAlpha) return true;  // needs a closing single
    if (p.form == CircuitForm::TwoGonGamma) return false;
    return p.aux[2] >= 0;
}

void emit_ramp(Emitter& em, const Circuit& c, const Plaquette& p, bool up) {
    const char conj = p.pauli == PauliType::Z ? 'X' : 'Z';
    int step = global_step(c, p.pauli, up ? -1 : c.rounds, 0);
    if (step < 0) return;
    auto single = [&](int k) {
        if (p.aux[k] >= 0) em.meas(step, conj, p.aux[k], 'I', -1, p.id, up ? -1 : c.rounds, up ? 0 : 5);
    };
    if (c.schedule == Schedule::HookPreventing7) {
        if (!up) return;
        // ramp-up applies step 7's single-qubit measurements (with redundancy)
        single(0);
        if (p.aux[1] >= 0)
            em.meas(step, p.pauli == PauliType::Z ? 'Z' : 'X', p.aux[1], 'I', -1, p.id, -1, 0);
        single(2);
        return;
    }
    switch (p.form) {
        case CircuitForm::SlotPreserving:
            single(up ? 0 : 2);  // X_A opens, X_C closes
            // single-rail moves the B opener out of step 1; restore it here
            if (up && c.schedule == Schedule::SingleRail5 && p.pauli == PauliType::Z &&
                p.aux[1] >= 0)
                em.meas(step, 'Z', p.aux[1], 'I', -1, p.id, -1, 0);
            return;
        case CircuitForm::TwoGonAlpha:
            if (!up)
                for (int k = 0; k < 3; ++k) single(k);
            return;
        case CircuitForm::TwoGonGamma:
            if (up)
                for (int k = 0; k < 3; ++k) single(k);
            return;
        case CircuitForm::OneGon: return;
    }
}

void check_no_double_addressing(const Circuit& c) {
    for (const auto& step : c.steps) {
        std::vector<int> seen;
        for (const auto& ins : step) {
            for (int i = 0; i < ins.n_targets; ++i) {
                int q = ins.targets[i];
                if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
                    throw std::logic_error("qubit addressed twice in step " +
                                           std::to_string(ins.step));
                }
                seen.push_back(q);
            }
        }
    }
}

void fill_idles(Circuit& c) {
    const Layout& lay = c.lay();
    std::vector<char> live(lay.num_qubits(), 0);
    for (const auto& p : lay.plaquettes) {
        for (int q : p.slot_data)
            if (q >= 0) live[q] = 1;
        for (int q : p.aux)
            if (q >= 0) live[q] = 1;
    }
    for (auto& step : c.steps) {
        std::vector<char> used(lay.num_qubits(), 0);
        int step_idx = &step - &c.steps[0];
        for (const auto& ins : step)
            for (int i = 0; i < ins.n_targets; ++i) used[ins.targets[i]] = 1;
        for (size_t q = 0; q < lay.num_qubits(); ++q) {
            if (!live[q] || used[q]) continue;
            Instruction idle;
            idle.kind = Instruction::Kind::Idle;
            idle.n_targets = 1;
            idle.targets[0] = int(q);
            idle.step = step_idx;
            step.push_back(idle);
        }
    }
}

void assign_meas_indices(Circuit& c) {
    int idx = 0;
    for (auto& step : c.steps)
        for (auto& ins : step)
            if (ins.is_measurement()) ins.meas_index = idx++;
    c.num_measurements = idx;
}

}  // namespace

std::vector<const Instruction*> Circuit::measurements() const {
    std::vector<const Instruction*> out(num_measurements);
    for (const auto& step : steps)
        for (const auto& ins : step)
            if (ins.is_measurement()) out[ins.meas_index] = &ins;
    return out;
}

Circuit generate(std::shared_ptr<const Layout> layout, Schedule schedule, int rounds,
                 int pipeline_option) {
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (pipeline_option < 1 || pipeline_option > 4)
        throw std::invalid_argument("pipeline option must be in 1..4");
    Circuit c;
    c.layout = std::move(layout);
    c.schedule = schedule;
    c.pipeline_option = pipeline_option;
    c.rounds = rounds;
    Emitter em{c, c.steps};
    for (const auto& p : c.lay().plaquettes) {
        const MicroTable& tab = table_for(c, p);
        if (has_ramp0(p, schedule)) emit_ramp(em, c, p, true);
        for (int round = 0; round < rounds; ++round) {
            for (int local = 1; local < int(tab.size()); ++local) {
                int step = global_step(c, p.pauli, round, local);
                for (const Micro& m : tab[local]) emit_micro(em, c, p, m, step, round, local);
            }
        }
        if (has_ramp5(p, schedule)) emit_ramp(em, c, p, false);
    }
    // drop trailing empty steps, keep interior ones
    while (!c.steps.empty() && c.steps.back().empty()) c.steps.pop_back();
    for (size_t s = 0; s < c.steps.size(); ++s) {
        std::stable_sort(c.steps[s].begin(), c.steps[s].end(),
                         [](const Instruction& a, const Instruction& b) {
                             if (a.plaquette != b.plaquette) return a.plaquette < b.plaquette;
                             return false;
                         });
        for (auto& ins : c.steps[s]) ins.step = int(s);
    }
    check_no_double_addressing(c);
    fill_idles(c);
    assign_meas_indices(c);
    if (schedule == Schedule::SingleRail5 && has_rail_conflicts(c))
        throw std::logic_error("single-rail schedule has interference conflicts");
    return c;
}

Circuit generate_hook_preventing(std::shared_ptr<const Layout> layout, int pipeline_option,
                                 int rounds) {
    return generate(std::move(layout), Schedule::HookPreventing7, rounds, pipeline_option);
}

Circuit memory_circuit(std::shared_ptr<const Layout> layout, Schedule schedule,
                       int noisy_rounds, int pipeline_option) {
    if (noisy_rounds < 1) throw std::invalid_argument("noisy rounds must be >= 1");
    Circuit c = generate(std::move(layout), schedule, noisy_rounds + 3, pipeline_option);
    mark_noise_window(c);
    return c;
}

std::vector<int> readout_plaquette(const Circuit& circuit, const Plaquette& p, int round) {
    if (round < 0 || round >= circuit.rounds) throw std::out_of_range("round out of range");
    if (p.id < 0 || p.id >= int(circuit.lay().plaquettes.size()))
        throw std::out_of_range("plaquette not in layout");
    const char same = p.pauli == PauliType::Z ? 'Z' : 'X';
    std::vector<int> out;
    for (const auto& step : circuit.steps) {
        for (const auto& ins : step) {
            if (!ins.is_measurement() || ins.plaquette != p.id || ins.round != round) continue;
            if (ins.bases[0] != same) continue;  // same-type outcomes form the readout
            out.push_back(ins.meas_index);
        }
    }
    return out;
}

void mark_noise_window(Circuit& circuit) {
    int lo = circuit.num_steps(), hi = -1;
    for (auto& step : circuit.steps) {
        for (auto& ins : step) {
            if (!ins.is_measurement()) continue;
            ins.noisy = ins.round >= 1 && ins.round <= circuit.rounds - 3;
            if (ins.noisy) {
                lo = std::min(lo, ins.step);
                hi = std::max(hi, ins.step);
            }
        }
    }
    for (auto& step : circuit.steps)
        for (auto& ins : step)
            if (!ins.is_measurement()) ins.noisy = ins.step >= lo && ins.step <= hi;
}

std::vector<RailSegment> interference_segments(const Circuit& c, const Instruction& ins) {
    if (!ins.is_measurement()) return {};
    const Layout& lay = c.lay();
    auto coord = [&](int q) { return lay.qubits[q].coord; };
    std::vector<RailSegment> segs;
    if (ins.n_targets == 2) {
        Coord a = coord(ins.targets[0]), b = coord(ins.targets[1]);
        if (a.r2 == b.r2) {
            // horizontal pair: rail between the two columns
            int cl = std::min(a.c2, b.c2);
            if (std::abs(a.c2 - b.c2) > 1) cl = std::max(a.c2, b.c2);  // torus wrap
            segs.push_back({2 * cl + 1, 2 * a.r2, 2 * a.r2});
        } else {
            // vertical pair: rail right of the column
            int rl = std::min(a.r2, b.r2), rh = std::max(a.r2, b.r2);
            int gap = 2 * a.c2 + 1;
            if (rh - rl > 1 && c.lay().is_torus()) {
                // wrap pair: split the seam-crossing interval
                int w4 = 4 * c.lay().d;
                segs.push_back({gap, 2 * rh, w4 - 1});
                segs.push_back({gap, 0, 0});
            } else {
                segs.push_back({gap, 2 * rl, 2 * rh});
            }
        }
    } else {
        // single-qubit loops: Z measurements take the right rail; X measurements
        // take the left rail on integer columns and the right rail on half ones
        Coord a = coord(ins.targets[0]);
        int gap;
        if (ins.bases[0] == 'Z') gap = 2 * a.c2 + 1;
        else gap = (a.c2 % 2 == 0) ? 2 * a.c2 - 1 : 2 * a.c2 + 1;
        segs.push_back({gap, 2 * a.r2, 2 * a.r2});
    }
    if (c.lay().is_torus()) {
        int w = 4 * c.lay().d;
        for (auto& s : segs) s.gap = ((s.gap % w) + w) % w;
    }
    return segs;
}

bool has_rail_conflicts(const Circuit& c, std::vector<std::pair<int, int>>* conflicts) {
    bool any = false;
    for (const auto& step : c.steps) {
        std::vector<std::pair<RailSegment, const Instruction*>> all;
        for (const auto& ins : step) {
            if (!ins.is_measurement()) continue;
            auto segs = interference_segments(c, ins);
            for (const auto& s : segs) {
                for (const auto& [t, other] : all) {
                    if (s.gap == t.gap && !(s.row_hi < t.row_lo || t.row_hi < s.row_lo)) {
                        if (!conflicts) return true;
                        any = true;
                        conflicts->push_back({ins.meas_index, other->meas_index});
                    }
                }
            }
            for (const auto& s : segs) all.push_back({s, &ins});
        }
    }
    return any;
}

const char* to_string(Schedule s) {
    switch (s) {
        case Schedule::Standard4: return "standard4";
        case Schedule::HookPreventing7: return "hook-preventing7";
        case Schedule::SingleRail5: return "single-rail5";
        case Schedule::InterleavedSync: return "interleaved-sync";
    }
    return "?";
}

std::string schedule_token(Schedule s, int pipeline_option) {
    std::string t = to_string(s);
    if (s == Schedule::HookPreventing7) t += "-p" + std::to_string(pipeline_option);
    return t;
}

void write_circuit_text(const Circuit& c, std::ostream& out) {
    out << "TOPOLOGY " << to_string(c.lay().topology) << "\n";
    out << "D " << c.lay().d << "\n";
    out << "SCHEDULE " << schedule_token(c.schedule, c.pipeline_option) << "\n";
    out << "ROUNDS " << c.rounds << "\n";
    for (int s = 0; s < c.num_steps(); ++s) {
        out << "STEP " << s << "\n";
        for (const auto& ins : c.steps[s]) {
            if (ins.is_measurement()) {
                out << "MPP " << ins.bases[0] << ins.targets[0];
                if (ins.n_targets == 2) out << " " << ins.bases[1] << ins.targets[1];
                out << "\n";
            } else {
                out << "IDLE " << ins.targets[0] << "\n";
            }
        }
    }
}

Circuit parse_circuit_text(std::istream& in) {
    std::string line;
    std::string topo_s, sched_s;
    int d = -1, rounds = -1;
    std::vector<std::vector<Instruction>> steps;
    int cur = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        ss >> tok;
        if (tok == "TOPOLOGY") ss >> topo_s;
        else if (tok == "D") ss >> d;
        else if (tok == "SCHEDULE") ss >> sched_s;
        else if (tok == "ROUNDS") ss >> rounds;
        else if (tok == "STEP") {
            ss >> cur;
            if (int(steps.size()) <= cur) steps.resize(cur + 1);
        } else if (tok == "MPP") {
            Instruction ins;
            ins.kind = Instruction::Kind::MeasureP;
            ins.step = cur;
            std::string t;
            while (ss >> t) {
                ins.bases[ins.n_targets] = t[0];
                ins.targets[ins.n_targets] = std::stoi(t.substr(1));
                ins.n_targets++;
            }
            steps[cur].push_back(ins);
        } else if (tok == "IDLE") {
            Instruction ins;
            ins.kind = Instruction::Kind::Idle;
            ins.step = cur;
            ins.n_targets = 1;
            ss >> ins.targets[0];
            steps[cur].push_back(ins);
        } else {
            throw std::runtime_error("bad circuit line: " + line);
        }
    }
    auto topo = topology_from_string(topo_s);
    if (!topo || d < 0 || rounds < 0) throw std::runtime_error("incomplete circuit header");
    Schedule sched = Schedule::Standard4;
    int pipe = 4;
    if (sched_s.rfind("hook-preventing7", 0) == 0) {
        sched = Schedule::HookPreventing7;
        auto pos = sched_s.find("-p");
        if (pos != std::string::npos) pipe = std::stoi(sched_s.substr(pos + 2));
    } else if (sched_s == "single-rail5") sched = Schedule::SingleRail5;
    else if (sched_s == "interleaved-sync") sched = Schedule::InterleavedSync;
    else if (sched_s != "standard4") throw std::runtime_error("unknown schedule " + sched_s);

    // The parsed instruction list is authoritative so round-trips are exact.
    Circuit c;
    c.layout = std::make_shared<Layout>(build_layout(*topo, d));
    c.schedule = sched;
    c.pipeline_option = pipe;
    c.rounds = rounds;
    c.steps = std::move(steps);
    for (size_t s = 0; s < c.steps.size(); ++s)
        for (auto& ins : c.steps[s]) ins.step = int(s);
    assign_meas_indices(c);
    return c;
}

}  // namespace pairgraft
