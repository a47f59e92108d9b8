#include "pairgraft/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace pairgraft {

namespace {

// Slot conventions for a cell anchored at data corner (r, c), doubled coords.
// Z plaquette: aux chain horizontal at row r+1/2; data 1=NW 2=SE 3=SW 4=NE.
// X plaquette: aux chain vertical at col c+1/2; data 1=NE 2=SW 3=NW 4=SE.
Coord z_slot_coord(Coord a, int slot) {
    switch (slot) {
        case 0: return {a.r2, a.c2};          // NW
        case 1: return {a.r2 + 2, a.c2 + 2};  // SE
        case 2: return {a.r2 + 2, a.c2};      // SW
        default: return {a.r2, a.c2 + 2};     // NE
    }
}
Coord x_slot_coord(Coord a, int slot) {
    switch (slot) {
        case 0: return {a.r2, a.c2 + 2};      // NE
        case 1: return {a.r2 + 2, a.c2};      // SW
        case 2: return {a.r2, a.c2};          // NW
        default: return {a.r2 + 2, a.c2 + 2};  // SE
    }
}
Coord slot_coord(PauliType t, Coord a, int slot) {
    return t == PauliType::Z ? z_slot_coord(a, slot) : x_slot_coord(a, slot);
}
Coord aux_coord(PauliType t, Coord a, int k) {  // k: 0=A,1=B,2=C
    if (t == PauliType::Z) return {a.r2 + 1, a.c2 + k};
    return {a.r2 + k, a.c2 + 1};
}

struct Builder {
    Layout lay;
    int wrap2 = 0;  // doubled period for torus, 0 otherwise

    Coord norm(Coord c) const {
        if (!wrap2) return c;
        auto m = [&](int v) { return ((v % wrap2) + wrap2) % wrap2; };
        return {m(c.r2), m(c.c2)};
    }
    int get_or_add(Coord c, Role role) {
        c = norm(c);
        auto it = lay.qubit_at.find(coord_key(c));
        if (it != lay.qubit_at.end()) return it->second;
        int idx = int(lay.qubits.size());
        lay.qubits.push_back(QubitId{uint32_t(idx), c, role});
        lay.qubit_at.emplace(coord_key(c), idx);
        return idx;
    }
    int data_at(Coord c) const {
        int q = lay.find_qubit(norm(c));
        return (q >= 0 && lay.qubits[q].role == Role::Data) ? q : -1;
    }

    void add_data_grid(int rows, int cols) {
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) get_or_add({2 * r, 2 * c}, Role::Data);
    }

    // Adds a full cell; slots with no data qubit present are left empty
    // (slot-preserving reduction). Returns plaquette id.
    int add_cell(PauliType t, Coord anchor, Shape shape) {
        Plaquette p;
        p.id = int(lay.plaquettes.size());
        p.parent_id = p.id;
        p.pauli = t;
        p.shape = shape;
        p.anchor = anchor;
        for (int s = 0; s < 4; ++s) p.slot_data[s] = data_at(slot_coord(t, anchor, s));
        for (int k = 0; k < 3; ++k) {
            Role role = k == 0 ? Role::AuxA : (k == 1 ? Role::AuxB : Role::AuxC);
            p.aux[k] = get_or_add(aux_coord(t, anchor, k), role);
        }
        lay.plaquettes.push_back(p);
        return p.id;
    }

    // Single-aux 2-gon: two data qubits sharing one auxiliary between them.
    // aux_k selects which chain position (A or C) of the virtual cell survives.
    int add_two_gon(PauliType t, Coord anchor, int aux_k, CircuitForm form) {
        Plaquette p;
        p.id = int(lay.plaquettes.size());
        p.parent_id = p.id;
        p.pauli = t;
        p.shape = Shape::TwoGon;
        p.form = form;
        p.anchor = anchor;
        // Slots served by aux A: 1 and 3 (0,2 zero-based); by C: 2 and 4 (1,3).
        const int s0 = aux_k == 0 ? 0 : 3;  // second data (upper for Z, right for X)
        const int s1 = aux_k == 0 ? 2 : 1;  // first data (lower for Z, left for X)
        p.slot_data[s0] = data_at(slot_coord(t, anchor, s0));
        p.slot_data[s1] = data_at(slot_coord(t, anchor, s1));
        if (p.slot_data[s0] < 0 || p.slot_data[s1] < 0)
            throw std::logic_error("two-gon data missing");
        Role role = aux_k == 0 ? Role::AuxA : Role::AuxC;
        p.aux[aux_k] = get_or_add(aux_coord(t, anchor, aux_k), role);
        lay.plaquettes.push_back(p);
        return p.id;
    }
};

void build_rotated(Builder& b, int d, bool good) {
    b.add_data_grid(d, d);
    // Interior cells, Z on even parity.
    for (int r = 0; r < d - 1; ++r)
        for (int c = 0; c < d - 1; ++c)
            b.add_cell((r + c) % 2 == 0 ? PauliType::Z : PauliType::X, {2 * r, 2 * c},
                       Shape::FourGon);
    if (good) {
        // Z two-gons on vertical edges, X on horizontal ones.
        for (int r = 1; r < d - 1; r += 2)  // left, virtual cell (r,-1), keeps C
            b.add_two_gon(PauliType::Z, {2 * r, -2}, 2, CircuitForm::TwoGonAlpha);
        for (int r = 0; r < d - 1; r += 2)  // right, virtual cell (r,d-1), keeps A
            b.add_two_gon(PauliType::Z, {2 * r, 2 * (d - 1)}, 0, CircuitForm::TwoGonGamma);
        for (int c = 0; c < d - 1; c += 2)  // top, virtual cell (-1,c), keeps C
            b.add_two_gon(PauliType::X, {-2, 2 * c}, 2, CircuitForm::TwoGonAlpha);
        for (int c = 1; c < d - 1; c += 2)  // bottom, virtual cell (d-1,c), keeps A
            b.add_two_gon(PauliType::X, {2 * (d - 1), 2 * c}, 0, CircuitForm::TwoGonGamma);
    } else {
        // Bad choice: Z two-gons on horizontal edges, X on vertical ones.
        // These pairs have no shared auxiliary, so the full chain survives.
        for (int c = 1; c < d - 1; c += 2)  // top, virtual Z cell (-1,c)
            b.add_cell(PauliType::Z, {-2, 2 * c}, Shape::TwoGon);
        for (int c = 0; c < d - 1; c += 2)  // bottom, virtual Z cell (d-1,c)
            b.add_cell(PauliType::Z, {2 * (d - 1), 2 * c}, Shape::TwoGon);
        for (int r = 0; r < d - 1; r += 2)  // left, virtual X cell (r,-1)
            b.add_cell(PauliType::X, {2 * r, -2}, Shape::TwoGon);
        for (int r = 1; r < d - 1; r += 2)  // right, virtual X cell (r,d-1)
            b.add_cell(PauliType::X, {2 * r, 2 * (d - 1)}, Shape::TwoGon);
    }
}

void build_unrotated(Builder& b, int d) {
    const int n = 2 * d - 1;
    const int mid = d - 1;
    auto inside = [&](int r, int c) {
        return r >= 0 && c >= 0 && r < n && c < n &&
               std::abs(r - mid) + std::abs(c - mid) <= mid;
    };
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (inside(r, c)) b.get_or_add({2 * r, 2 * c}, Role::Data);
    for (int r = -1; r < n; ++r) {
        for (int c = -1; c < n; ++c) {
            int corners = inside(r, c) + inside(r, c + 1) + inside(r + 1, c) +
                          inside(r + 1, c + 1);
            if (corners < 3) continue;
            PauliType t = ((r + c) % 2 + 2) % 2 == 0 ? PauliType::Z : PauliType::X;
            b.add_cell(t, {2 * r, 2 * c}, corners == 4 ? Shape::FourGon : Shape::ThreeGon);
        }
    }
}

void build_torus(Builder& b, int L) {
    b.wrap2 = 2 * L;
    b.add_data_grid(L, L);
    for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c)
            b.add_cell((r + c) % 2 == 0 ? PauliType::Z : PauliType::X, {2 * r, 2 * c},
                       Shape::FourGon);
}

std::vector<int> straight_path(const Layout& lay, bool horizontal, int fixed, int len) {
    std::vector<int> path;
    for (int k = 0; k < len; ++k) {
        Coord c = horizontal ? Coord{2 * fixed, 2 * k} : Coord{2 * k, 2 * fixed};
        int q = lay.find_qubit(c);
        if (q < 0) throw std::logic_error("logical path qubit missing");
        path.push_back(q);
    }
    return path;
}

}  // namespace

PauliString Layout::stabilizer(const Plaquette& p) const {
    PauliString s(num_qubits());
    for (int q : p.slot_data) {
        if (q < 0) continue;
        if (p.pauli == PauliType::Z) s.set_z(q, !s.z_bit(q));
        else s.set_x(q, !s.x_bit(q));
    }
    return s;
}

PauliString Layout::string_operator(const LogicalString& ls) const {
    PauliString s(num_qubits());
    for (int q : ls.path) {
        if (ls.pauli == PauliType::Z) s.set_z(q, true);
        else s.set_x(q, true);
    }
    return s;
}

Layout build_layout(Topology topology, int d) {
    if (topology == Topology::Torus) {
        if (d < 4 || d % 2 != 0)
            throw std::invalid_argument("torus linear size must be even and >= 4");
    } else {
        if (d < 3 || d % 2 != 1)
            throw std::invalid_argument("patch distance must be odd and >= 3");
    }
    Builder b;
    b.lay.topology = topology;
    b.lay.d = d;
    switch (topology) {
        case Topology::RotatedGood: build_rotated(b, d, true); break;
        case Topology::RotatedBad: build_rotated(b, d, false); break;
        case Topology::Unrotated: build_unrotated(b, d); break;
        case Topology::Torus: build_torus(b, d); break;
    }
    Layout& lay = b.lay;

    switch (topology) {
        case Topology::RotatedGood:
            lay.logicals.push_back({"Z", PauliType::Z, straight_path(lay, true, 0, d)});
            lay.logicals.push_back({"X", PauliType::X, straight_path(lay, false, 0, d)});
            break;
        case Topology::RotatedBad:
            lay.logicals.push_back({"Z", PauliType::Z, straight_path(lay, false, 0, d)});
            lay.logicals.push_back({"X", PauliType::X, straight_path(lay, true, 0, d)});
            break;
        case Topology::Unrotated: {
            std::vector<int> zpath, xpath;
            for (int k = 0; k < d; ++k) {
                int q = lay.find_qubit({2 * k, 2 * (d - 1 - k)});
                if (q < 0) throw std::logic_error("unrotated Z path");
                zpath.push_back(q);
            }
            for (int k = 0; k < d; ++k) {
                int q = lay.find_qubit({2 * (d - 1 + k), 2 * k});
                if (q < 0) throw std::logic_error("unrotated X path");
                xpath.push_back(q);
            }
            std::reverse(zpath.begin(), zpath.end());  // both start at the shared left tip
            lay.logicals.push_back({"Z", PauliType::Z, zpath});
            lay.logicals.push_back({"X", PauliType::X, xpath});
            break;
        }
        case Topology::Torus:
            lay.logicals.push_back({"Z1", PauliType::Z, straight_path(lay, true, 0, d)});
            lay.logicals.push_back({"X1", PauliType::X, straight_path(lay, false, 0, d)});
            lay.logicals.push_back({"Z2", PauliType::Z, straight_path(lay, false, 0, d)});
            lay.logicals.push_back({"X2", PauliType::X, straight_path(lay, true, 0, d)});
            break;
    }
    check_layout(lay);
    return lay;
}

std::vector<LogicalString> logical_strings(const Layout& layout) { return layout.logicals; }

Layout make_isolated_plaquette(PauliType t) {
    Builder b;
    b.lay.topology = Topology::RotatedGood;
    b.lay.d = 3;
    b.add_data_grid(2, 2);
    b.add_cell(t, {0, 0}, Shape::FourGon);
    return b.lay;
}

void check_layout(const Layout& layout) {
    std::vector<PauliString> stabs;
    stabs.reserve(layout.plaquettes.size());
    for (const auto& p : layout.plaquettes) stabs.push_back(layout.stabilizer(p));
    for (size_t i = 0; i < stabs.size(); ++i)
        for (size_t j = i + 1; j < stabs.size(); ++j)
            if (!stabs[i].commutes_with(stabs[j]))
                throw std::logic_error("plaquette stabilizers do not commute");
    std::vector<PauliString> strs;
    for (const auto& ls : layout.logicals) strs.push_back(layout.string_operator(ls));
    for (size_t i = 0; i < strs.size(); ++i)
        for (const auto& s : stabs)
            if (!strs[i].commutes_with(s))
                throw std::logic_error("logical string fails to commute with a stabilizer");
    // Conjugate pairs anticommute; unrelated pairs commute.
    for (size_t i = 0; i < layout.logicals.size(); ++i) {
        for (size_t j = i + 1; j < layout.logicals.size(); ++j) {
            bool conj = layout.logicals[i].label.back() == layout.logicals[j].label.back() &&
                        layout.logicals[i].pauli != layout.logicals[j].pauli;
            if (layout.logicals.size() == 2) conj = true;
            bool anti = !strs[i].commutes_with(strs[j]);
            if (conj != anti) throw std::logic_error("logical pairing symplectic check failed");
        }
    }
    // Each data qubit sits in at most two plaquettes of each type.
    std::vector<std::array<int, 2>> counts(layout.num_qubits(), {0, 0});
    for (const auto& p : layout.plaquettes)
        for (int q : p.slot_data)
            if (q >= 0) counts[q][p.pauli == PauliType::Z ? 0 : 1]++;
    for (size_t q = 0; q < layout.num_qubits(); ++q) {
        if (layout.qubits[q].role != Role::Data) continue;
        if (counts[q][0] > 2 || counts[q][1] > 2)
            throw std::logic_error("data qubit in more than two plaquettes of a type");
    }
}

const char* to_string(Topology t) {
    switch (t) {
        case Topology::RotatedGood: return "rotated-good";
        case Topology::RotatedBad: return "rotated-bad";
        case Topology::Unrotated: return "unrotated";
        case Topology::Torus: return "torus";
    }
    return "?";
}

const char* to_string(PauliType t) { return t == PauliType::Z ? "Z" : "X"; }

std::optional<Topology> topology_from_string(const std::string& s) {
    if (s == "rotated-good") return Topology::RotatedGood;
    if (s == "rotated-bad") return Topology::RotatedBad;
    if (s == "unrotated") return Topology::Unrotated;
    if (s == "torus") return Topology::Torus;
    return std::nullopt;
}

}  // namespace pairgraft
