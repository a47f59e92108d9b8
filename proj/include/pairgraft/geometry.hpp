#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pairgraft/pauli.hpp"

namespace pairgraft {

enum class Role : uint8_t { Data, AuxA, AuxB, AuxC };
enum class PauliType : uint8_t { Z, X };
enum class Topology : uint8_t { RotatedGood, RotatedBad, Unrotated, Torus };
enum class Shape : uint8_t { FourGon, ThreeGon, TwoGon, OneGon, SplitFragment };

// Step-slot assignment for a plaquette's measurement circuit.
//   SlotPreserving: the 4-gon schedule with missing data reduced to
//                   single-aux measurements (4-gons, 3-gons, 3-aux 2-gons).
//   TwoGonAlpha:    single-aux 2-gon, aux single @slot1, first data @slot2,
//                   second data @slot4.
//   TwoGonGamma:    single-aux 2-gon, second data @slot1, first data @slot3,
//                   aux single @slot4.
//   OneGon:         bare data measurement at its original slot.
enum class CircuitForm : uint8_t { SlotPreserving, TwoGonAlpha, TwoGonGamma, OneGon };

// Coordinates on the half-integer grid, stored doubled so they stay integral.
struct Coord {
    int r2 = 0;
    int c2 = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
};

inline uint64_t coord_key(Coord c) {
    return (uint64_t(uint32_t(c.r2)) << 32) | uint32_t(c.c2);
}

struct QubitId {
    uint32_t index = 0;
    Coord coord;
    Role role = Role::Data;
};

struct Plaquette {
    int id = -1;
    PauliType pauli = PauliType::Z;
    Shape shape = Shape::FourGon;
    CircuitForm form = CircuitForm::SlotPreserving;
    Coord anchor;                       // cell anchor (doubled coords, may be virtual)
    std::array<int, 4> slot_data{-1, -1, -1, -1};  // addressing slots 1..4 -> qubit
    std::array<int, 3> aux{-1, -1, -1};            // A,B,C -> qubit
    int parent_id = -1;                 // original plaquette for split fragments

    int n_data() const {
        int n = 0;
        for (int q : slot_data) n += (q >= 0);
        return n;
    }
    int n_aux() const {
        int n = 0;
        for (int q : aux) n += (q >= 0);
        return n;
    }
    std::vector<int> data_qubits() const {
        std::vector<int> out;
        for (int q : slot_data) if (q >= 0) out.push_back(q);
        return out;
    }
};

struct LogicalString {
    std::string label;
    PauliType pauli = PauliType::Z;
    std::vector<int> path;  // data qubit indices, connected chain
};

struct Layout {
    Topology topology = Topology::RotatedGood;
    int d = 3;  // distance for patches; linear size L for the torus
    std::vector<QubitId> qubits;
    std::vector<Plaquette> plaquettes;
    std::vector<LogicalString> logicals;
    std::unordered_map<uint64_t, int> qubit_at;  // coord_key -> qubit index

    bool is_torus() const { return topology == Topology::Torus; }
    size_t num_qubits() const { return qubits.size(); }
    int find_qubit(Coord c) const {
        auto it = qubit_at.find(coord_key(c));
        return it == qubit_at.end() ? -1 : it->second;
    }
    // Pauli string of a plaquette stabilizer (data support only).
    PauliString stabilizer(const Plaquette& p) const;
    PauliString string_operator(const LogicalString& s) const;
};

Layout build_layout(Topology topology, int d);

// Single free-standing plaquette (4 data, 3 aux), for circuit checks.
Layout make_isolated_plaquette(PauliType t);

// Returns the layout's logical strings (computed at build time).
std::vector<LogicalString> logical_strings(const Layout& layout);

// Validates commutation structure; throws std::logic_error on violation.
void check_layout(const Layout& layout);

const char* to_string(Topology t);
const char* to_string(PauliType t);
std::optional<Topology> topology_from_string(const std::string& s);

}  // namespace pairgraft
