#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "pairgraft/geometry.hpp"

namespace pairgraft {

struct DeadSet {
    std::vector<int> dead_data;
    std::vector<int> dead_aux;
    std::vector<std::pair<int, int>> dead_connections;  // unordered qubit pairs

    bool empty() const {
        return dead_data.empty() && dead_aux.empty() && dead_connections.empty();
    }
};

// Text format: one entry per line,
//   DATA r,c | AUX r,c | CONN r1,c1 r2,c2   (half-integer coordinates allowed)
DeadSet parse_dead_set(const Layout& layout, std::istream& in);
void write_dead_set(const Layout& layout, const DeadSet& dead, std::ostream& out);

// Three-step removal protocol: reduce n-gons for dead data, split for dead
// auxiliaries, split for dead connections; collaterally unused auxiliaries are
// dropped and empty plaquettes dissolve. Qubit indexing is preserved.
Layout apply_dead(const Layout& layout, const DeadSet& dead);

struct DeadRegion {
    std::vector<int> dead_data;  // empty for aux/connection-only damage
    std::vector<int> plaquettes;  // affected original plaquettes
    int row_extent = 0;
    int col_extent = 0;
    int layers = 2;
};

// Effective measurement-layer count per connected dead region. A region with
// dead data spanning R x C lattice sites has l = 1 + R + C; damage touching
// only auxiliaries or connections keeps l = 2.
std::vector<DeadRegion> region_layers(const Layout& layout, const DeadSet& dead);

struct SuperGroup {
    PauliType pauli = PauliType::Z;
    std::vector<int> members;  // plaquette ids in the damaged layout
    std::vector<int> support;  // data qubits of the superplaquette operator
};

struct SuperplaquetteReport {
    std::vector<SuperGroup> groups;
    std::vector<DeadRegion> regions;
    int z_distance = -1;  // patches only
    int x_distance = -1;
};

// Pipelined circuits measure each superplaquette type r times in r rounds;
// interleaved circuits lose ceil((l-1)/2) and ceil(l/2) rounds to build-up.
int interleaved_measurements(int rounds, int layers, bool second_type);

SuperplaquetteReport superplaquettes(const Layout& damaged, const DeadSet& dead);

}  // namespace pairgraft
