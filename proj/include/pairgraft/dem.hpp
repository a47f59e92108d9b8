#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pairgraft/circuit.hpp"
#include "pairgraft/tableau.hpp"

namespace pairgraft {

enum class MemoryBasis : uint8_t { Z, X, Both };

struct Detector {
    enum class Kind : uint8_t { HighWeight, LowWeight };
    int id = -1;
    std::vector<int> measurements;  // sorted meas_index set
    Kind kind = Kind::HighWeight;
    int plaquette = -1;  // association via latest measurement
    int round = -1;
    bool parity = false;  // noiseless value of the member parity
};

struct LogicalObservable {
    std::string label;
    PauliType pauli = PauliType::Z;
    std::vector<int> measurements;  // virtual end-time readout index
    bool init_parity = false;
    PauliString op;  // end-time string operator over all qubits
};

struct FaultOrigin {
    int meas_index = -1;  // -1 for idle-slot faults
    int step = -1;
    int qubit0 = -1, qubit1 = -1;
    char pauli0 = 'I', pauli1 = 'I';
    bool readout_flip = false;
};

struct Fault {
    int id = -1;
    FaultOrigin origin;
    double probability = 0;
    std::vector<int> syndrome;  // sorted triggered detector ids
    uint32_t logical_mask = 0;
};

struct DetectorModel {
    std::shared_ptr<const Circuit> circuit;
    std::vector<Detector> detectors;
    std::vector<LogicalObservable> observables;

    // For each measurement outcome, the detectors containing it (CSR).
    std::vector<int> incidence_offset;
    std::vector<int> incidence;
    // ... and the observables whose correction sets contain it.
    std::vector<int> obs_incidence_offset;
    std::vector<int> obs_incidence;

    int num_detectors() const { return int(detectors.size()); }
    // Detector flips for an outcome flip set.
    std::vector<int> project(const std::vector<int>& flipped_outcomes) const;
};

// Discovers the init-independent detector basis (greedy, time-ordered, each
// detector's latest measurement unique) and the memory observables.
DetectorModel find_detectors(std::shared_ptr<const Circuit> circuit, MemoryBasis basis);

// Outcome expressions of every measurement for a run seeded with the given
// initial stabilizers (empty seeds = maximally mixed start).
std::vector<OutcomeExpr> symbolic_outcomes(const Circuit& circuit,
                                           const std::vector<PauliString>& seeds);

// Outcome flips caused by a Pauli error inserted after `step` plus explicit
// readout flips. Exposed for the hook-equivalence checks.
std::vector<int> propagate_fault(const Circuit& circuit, int step,
                                 const std::vector<std::pair<int, char>>& pauli_errors,
                                 const std::vector<int>& readout_flips);

// Enumerates the standard circuit-noise fault set over the noisy window:
// 7 variants per single-qubit measurement (p/7 each), 31 per two-qubit
// measurement (p/31), 3 per idle slot (p/3) when idle_noise is on.
std::vector<Fault> enumerate_faults(const DetectorModel& model, double p, bool idle_noise);

struct GraphEdge {
    int id = -1;
    int u = -1;
    int v = -1;  // -1: dangling / boundary
    double probability = 0;
    double weight = 0;
    uint32_t mask = 0;
    std::vector<int> fault_ids;

    bool dangling() const { return v < 0; }
};

struct ReweightRule {
    int trigger = -1;            // LowWeight detector id
    std::vector<int> edge_ids;   // zero-weighted while trigger is in the syndrome
};

struct DecodingGraph {
    int num_detectors = 0;
    int num_observables = 0;
    std::vector<GraphEdge> edges;
    std::vector<ReweightRule> rules;
    std::vector<Detector::Kind> kinds;

    // adjacency (CSR over edge ids, boundary edges listed under u only)
    std::vector<int> adj_offset;
    std::vector<int> adj_edges;
    void build_adjacency();
};

// Splitting decoder construction: decomposes non-primitive faults into
// primitive ones and assembles the matchable graph plus re-weighting rules.
DecodingGraph split_and_build(const std::vector<Fault>& faults, const DetectorModel& model);

void write_dem_text(const DetectorModel& model, const std::vector<Fault>& faults,
                    const DecodingGraph& graph, std::ostream& out);

const char* to_string(MemoryBasis b);

}  // namespace pairgraft
