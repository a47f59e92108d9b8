#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pairgraft/geometry.hpp"

namespace pairgraft {

enum class Schedule : uint8_t { Standard4, HookPreventing7, SingleRail5, InterleavedSync };

struct Instruction {
    enum class Kind : uint8_t { MeasureP, Idle };
    Kind kind = Kind::MeasureP;
    int n_targets = 0;
    std::array<int, 2> targets{-1, -1};
    std::array<char, 2> bases{'I', 'I'};
    int step = -1;
    int meas_index = -1;     // MeasureP only
    int plaquette = -1;      // owning plaquette, -1 for idles and ideal readouts
    int round = -1;          // -1 ramp-up, rounds ramp-down
    int local_step = 0;      // schedule-local step label
    bool noisy = false;      // inside the fault window

    bool is_measurement() const { return kind == Kind::MeasureP; }
};

struct Circuit {
    std::shared_ptr<const Layout> layout;
    Schedule schedule = Schedule::Standard4;
    int pipeline_option = 4;  // HookPreventing7 only
    int rounds = 0;
    std::vector<std::vector<Instruction>> steps;
    int num_measurements = 0;

    const Layout& lay() const { return *layout; }
    int num_steps() const { return int(steps.size()); }

    std::vector<const Instruction*> measurements() const;  // in meas_index order
};

// Generates the full measurement circuit, ramp-up and ramp-down included.
// `rounds` counts complete rounds of stabilizer measurement.
Circuit generate(std::shared_ptr<const Layout> layout, Schedule schedule, int rounds,
                 int pipeline_option = 4);

Circuit generate_hook_preventing(std::shared_ptr<const Layout> layout, int pipeline_option,
                                 int rounds);

// Measurement indices whose GF(2) parity gives the plaquette's stabilizer
// value for the given round.
std::vector<int> readout_plaquette(const Circuit& circuit, const Plaquette& p, int round);

// Marks instructions of rounds [1, rounds-3] (and idles in the same step
// window) as noisy. One clean opening round anchors the first detectors; two
// clean closing rounds are needed so late faults on the auxiliary chains
// still land inside detector coverage.
void mark_noise_window(Circuit& circuit);

// Memory-experiment circuit: `noisy_rounds` fault-carrying rounds wrapped in
// the clean rounds described above (total rounds = noisy_rounds + 3).
Circuit memory_circuit(std::shared_ptr<const Layout> layout, Schedule schedule,
                       int noisy_rounds, int pipeline_option = 4);

// (rail gap, row_lo, row_hi) in quadrupled lattice units; used for the
// single-rail interference check.
struct RailSegment {
    int gap = 0;
    int row_lo = 0;
    int row_hi = 0;
};
std::vector<RailSegment> interference_segments(const Circuit& c, const Instruction& ins);

// Returns true if any two same-step measurements occupy overlapping rail
// segments. SingleRail5 circuits must be free of these.
bool has_rail_conflicts(const Circuit& c, std::vector<std::pair<int, int>>* conflicts = nullptr);

const char* to_string(Schedule s);
std::string schedule_token(Schedule s, int pipeline_option);

void write_circuit_text(const Circuit& c, std::ostream& out);
Circuit parse_circuit_text(std::istream& in);

}  // namespace pairgraft
