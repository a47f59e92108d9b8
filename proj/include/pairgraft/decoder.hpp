#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pairgraft/dem.hpp"

namespace pairgraft {

struct Syndrome {
    std::vector<int> triggered;  // sorted detector ids
};

struct MatchResult {
    std::vector<int> matched_edges;  // edge ids along matched paths (when requested)
    uint32_t predicted_logical = 0;
    double total_weight = 0;
};

// Matching decoder over a fixed decoding graph. Shortest paths between all
// detector pairs (and the virtual boundary) are cached once; decode() is pure
// and uses per-call scratch only.
class Decoder {
  public:
    explicit Decoder(const DecodingGraph& graph);

    // Applies re-weight rules for the given syndrome, then matches minimum
    // total weight. want_edges additionally reconstructs the matched edge ids
    // (slower; meant for inspection and small cases).
    MatchResult decode(const Syndrome& syndrome, bool want_edges = false) const;

    const DecodingGraph& graph() const { return *graph_; }

    static constexpr int64_t kWeightScale = 1 << 14;

  private:
    const DecodingGraph* graph_;
    int n_ = 0;               // detectors; boundary node index n_
    bool has_boundary_ = false;
    std::vector<int64_t> edge_w_;           // scaled edge weights
    std::vector<int32_t> dist_;             // (n_+1)^2 shortest path lengths
    std::vector<uint8_t> mask_;             // path logical masks
    std::vector<std::vector<int>> rules_by_trigger_;

    int32_t sdist(int u, int v) const { return dist_[size_t(u) * (n_ + 1) + v]; }
    uint8_t smask(int u, int v) const { return mask_[size_t(u) * (n_ + 1) + v]; }

    void dijkstra(int src, const std::vector<int64_t>& w, std::vector<int64_t>& dist,
                  std::vector<int>& parent_edge, std::vector<uint8_t>* pathmask) const;
    std::vector<int> reconstruct(int u, int v, const std::vector<int64_t>& w) const;
};

// Exact most-likely-fault-set decoder for tiny instances. Returns the logical
// mask of the most probable fault set consistent with the syndrome; ties break
// toward the lexicographically smallest mask. Throws if no consistent set of
// at most max_faults faults exists.
uint32_t decode_exact(const std::vector<Fault>& faults, const DetectorModel& model,
                      const Syndrome& syndrome, int max_faults = 4);

}  // namespace pairgraft
