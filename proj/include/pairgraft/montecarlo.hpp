#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pairgraft/decoder.hpp"

namespace pairgraft {

// Philox4x32-10 counter-based generator; per-shot streams come from using the
// shot index as part of the counter, so results do not depend on threading.
class PhiloxRng {
  public:
    PhiloxRng(uint64_t seed, uint64_t stream) : k0_(uint32_t(seed)), k1_(uint32_t(seed >> 32)) {
        c_[0] = uint32_t(stream);
        c_[1] = uint32_t(stream >> 32);
        c_[2] = 0;
        c_[3] = 0;
    }
    uint32_t next_u32() {
        if (have_ == 0) {
            block();
            have_ = 4;
        }
        return out_[4 - have_--];
    }
    uint64_t next_u64() {
        uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }
    // uniform in [0,1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  private:
    void block();
    uint32_t k0_, k1_;
    uint32_t c_[4];
    uint32_t out_[4];
    int have_ = 0;
};

struct TrialBatch {
    double p_physical = 0;
    long shots = 0;
    std::vector<long> failures_per_obs;
    long failures_any = 0;
    uint64_t seed = 0;

    double rate() const { return shots ? double(failures_any) / double(shots) : 0.0; }
};

// Runs `shots` trials: activate faults independently, decode, count failures.
// Thread count defaults to PAIRGRAFT_THREADS or the hardware concurrency.
TrialBatch sample_and_decode(const Decoder& decoder, const DetectorModel& model,
                             const std::vector<Fault>& faults, double p, long shots,
                             uint64_t seed, int threads = 0);

// Per-fault activation counts over `shots` trials (sampling-linearity checks).
std::vector<long> count_activations(const std::vector<Fault>& faults, long shots, uint64_t seed);

struct CredibleInterval {
    double median = 0, lo95 = 0, hi95 = 0;
};
// Beta(failures+1, shots-failures+1) posterior from a uniform prior.
CredibleInterval credible_interval(long failures, long shots);

// Regularized incomplete beta and its inverse (exposed for cross-checks).
double incomplete_beta(double a, double b, double x);
double inverse_incomplete_beta(double a, double b, double q);

struct CurvePoint {
    double p = 0;
    long shots = 0;
    long failures = 0;
    double median = 0, lo95 = 0, hi95 = 0;
};

// Threshold: log-log crossing of the curves of the two largest sizes.
double threshold(const std::map<int, std::vector<CurvePoint>>& curves_by_size);
// Pseudo-threshold: crossing of one curve with p_logical = p_physical.
double pseudo_threshold(const std::vector<CurvePoint>& curve);

struct SizeRef {
    int d_f = 0;
    double p_ref = 0;
    double p_log_ref = 0;
};

struct FitResult {
    double alpha = 0, beta = 0;
    double p = 0;  // physical rate the fit was evaluated at
    std::vector<SizeRef> refs;
};

// Sub-threshold extrapolation to physical rate p via the (d_f+1)/2 power law,
// then an exponential fit over sizes with d_f > 3.
FitResult fit_scaling(const std::vector<SizeRef>& refs, double p);

struct ResourceEstimate {
    int d_f = 0;
    long qubits = 0;
    long depth = 0;
    long spacetime = 0;
};

// Smallest odd fault distance whose fitted rate is at or below the target,
// with our code's qubit-count and depth formulas.
ResourceEstimate resources(const FitResult& fit, double p_target);

long qubits_ours(int d);          // 4d^2 - 4d + 1
long depth_ours(int d);           // 4d
long qubits_488(int d_f);        // 4d_f^2 + 8(d_f - 1)
long depth_488(int d_f);         // 6 ceil(d_f/2)

// The default 12-point logarithmic grid over [1e-4, 1.5e-2].
std::vector<double> default_p_grid();

}  // namespace pairgraft
