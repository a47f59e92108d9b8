#include "pairgraft/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace pairgraft {

void PhiloxRng::block() {
    uint32_t c0 = c_[0], c1 = c_[1], c2 = c_[2], c3 = c_[3];
    uint32_t k0 = k0_, k1 = k1_;
    for (int round = 0; round < 10; ++round) {
        uint64_t p0 = uint64_t(0xD2511F53u) * c0;
        uint64_t p1 = uint64_t(0xCD9E8D57u) * c2;
        uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
        uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
        uint32_t n0 = hi1 ^ c1 ^ k0;
        uint32_t n1 = lo1;
        uint32_t n2 = hi0 ^ c3 ^ k1;
        uint32_t n3 = lo0;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    out_[0] = c0;
    out_[1] = c1;
    out_[2] = c2;
    out_[3] = c3;
    // bump the high counter words for the next block
    if (++c_[2] == 0) ++c_[3];
}

namespace {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("PAIRGRAFT_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

struct ProbGroup {
    double prob = 0;
    double log1m = 0;  // log(1-prob)
    std::vector<int> members;
};

std::vector<ProbGroup> group_faults(const std::vector<Fault>& faults) {
    std::map<double, std::vector<int>> by_p;
    for (const auto& f : faults)
        if (!f.syndrome.empty() || f.logical_mask) by_p[f.probability].push_back(f.id);
    std::vector<ProbGroup> groups;
    for (auto& [p, ids] : by_p) {
        ProbGroup g;
        g.prob = p;
        g.log1m = std::log1p(-p);
        g.members = std::move(ids);
        groups.push_back(std::move(g));
    }
    return groups;
}

void xor_accumulate(std::vector<int>& acc, const std::vector<int>& s) {
    acc.insert(acc.end(), s.begin(), s.end());
}

std::vector<int> xor_finish(std::vector<int>& acc) {
    std::sort(acc.begin(), acc.end());
    std::vector<int> out;
    for (size_t i = 0; i < acc.size();) {
        size_t j = i;
        while (j < acc.size() && acc[j] == acc[i]) ++j;
        if ((j - i) % 2) out.push_back(acc[i]);
        i = j;
    }
    return out;
}

}  // namespace

TrialBatch sample_and_decode(const Decoder& decoder, const DetectorModel& model,
                             const std::vector<Fault>& faults, double p, long shots,
                             uint64_t seed, int threads) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p must be in (0,1)");
    const int nobs = int(model.observables.size());
    const auto groups = group_faults(faults);
    const int nthreads = resolve_threads(threads);

    std::vector<std::vector<long>> per_obs(nthreads, std::vector<long>(nobs, 0));
    std::vector<long> any(nthreads, 0);

    auto worker = [&](int tid) {
        std::vector<int> acc;
        for (long s = tid; s < shots; s += nthreads) {
            PhiloxRng rng(seed, uint64_t(s));
            acc.clear();
            uint32_t true_mask = 0;
            for (const auto& g : groups) {
                // geometric skips through the group's members
                double u = rng.next_double();
                long i = long(std::floor(std::log1p(-u) / g.log1m));
                while (i < long(g.members.size())) {
                    const Fault& f = faults[g.members[i]];
                    xor_accumulate(acc, f.syndrome);
                    true_mask ^= f.logical_mask;
                    u = rng.next_double();
                    i += 1 + long(std::floor(std::log1p(-u) / g.log1m));
                }
            }
            std::vector<int> defects = xor_finish(acc);
            uint32_t predicted = 0;
            if (!defects.empty()) {
                Syndrome syn{std::move(defects)};
                predicted = decoder.decode(syn).predicted_logical;
            }
            uint32_t diff = predicted ^ true_mask;
            if (diff) ++any[tid];
            for (int k = 0; k < nobs; ++k)
                if ((diff >> k) & 1) ++per_obs[tid][k];
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    TrialBatch batch;
    batch.p_physical = p;
    batch.shots = shots;
    batch.seed = seed;
    batch.failures_per_obs.assign(nobs, 0);
    for (int t = 0; t < nthreads; ++t) {
        batch.failures_any += any[t];
        for (int k = 0; k < nobs; ++k) batch.failures_per_obs[k] += per_obs[t][k];
    }
    return batch;
}

std::vector<long> count_activations(const std::vector<Fault>& faults, long shots,
                                    uint64_t seed) {
    const auto groups = group_faults(faults);
    std::vector<long> counts(faults.size(), 0);
    for (long s = 0; s < shots; ++s) {
        PhiloxRng rng(seed, uint64_t(s));
        for (const auto& g : groups) {
            double u = rng.next_double();
            long i = long(std::floor(std::log1p(-u) / g.log1m));
            while (i < long(g.members.size())) {
                ++counts[g.members[i]];
                u = rng.next_double();
                i += 1 + long(std::floor(std::log1p(-u) / g.log1m));
            }
        }
    }
    return counts;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    // continued fraction for the regularized incomplete beta
    auto betacf = [](double a, double b, double x) {
        const int maxit = 300;
        const double eps = 3e-16, fpmin = 1e-300;
        double qab = a + b, qap = a + 1, qam = a - 1;
        double c = 1, d = 1 - qab * x / qap;
        if (std::fabs(d) < fpmin) d = fpmin;
        d = 1 / d;
        double h = d;
        for (int m = 1; m <= maxit; ++m) {
            int m2 = 2 * m;
            double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
            d = 1 + aa * d;
            if (std::fabs(d) < fpmin) d = fpmin;
            c = 1 + aa / c;
            if (std::fabs(c) < fpmin) c = fpmin;
            d = 1 / d;
            h *= d * c;
            aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
            d = 1 + aa * d;
            if (std::fabs(d) < fpmin) d = fpmin;
            c = 1 + aa / c;
            if (std::fabs(c) < fpmin) c = fpmin;
            d = 1 / d;
            double del = d * c;
            h *= del;
            if (std::fabs(del - 1) < eps) break;
        }
        return h;
    };
    double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
    if (x < (a + 1) / (a + b + 2)) return front * betacf(a, b, x) / a;
    return 1 - std::exp(b * std::log1p(-x) + a * std::log(x) - lbeta) * betacf(b, a, 1 - x) / b;
}

double inverse_incomplete_beta(double a, double b, double q) {
    double lo = 0, hi = 1;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (incomplete_beta(a, b, mid) < q) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

CredibleInterval credible_interval(long failures, long shots) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    double a = double(failures) + 1, b = double(shots - failures) + 1;
    CredibleInterval ci;
    ci.median = inverse_incomplete_beta(a, b, 0.5);
    ci.lo95 = inverse_incomplete_beta(a, b, 0.025);
    ci.hi95 = inverse_incomplete_beta(a, b, 0.975);
    return ci;
}

namespace {

// piecewise-linear value of log(p_log) at log(p); curve must be sorted by p
double loglog_interp(const std::vector<CurvePoint>& curve, double logp) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& c : curve)
        if (c.median > 0) pts.push_back({std::log(c.p), std::log(c.median)});
    if (pts.size() < 2) throw std::runtime_error("not enough curve points");
    if (logp <= pts.front().first) {
        auto [x0, y0] = pts[0];
        auto [x1, y1] = pts[1];
        return y0 + (y1 - y0) * (logp - x0) / (x1 - x0);
    }
    for (size_t i = 1; i < pts.size(); ++i) {
        if (logp <= pts[i].first) {
            auto [x0, y0] = pts[i - 1];
            auto [x1, y1] = pts[i];
            return y0 + (y1 - y0) * (logp - x0) / (x1 - x0);
        }
    }
    auto [x0, y0] = pts[pts.size() - 2];
    auto [x1, y1] = pts.back();
    return y0 + (y1 - y0) * (logp - x0) / (x1 - x0);
}

}  // namespace

double threshold(const std::map<int, std::vector<CurvePoint>>& curves_by_size) {
    if (curves_by_size.size() < 2) throw std::invalid_argument("need at least two sizes");
    auto it = curves_by_size.rbegin();
    const auto& big = it->second;
    ++it;
    const auto& small = it->second;
    // crossing of the two largest sizes in log-log space
    double lo = std::log(std::max(big.front().p, small.front().p));
    double hi = std::log(std::min(big.back().p, small.back().p));
    auto diff = [&](double lp) { return loglog_interp(big, lp) - loglog_interp(small, lp); };
    double d_lo = diff(lo), d_hi = diff(hi);
    if (d_lo == 0) return std::exp(lo);
    if (d_lo * d_hi > 0) throw std::runtime_error("no threshold crossing in range");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double dm = diff(mid);
        if ((dm < 0) == (d_lo < 0)) {
            lo = mid;
            d_lo = dm;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

double pseudo_threshold(const std::vector<CurvePoint>& curve) {
    double lo = std::log(curve.front().p), hi = std::log(curve.back().p);
    auto diff = [&](double lp) { return loglog_interp(curve, lp) - lp; };
    double d_lo = diff(lo), d_hi = diff(hi);
    if (d_lo * d_hi > 0) throw std::runtime_error("no pseudo-threshold crossing in range");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double dm = diff(mid);
        if ((dm < 0) == (d_lo < 0)) {
            lo = mid;
            d_lo = dm;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

FitResult fit_scaling(const std::vector<SizeRef>& refs, double p) {
    std::vector<std::pair<double, double>> pts;  // (d_f, ln p_log at p)
    FitResult fit;
    fit.p = p;
    fit.refs = refs;
    for (const auto& r : refs) {
        if (r.d_f <= 3) continue;
        double lp = std::log(r.p_log_ref) +
                    0.5 * (r.d_f + 1) * (std::log(p) - std::log(r.p_ref));
        pts.push_back({double(r.d_f), lp});
    }
    if (pts.size() < 2) throw std::runtime_error("fit window too small (< 2 sizes)");
    // least squares ln p_log = ln alpha - beta d
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(pts.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double inter = (sy - slope * sx) / n;
    fit.beta = -slope;
    fit.alpha = std::exp(inter);
    return fit;
}

ResourceEstimate resources(const FitResult& fit, double p_target) {
    ResourceEstimate est;
    if (fit.beta <= 0) throw std::runtime_error("non-positive decay rate in fit");
    for (int d = 3;; d += 2) {
        double plog = fit.alpha * std::exp(-fit.beta * d);
        if (plog <= p_target) {
            est.d_f = d;
            break;
        }
        if (d > 9999) throw std::runtime_error("target unreachable");
    }
    est.qubits = qubits_ours(est.d_f);
    est.depth = depth_ours(est.d_f);
    est.spacetime = est.qubits * est.depth;
    return est;
}

long qubits_ours(int d) { return 4L * d * d - 4L * d + 1; }
long depth_ours(int d) { return 4L * d; }
long qubits_488(int d_f) { return 4L * d_f * d_f + 8L * (d_f - 1); }
long depth_488(int d_f) { return 6L * ((d_f + 1) / 2); }

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    const double lo = 1e-4, hi = 1.5e-2;
    for (int i = 0; i < 12; ++i)
        grid.push_back(lo * std::pow(hi / lo, double(i) / 11.0));
    return grid;
}

}  // namespace pairgraft
