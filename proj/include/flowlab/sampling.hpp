#pragma once

#include <cstdint>

#include "flowlab/space.hpp"

namespace flowlab {

/// Deterministic per-sample random stream. The state of sample i depends only
/// on (seed, i), so parallel workers drawing disjoint index ranges reproduce
/// the sequential run exactly, and aggregation can be order-independent.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t index)
        : state_(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1))) {
        // warm up so neighbouring indices decorrelate
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        // splitmix64 step
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    Vec uniform_vec(const Vec& lo, const Vec& hi) {
        Vec v(lo.size());
        for (Index i = 0; i < lo.size(); ++i) v[i] = uniform(lo[i], hi[i]);
        return v;
    }

private:
    std::uint64_t state_;
};

/// Sampling region for verification: coordinate box plus a z interval.
struct SampleBox {
    Vec lo;
    Vec hi;
    double z_lo = 0.05;
    double z_hi = 0.95;

    /// Default region: coordinates uniform in [−3, 3]^k, z in [0.05, 0.95].
    static SampleBox standard(Index k) {
        SampleBox b;
        b.lo = Vec::Constant(k, -3.0);
        b.hi = Vec::Constant(k, 3.0);
        return b;
    }

    Index dim() const noexcept { return lo.size(); }

    Vec draw_point(SampleRng& rng) const { return rng.uniform_vec(lo, hi); }
    double draw_z(SampleRng& rng) const { return rng.uniform(z_lo, z_hi); }
};

}  // namespace flowlab
