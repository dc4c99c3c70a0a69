#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "flowlab/sampling.hpp"
#include "flowlab/solution.hpp"
#include "flowlab/space.hpp"

namespace flowlab {

/// The orbit 𝒱(x) = {(1/z)·φ(xz) : z ∈ R ∪ {∞}} sampled on a z grid. The
/// grid always contains z = 0 (the base point itself) and z = 1 (φ(x)).
struct OrbitTrace {
    Point base;
    std::vector<std::pair<double, Point>> samples;

    OrbitTrace() : base(Point::zero(1)) {}
};

inline OrbitTrace orbit_trace(const Solution& s, const Point& x, std::vector<double> z_grid) {
    detail::require_same_dim(s.dim(), x.dim(), "orbit_trace");
    z_grid.push_back(0.0);
    z_grid.push_back(1.0);
    std::sort(z_grid.begin(), z_grid.end());
    z_grid.erase(std::unique(z_grid.begin(), z_grid.end()), z_grid.end());

    OrbitTrace trace;
    trace.base = x;
    trace.samples.reserve(z_grid.size());
    for (double z : z_grid) {
        trace.samples.emplace_back(z, s.flow(z, x));
    }
    return trace;
}

/// det(x, φ(x)) for k = 2. Nonzero exactly when x and its image are not
/// collinear; the exceptional vector a is the only direction (up to scale)
/// on which the determinant vanishes.
inline double collinearity_check(const Solution& s, const Vec& x, const Vec& a) {
    if (s.dim() != 2 || x.size() != 2 || a.size() != 2) {
        throw UnsupportedDimension("collinearity_check: defined for k = 2");
    }
    if ((x.array() == 0.0).all()) throw Error("collinearity_check: x must be nonzero");
    const Point fx = s.eval(Point::finite(x));
    if (fx.is_infinity()) throw Error("collinearity_check: eval(s, x) must be finite");
    return x[0] * fx.coords()[1] - x[1] * fx.coords()[0];
}

/// Orbit representative of y under φ₁ on the hyperplane Σx_i = 0: the unique
/// (z, x) with Σx_i = 0 and φ₁^z(x) = y, or the point at infinity when y is
/// proportional to (1, …, 1).
struct RepSetSolution {
    double z = 0.0;
    Vec x;
    bool at_infinity = false;
};

inline RepSetSolution repset_solve_phi1(const Vec& y, Index k) {
    detail::require_same_dim(y.size(), k, "repset_solve_phi1");
    const double norm = y.norm();
    if (norm == 0.0) throw ZeroInput("repset_solve_phi1: y must be nonzero");

    const double kk = static_cast<double>(k);
    const double Y = y.sum();

    RepSetSolution out;
    if (std::abs(Y) <= 1e-13 * (1.0 + norm)) {
        // y already lies on the hyperplane: it represents its own orbit
        out.z = 0.0;
        out.x = y;
        return out;
    }
    const Vec dev = y - Vec::Constant(k, Y / kk);
    if (dev.norm() <= 1e-10 * norm) {
        // y proportional to (1,…,1): the representative is the point at
        // infinity, reached at z = k/Y (flow(φ₁, k/Y, ∞) = y).
        out.at_infinity = true;
        out.z = kk / Y;
        out.x = Vec::Zero(k);
        return out;
    }

    // Closed form for the unique time z, obtained by rearranging
    // Σ(k·y_j − Y)² = kY(k − zY)/z.
    const double S = (kk * y.array() - Y).square().sum();
    const double z = kk * kk * Y / (S + kk * Y * Y);
    out.z = z;
    out.x = y.array() - Y * (1.0 - z * y.array()) / (kk - z * Y);
    return out;
}

struct LineRepSetReport {
    std::int64_t samples_tested = 0;
    std::int64_t excluded = 0;
    double min_separation = 2.0;
    bool pass = false;
};

/// Numeric probe of the fact that a line through the origin not parallel to
/// the exceptional vector meets every orbit at most once (so each such line
/// is a representation set for k = 2).
///
/// For φ₁ two distinct points of the line must have distinct orbit
/// representatives; for a general solution, orbit points flowed off the line
/// (z bounded away from 0) must stay off it.
inline LineRepSetReport line_repset_check(const Solution& s, const Vec& direction, const Vec& a,
                                          std::int64_t n_samples, std::uint64_t seed = 0) {
    if (s.dim() != 2 || direction.size() != 2 || a.size() != 2) {
        throw UnsupportedDimension("line_repset_check: defined for k = 2");
    }
    const double cross = direction[0] * a[1] - direction[1] * a[0];
    if (std::abs(cross) <= 1e-10 * direction.norm() * a.norm()) {
        throw DirectionParallelToA("line_repset_check: direction must not be parallel to a");
    }
    const Vec d = direction / direction.norm();

    LineRepSetReport rep;
    const bool phi1 = std::holds_alternative<sol::Canonical1>(s.node());
    for (std::int64_t i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        if (phi1) {
            const double t1 = rng.uniform(-3.0, 3.0);
            const double t2 = rng.uniform(-3.0, 3.0);
            if (std::abs(t1) < 0.05 || std::abs(t2) < 0.05 || std::abs(t1 - t2) < 1e-3) {
                ++rep.excluded;
                continue;
            }
            const RepSetSolution r1 = repset_solve_phi1(Vec(t1 * d), 2);
            const RepSetSolution r2 = repset_solve_phi1(Vec(t2 * d), 2);
            const Point p1 = r1.at_infinity ? Point::infinity(2) : Point::finite(r1.x);
            const Point p2 = r2.at_infinity ? Point::infinity(2) : Point::finite(r2.x);
            rep.min_separation = std::min(rep.min_separation, chordal_distance(p1, p2));
            ++rep.samples_tested;
        } else {
            const double t = rng.uniform(-3.0, 3.0);
            const double z = rng.uniform(-2.0, 2.0);
            if (std::abs(t) < 0.05 || std::abs(z) < 0.05) {
                ++rep.excluded;
                continue;
            }
            const Point p = Point::finite(Vec(t * d));
            if (s.singular_clearance(scale(p, z)) < 1e-3) {
                ++rep.excluded;
                continue;
            }
            const Point w = s.flow(z, p);
            if (w.is_infinity()) {
                ++rep.excluded;
                continue;
            }
            const double wn = w.coords().norm();
            if (wn < 1e-6 || wn > 1e9) {
                // the closure of the line contains 0 and ∞; those represent
                // themselves and the orbit of a
                ++rep.excluded;
                continue;
            }
            const double ncross =
                std::abs(w.coords()[0] * d[1] - w.coords()[1] * d[0]) / wn;
            rep.min_separation = std::min(rep.min_separation, ncross);
            ++rep.samples_tested;
        }
    }
    if (rep.samples_tested == 0) {
        throw AllSamplesExcluded("line_repset_check: every sample hit the exclusion zone");
    }
    rep.pass = rep.min_separation > (phi1 ? 1e-6 : 1e-8);
    return rep;
}

}  // namespace flowlab
