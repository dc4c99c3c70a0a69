#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "flowlab/sampling.hpp"
#include "flowlab/space.hpp"

namespace flowlab {

/// The 1-dimensional solution family on (0, ∞): f(x) = x/(Cx + 1), C ≥ 0.
/// C = 0 is the identity.
class OneDSolution {
public:
    explicit OneDSolution(double c) : c_(c) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw Error("OneDSolution: C must be a finite value >= 0");
        }
    }

    double C() const noexcept { return c_; }

    double operator()(double x) const {
        if (!(x > 0.0)) throw NonPositiveInput("OneDSolution: x must be positive");
        return x / (c_ * x + 1.0);
    }

private:
    double c_;
};

struct OneDReport {
    std::int64_t samples_tested = 0;
    double max_residual = 0.0;
    double worst_x = 0.0;
    double worst_z = 0.0;
    double tol = 0.0;

    bool passed() const noexcept { return max_residual <= tol; }
};

/// Max residual of (1−z)f(x) = f(f(xz)(1−z)/z) over seeded x ∈ (0, 100],
/// z ∈ (0, 1).
inline OneDReport verify_1d(const OneDSolution& f, std::int64_t n_samples, std::uint64_t seed,
                            double tol) {
    if (!(tol > 0.0)) throw Error("verify_1d: tol must be positive");
    OneDReport rep;
    rep.tol = tol;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const double x = rng.uniform(1e-6, 100.0);
        const double z = rng.uniform(1e-6, 1.0 - 1e-6);
        const double lhs = (1.0 - z) * f(x);
        const double rhs = f(f(x * z) * (1.0 - z) / z);
        const double r = std::abs(lhs - rhs);
        ++rep.samples_tested;
        if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst_x = x;
            rep.worst_z = z;
        }
    }
    return rep;
}

struct FitC {
    double C = 0.0;
    double constancy_residual = 0.0;
    bool valid = false;
};

/// Recovers C from samples (u, f(u)) via the exact functional
/// C = 1/f(u) − 1/u, taking the median for robustness; the fit is valid when
/// the per-sample values agree to 1e−8·(1+C). Samples with f(u) > u cannot
/// come from this family.
inline FitC fit_c(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2) throw Error("fit_c: at least two samples required");
    std::vector<double> cs;
    cs.reserve(samples.size());
    for (const auto& [u, fu] : samples) {
        if (!(u > 0.0) || !(fu > 0.0)) throw NonPositiveInput("fit_c: samples must be positive");
        if (fu > u * (1.0 + 1e-12)) {
            throw NotAOneDSolution("fit_c: f(u) > u is impossible for this family");
        }
        cs.push_back(1.0 / fu - 1.0 / u);
    }
    std::sort(cs.begin(), cs.end());
    const std::size_t n = cs.size();
    FitC fit;
    fit.C = (n % 2 == 1) ? cs[n / 2] : 0.5 * (cs[n / 2 - 1] + cs[n / 2]);
    for (double c : cs) fit.constancy_residual = std::max(fit.constancy_residual, std::abs(c - fit.C));
    fit.valid = fit.constancy_residual <= 1e-8 * (1.0 + std::abs(fit.C));
    return fit;
}

}  // namespace flowlab
