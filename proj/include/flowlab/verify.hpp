#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flowlab/format.hpp"
#include "flowlab/sampling.hpp"
#include "flowlab/solution.hpp"
#include "flowlab/space.hpp"

namespace flowlab {

/// Samples closer than this (in the clearance gauge) to a singular set at any
/// intermediate evaluation are excluded from verification statistics.
inline constexpr double kExclusionRadius = 1e-3;

/// Smallest |z| admitted where 1/z or 1/(z₁+z₂) enters an evaluation chain.
inline constexpr double kMinFlowTime = 0.05;

struct VerificationReport {
    std::int64_t samples_tested = 0;
    std::int64_t excluded = 0;
    double max_residual = 0.0;
    Vec worst_x;         // accepted sample attaining max_residual
    double worst_z = 0.0;
    double tol = 0.0;

    bool passed() const noexcept { return max_residual <= tol; }

    std::string to_string() const {
        std::string s;
        s += "samples_tested=" + std::to_string(samples_tested);
        s += " excluded=" + std::to_string(excluded);
        s += " max_residual=" + fmt_double(max_residual);
        s += " tol=" + fmt_double(tol);
        if (worst_x.size() > 0) {
            s += " worst_x=" + fmt_vec(worst_x) + " worst_z=" + fmt_double(worst_z);
        }
        s += passed() ? " result=pass" : " result=FAIL";
        return s;
    }
};

/// A map of the compactified space bundled with its sampling-exclusion gauge;
/// lets the verification harness run on solutions, pointwise compositions,
/// or anything else that evaluates points.
struct PointMap {
    Index k = 0;
    std::function<Point(const Point&)> eval;
    std::function<double(const Point&)> clearance;

    static PointMap of(const Solution& s) {
        return PointMap{s.dim(), [&s](const Point& p) { return s.eval(p); },
                        [&s](const Point& p) { return s.singular_clearance(p); }};
    }

    /// outer ∘ inner, with the combined exclusion gauge.
    static PointMap composition(const PointMap& outer, const PointMap& inner) {
        detail::require_same_dim(outer.k, inner.k, "PointMap::composition");
        auto ev = [&outer, &inner](const Point& p) { return outer.eval(inner.eval(p)); };
        auto cl = [&outer, &inner](const Point& p) {
            const double c = inner.clearance(p);
            if (c < kExclusionRadius) return c;
            return std::min(c, outer.clearance(inner.eval(p)));
        };
        return PointMap{outer.k, std::move(ev), std::move(cl)};
    }
};

namespace detail {

struct SampleOutcome {
    double residual;
    Vec x;
    double z;
};

// Deterministic parallel max over per-index outcomes: each index draws from
// its own (seed, index) stream, ties broken toward the smaller index, so the
// result is independent of the chunking.
template <typename F>
VerificationReport run_samples(std::int64_t n_samples, int threads, F&& per_index) {
    struct Partial {
        std::int64_t tested = 0, excluded = 0;
        double best = -1.0;
        std::int64_t best_index = -1;
        Vec x;
        double z = 0.0;
    };

    auto run_range = [&per_index](std::int64_t lo, std::int64_t hi) {
        Partial acc;
        for (std::int64_t i = lo; i < hi; ++i) {
            std::optional<SampleOutcome> out = per_index(i);
            if (!out) {
                ++acc.excluded;
                continue;
            }
            ++acc.tested;
            if (out->residual > acc.best || (out->residual == acc.best && i < acc.best_index)) {
                acc.best = out->residual;
                acc.best_index = i;
                acc.x = std::move(out->x);
                acc.z = out->z;
            }
        }
        return acc;
    };

    std::vector<Partial> parts;
    if (threads <= 1 || n_samples < 2) {
        parts.push_back(run_range(0, n_samples));
    } else {
        const int nt = std::min<std::int64_t>(threads, n_samples);
        std::vector<std::future<Partial>> futs;
        futs.reserve(nt);
        for (int t = 0; t < nt; ++t) {
            const std::int64_t lo = n_samples * t / nt;
            const std::int64_t hi = n_samples * (t + 1) / nt;
            futs.push_back(std::async(std::launch::async, run_range, lo, hi));
        }
        for (auto& f : futs) parts.push_back(f.get());
    }

    VerificationReport rep;
    double best = -1.0;
    std::int64_t best_index = -1;
    for (auto& p : parts) {
        rep.samples_tested += p.tested;
        rep.excluded += p.excluded;
        if (p.best_index >= 0 &&
            (p.best > best || (p.best == best && p.best_index < best_index))) {
            best = p.best;
            best_index = p.best_index;
            rep.worst_x = std::move(p.x);
            rep.worst_z = p.z;
        }
    }
    if (rep.samples_tested == 0) {
        throw AllSamplesExcluded("verification: every sample hit the exclusion zone");
    }
    rep.max_residual = std::max(best, 0.0);
    return rep;
}

}  // namespace detail

/// Max chordal residual of (1−z)φ(x) = φ(φ(xz)(1−z)/z) over seeded samples
/// from the box, excluding draws whose evaluation chain passes within the
/// exclusion radius of the singular set.
inline VerificationReport verify_translation(const PointMap& phi, std::int64_t n_samples,
                                             std::uint64_t seed, const SampleBox& box,
                                             double tol, int threads = 1) {
    if (!(tol > 0.0)) throw Error("verify_translation: tol must be positive");
    detail::require_same_dim(phi.k, box.dim(), "verify_translation");

    auto per_index = [&](std::int64_t i) -> std::optional<detail::SampleOutcome> {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Vec xv = box.draw_point(rng);
        const double z = box.draw_z(rng);
        const Point x = Point::finite(xv);
        if (phi.clearance(x) < kExclusionRadius) return std::nullopt;
        const Point xz = scale(x, z);
        if (phi.clearance(xz) < kExclusionRadius) return std::nullopt;
        const Point phi_xz = phi.eval(xz);
        if (phi_xz.is_infinity()) return std::nullopt;
        const Point w = scale(phi_xz, (1.0 - z) / z);
        if (phi.clearance(w) < kExclusionRadius) return std::nullopt;
        const Point lhs = scale(phi.eval(x), 1.0 - z);
        const Point rhs = phi.eval(w);
        return detail::SampleOutcome{chordal_distance(lhs, rhs), xv, z};
    };

    VerificationReport rep = detail::run_samples(n_samples, threads, per_index);
    rep.tol = tol;
    return rep;
}

inline VerificationReport verify_translation(const Solution& s, std::int64_t n_samples,
                                             std::uint64_t seed, const SampleBox& box,
                                             double tol, int threads = 1) {
    return verify_translation(PointMap::of(s), n_samples, seed, box, tol, threads);
}

inline VerificationReport verify_translation(const Solution& s, std::int64_t n_samples,
                                             std::uint64_t seed, double tol, int threads = 1) {
    return verify_translation(s, n_samples, seed, SampleBox::standard(s.dim()), tol, threads);
}

/// Max chordal residual of the semigroup law φ^{z₁} ∘ φ^{z₂} = φ^{z₁+z₂}
/// over seeded (x, z₁, z₂), with z₁, z₂, z₁+z₂ bounded away from 0.
inline VerificationReport check_group_law(const Solution& s, std::int64_t n_samples,
                                          std::uint64_t seed, const SampleBox& box,
                                          double tol, int threads = 1) {
    detail::require_same_dim(s.dim(), box.dim(), "check_group_law");

    auto per_index = [&](std::int64_t i) -> std::optional<detail::SampleOutcome> {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Vec xv = box.draw_point(rng);
        const double z1 = rng.uniform(-2.0, 2.0);
        const double z2 = rng.uniform(-2.0, 2.0);
        if (std::abs(z1) < kMinFlowTime || std::abs(z2) < kMinFlowTime ||
            std::abs(z1 + z2) < kMinFlowTime) {
            return std::nullopt;
        }
        const Point x = Point::finite(xv);
        if (s.singular_clearance(scale(x, z2)) < kExclusionRadius) return std::nullopt;
        const Point v = s.flow(z2, x);
        if (v.is_infinity()) return std::nullopt;
        if (s.singular_clearance(scale(v, z1)) < kExclusionRadius) return std::nullopt;
        if (s.singular_clearance(scale(x, z1 + z2)) < kExclusionRadius) return std::nullopt;
        const Point lhs = s.flow(z1, v);
        const Point rhs = s.flow(z1 + z2, x);
        return detail::SampleOutcome{chordal_distance(lhs, rhs), xv, z1};
    };

    VerificationReport rep = detail::run_samples(n_samples, threads, per_index);
    rep.tol = tol;
    return rep;
}

/// Max chordal distance between ℓ⁻¹ ∘ φ_{a,Q} ∘ ℓ and φ_{ℓ⁻¹a, Q∘ℓ} for a
/// non-degenerate linear ℓ, over seeded samples.
inline double conjugate_linear_identity_check(const Vec& a, const QuadraticForm& q, const Mat& m,
                                              std::int64_t n_samples, std::uint64_t seed) {
    const Homothety ell = Homothety::linear(m);  // throws SingularMatrix
    const Solution lhs = Solution::conjugated(Solution::quad_flow(a, q), ell);
    const Solution rhs = Solution::quad_flow(m.inverse() * a, q.pullback(m));

    const SampleBox box = SampleBox::standard(a.size());
    double worst = 0.0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Point x = Point::finite(box.draw_point(rng));
        if (lhs.singular_clearance(x) < kExclusionRadius ||
            rhs.singular_clearance(x) < kExclusionRadius) {
            continue;
        }
        worst = std::max(worst, chordal_distance(lhs.eval(x), rhs.eval(x)));
    }
    return worst;
}

struct CommutingReport {
    bool commuting = false;
    double commute_residual = 0.0;
    std::int64_t samples_tested = 0;
    std::int64_t excluded = 0;
    // translation-equation residual of the pointwise composition, when the
    // pair commutes within tolerance
    std::optional<VerificationReport> composition;
};

/// Checks γ ∘ χ = χ ∘ γ on samples; if they commute within tol, verifies the
/// translation equation for the composition. Non-commuting pairs are reported,
/// not thrown.
inline CommutingReport commuting_product_check(const Solution& g, const Solution& h,
                                               std::int64_t n_samples, std::uint64_t seed,
                                               double tol, int threads = 1) {
    detail::require_same_dim(g.dim(), h.dim(), "commuting_product_check");
    const SampleBox box = SampleBox::standard(g.dim());

    CommutingReport rep;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Point x = Point::finite(box.draw_point(rng));
        if (g.singular_clearance(x) < kExclusionRadius ||
            h.singular_clearance(x) < kExclusionRadius) {
            ++rep.excluded;
            continue;
        }
        const Point hx = h.eval(x);
        const Point gx = g.eval(x);
        if (hx.is_infinity() || gx.is_infinity() ||
            g.singular_clearance(hx) < kExclusionRadius ||
            h.singular_clearance(gx) < kExclusionRadius) {
            ++rep.excluded;
            continue;
        }
        rep.commute_residual = std::max(rep.commute_residual, chordal_distance(g.eval(hx), h.eval(gx)));
        ++rep.samples_tested;
    }
    if (rep.samples_tested == 0) {
        throw AllSamplesExcluded("commuting_product_check: every sample hit the exclusion zone");
    }
    rep.commuting = rep.commute_residual <= tol;
    if (rep.commuting) {
        const PointMap comp = PointMap::composition(PointMap::of(g), PointMap::of(h));
        rep.composition = verify_translation(comp, n_samples, seed + 1, box, tol, threads);
    }
    return rep;
}

struct SurjectivityReport {
    std::int64_t attempts = 0;
    std::int64_t hits = 0;
    double worst_distance = 0.0;
    std::vector<Point> preimages;

    double hit_rate() const { return attempts == 0 ? 0.0 : double(hits) / double(attempts); }
};

/// For each target y, attempts the preimage x = φ^{-1}(y) via the flow at
/// z = −1 (φ^{-1}(−x) = −φ(x)) and reports how many land within tol.
inline SurjectivityReport surjectivity_probe(const Solution& s, const std::vector<Point>& targets,
                                             double tol) {
    if (std::holds_alternative<sol::Zero>(s.node())) {
        throw Error("surjectivity_probe: the zero solution is not surjective");
    }
    SurjectivityReport rep;
    for (const Point& y : targets) {
        ++rep.attempts;
        const Point x = s.flow(-1.0, y);
        const double d = chordal_distance(s.eval(x), y);
        rep.preimages.push_back(x);
        rep.worst_distance = std::max(rep.worst_distance, d);
        if (d < tol) ++rep.hits;
    }
    return rep;
}

/// Max chordal residual of φ(a·z) = (z/(z+1))·a over the given z values,
/// where a = φ(∞) is the (finite) exceptional vector; z = −1 is skipped.
inline double axis_action_check(const Solution& s, const std::vector<double>& z_values) {
    const std::optional<Point> a = s.finite_exceptional_vector();
    if (!a) throw Error("axis_action_check: solution has no finite exceptional vector");
    const Vec& av = a->coords();
    double worst = 0.0;
    for (double z : z_values) {
        if (std::abs(z + 1.0) < 1e-9) continue;
        const Point lhs = s.eval(Point::finite(Vec(av * z)));
        const Point rhs = detail::finite_or_infinity(Vec(av * (z / (z + 1.0))));
        worst = std::max(worst, chordal_distance(lhs, rhs));
    }
    return worst;
}

/// Max chordal residual of (1/n)·φ(n·x) = φ∘…∘φ(x) (n-fold) over seeded
/// samples; chains that pass near a singular set are excluded.
inline VerificationReport iterate_identity_check(const Solution& s, int n_fold,
                                                 std::int64_t n_samples, std::uint64_t seed,
                                                 const SampleBox& box, double tol,
                                                 int threads = 1) {
    if (n_fold < 1) throw Error("iterate_identity_check: n must be >= 1");

    auto per_index = [&](std::int64_t i) -> std::optional<detail::SampleOutcome> {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Vec xv = box.draw_point(rng);
        const Point x = Point::finite(xv);
        const Point nx = scale(x, double(n_fold));
        if (s.singular_clearance(nx) < kExclusionRadius) return std::nullopt;
        Point composed = x;
        for (int j = 0; j < n_fold; ++j) {
            if (s.singular_clearance(composed) < kExclusionRadius) return std::nullopt;
            composed = s.eval(composed);
        }
        const Point lhs = scale(s.eval(nx), 1.0 / double(n_fold));
        return detail::SampleOutcome{chordal_distance(lhs, composed), xv, double(n_fold)};
    };

    VerificationReport rep = detail::run_samples(n_samples, threads, per_index);
    rep.tol = tol;
    return rep;
}

}  // namespace flowlab
