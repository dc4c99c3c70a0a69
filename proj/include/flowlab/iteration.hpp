#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "flowlab/space.hpp"

namespace flowlab {

namespace iter {

// g(x) = log(1+x), the scalar map of the motivating limit problem.
struct Log1p {};

// g(x,y) = (x − x²/2 + y²/2, y − xy); its scaled-iteration limit is the
// catalog entry pvz5 on (0,1)².
struct Quad2D {};

struct Monomial {
    double coeff;
    std::vector<int> exponents;  // one exponent per input coordinate
};

// Polynomial map R^k → R^k fixing the origin, degree ≤ 6.
struct Poly {
    Index k;
    std::vector<std::vector<Monomial>> coords;  // one monomial list per output coordinate
};

using Node = std::variant<Log1p, Quad2D, Poly>;

}  // namespace iter

/// A map g whose scaled iterates L_n(x) = n·g∘ⁿ(x/n) are studied for a limit.
class IterMap {
public:
    static IterMap log1p_map() { return IterMap(iter::Node(iter::Log1p{})); }
    static IterMap quad2d_map() { return IterMap(iter::Node(iter::Quad2D{})); }

    static IterMap poly_map(Index k, std::vector<std::vector<iter::Monomial>> coords) {
        if (k < 1) throw Error("IterMap::poly_map: k must be >= 1");
        if (static_cast<Index>(coords.size()) != k) {
            throw Error("IterMap::poly_map: one monomial list per coordinate required");
        }
        for (const auto& mono_list : coords) {
            for (const auto& m : mono_list) {
                if (static_cast<Index>(m.exponents.size()) != k) {
                    throw Error("IterMap::poly_map: exponent vector length must equal k");
                }
                int deg = 0;
                for (int e : m.exponents) {
                    if (e < 0) throw Error("IterMap::poly_map: negative exponent");
                    deg += e;
                }
                if (deg > 6) throw Error("IterMap::poly_map: degree cap is 6");
                if (deg == 0 && m.coeff != 0.0) {
                    throw Error("IterMap::poly_map: constant term would break g(0) = 0");
                }
            }
        }
        return IterMap(iter::Node(iter::Poly{k, std::move(coords)}));
    }

    /// The identity as a polynomial map (useful as an exact-limit reference).
    static IterMap poly_identity(Index k) {
        std::vector<std::vector<iter::Monomial>> coords(k);
        for (Index j = 0; j < k; ++j) {
            iter::Monomial m{1.0, std::vector<int>(k, 0)};
            m.exponents[j] = 1;
            coords[j].push_back(std::move(m));
        }
        return poly_map(k, std::move(coords));
    }

    Index dim() const {
        return std::visit(
            [](const auto& n) -> Index {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, iter::Log1p>) return 1;
                else if constexpr (std::is_same_v<T, iter::Quad2D>) return 2;
                else return n.k;
            },
            node_);
    }

    Vec apply(const Vec& x) const {
        detail::require_same_dim(x.size(), dim(), "IterMap::apply");
        return std::visit(
            [&x](const auto& n) -> Vec {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, iter::Log1p>) {
                    Vec v(1);
                    v[0] = std::log1p(x[0]);
                    return v;
                } else if constexpr (std::is_same_v<T, iter::Quad2D>) {
                    Vec v(2);
                    const double a = x[0], b = x[1];
                    v << a - 0.5 * a * a + 0.5 * b * b, b - a * b;
                    return v;
                } else {
                    Vec v = Vec::Zero(n.k);
                    for (Index j = 0; j < n.k; ++j) {
                        for (const auto& m : n.coords[static_cast<std::size_t>(j)]) {
                            double term = m.coeff;
                            for (Index i = 0; i < n.k; ++i) {
                                for (int e = 0; e < m.exponents[static_cast<std::size_t>(i)]; ++e) {
                                    term *= x[i];
                                }
                            }
                            v[j] += term;
                        }
                    }
                    return v;
                }
            },
            node_);
    }

    const iter::Node& node() const noexcept { return node_; }

private:
    explicit IterMap(iter::Node n) : node_(std::move(n)) {}

    iter::Node node_;
};

/// L_n(x) = n · g∘ⁿ(x/n): exact n-fold composition, then rescale. Throws
/// IterateDiverged when an intermediate exceeds 1e12 in norm or is not finite.
inline Point scaled_iterate(const IterMap& g, const Vec& x, std::int64_t n) {
    if (n < 1) throw Error("scaled_iterate: n must be >= 1");
    detail::require_same_dim(x.size(), g.dim(), "scaled_iterate");
    Vec v = x / static_cast<double>(n);
    for (std::int64_t i = 0; i < n; ++i) {
        v = g.apply(v);
        if (!v.allFinite() || v.norm() > 1e12) {
            throw IterateDiverged("scaled_iterate: iterate escaped the divergence guard");
        }
    }
    return Point::finite(Vec(v * static_cast<double>(n)));
}

struct LimitEstimate {
    Point value;                                        // L at the largest n
    std::vector<std::pair<std::int64_t, Point>> history;  // (n, L_n(x)), n doubling
    bool converged = false;
    double rate_estimate = std::numeric_limits<double>::quiet_NaN();

    LimitEstimate() : value(Point::zero(1)) {}
};

/// Evaluates L_n at n = n₀·2^j for j = 0..levels−1. Convergence is judged by
/// the chordal distance of the last two iterates; the rate estimate is the
/// log₂ ratio of the last two successive differences (≈ 1 for O(1/n) decay,
/// +∞ when the tail differences vanish).
inline LimitEstimate estimate_limit(const IterMap& g, const Vec& x, std::int64_t n0, int levels,
                                    double tol) {
    if (n0 < 1) throw Error("estimate_limit: n0 must be >= 1");
    if (levels < 2) throw Error("estimate_limit: at least two levels required");
    if (!(tol > 0.0)) throw Error("estimate_limit: tol must be positive");

    LimitEstimate est;
    std::int64_t n = n0;
    for (int j = 0; j < levels; ++j) {
        est.history.emplace_back(n, scaled_iterate(g, x, n));
        n *= 2;
    }
    est.value = est.history.back().second;

    std::vector<double> deltas;
    for (std::size_t j = 0; j + 1 < est.history.size(); ++j) {
        deltas.push_back(chordal_distance(est.history[j].second, est.history[j + 1].second));
    }
    est.converged = deltas.back() < tol;
    if (deltas.size() >= 2) {
        const double d_prev = deltas[deltas.size() - 2];
        const double d_last = deltas.back();
        if (d_last == 0.0) {
            est.rate_estimate = std::numeric_limits<double>::infinity();
        } else {
            est.rate_estimate = std::log2(d_prev / d_last);
        }
    }
    return est;
}

}  // namespace flowlab
