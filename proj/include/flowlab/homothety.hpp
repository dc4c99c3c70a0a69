#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "flowlab/sampling.hpp"
#include "flowlab/space.hpp"

namespace flowlab {

/// Signed real cube root: x^{1/3} = sgn(x)|x|^{1/3}.
inline double signed_cuberoot(double x) { return std::cbrt(x); }

class Homothety;

namespace hom {

struct Linear {
    Mat m;
    Mat inv;  // cached inverse
};

struct Scalar {
    double c;
};

// ℓ(x,y) = ((x²+y²)/y, (x²+y²)/x); not a bijection (axes collapse to ∞).
struct Circle {};

// ℓ(x,y) = (x³/(x²+y²), y³/(x²+y²)); maps the unit circle to an astroid.
struct Astroid {};

struct Compose {
    std::vector<Homothety> parts;  // applied right-to-left
};

struct Inverse {
    std::shared_ptr<const Homothety> inner;
};

using Node = std::variant<Linear, Scalar, Circle, Astroid, Compose, Inverse>;

}  // namespace hom

/// Homothetic map ℓ of R^k ∪ {∞}: ℓ(zx) = zℓ(x) for all real z. All variants
/// fix 0 and ∞. The circle map is admitted although it is not a bijection;
/// on the coordinate axes its value is taken to be ∞.
class Homothety {
public:
    static Homothety linear(Mat m) {
        if (m.rows() != m.cols() || m.rows() < 1) throw Error("Homothety::linear: square matrix required");
        if (!m.allFinite()) throw Error("Homothety::linear: entries must be finite");
        // Hadamard-bound scale for the degeneracy test
        double scale = 1.0;
        for (Index i = 0; i < m.rows(); ++i) scale *= m.row(i).norm();
        const double det = m.determinant();
        if (!(std::abs(det) > 1e-12 * scale)) {
            throw SingularMatrix("Homothety::linear: matrix is singular or near-singular");
        }
        hom::Linear node{m, m.inverse()};
        return Homothety(hom::Node(std::move(node)));
    }

    static Homothety scalar(double c) {
        if (c == 0.0 || !std::isfinite(c)) throw Error("Homothety::scalar: factor must be finite nonzero");
        return Homothety(hom::Node(hom::Scalar{c}));
    }

    static Homothety circle() { return Homothety(hom::Node(hom::Circle{})); }
    static Homothety astroid() { return Homothety(hom::Node(hom::Astroid{})); }

    static Homothety compose(std::vector<Homothety> parts) {
        if (parts.empty()) throw Error("Homothety::compose: empty composition");
        Index k = 0;
        for (const auto& p : parts) {
            const Index pk = p.dim();
            if (pk == 0) continue;
            if (k == 0) k = pk;
            detail::require_same_dim(k, pk, "Homothety::compose");
        }
        return Homothety(hom::Node(hom::Compose{std::move(parts)}));
    }

    static Homothety inverse(Homothety h) {
        return Homothety(hom::Node(hom::Inverse{std::make_shared<Homothety>(std::move(h))}));
    }

    /// Fixed dimension of the variant; 0 when the map is dimension-agnostic
    /// (scalar homotheties act on every k).
    Index dim() const {
        return std::visit(
            [](const auto& n) -> Index {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, hom::Linear>) {
                    return n.m.rows();
                } else if constexpr (std::is_same_v<T, hom::Scalar>) {
                    return 0;
                } else if constexpr (std::is_same_v<T, hom::Circle> || std::is_same_v<T, hom::Astroid>) {
                    return 2;
                } else if constexpr (std::is_same_v<T, hom::Compose>) {
                    for (const auto& p : n.parts) {
                        if (Index k = p.dim(); k != 0) return k;
                    }
                    return 0;
                } else {
                    return n.inner->dim();
                }
            },
            node_);
    }

    /// A continuous bijection of the sphere? False for the circle map and for
    /// any composition containing it.
    bool bijective() const {
        return std::visit(
            [](const auto& n) -> bool {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, hom::Circle>) {
                    return false;
                } else if constexpr (std::is_same_v<T, hom::Compose>) {
                    return std::all_of(n.parts.begin(), n.parts.end(),
                                       [](const Homothety& p) { return p.bijective(); });
                } else if constexpr (std::is_same_v<T, hom::Inverse>) {
                    return n.inner->bijective();
                } else {
                    return true;
                }
            },
            node_);
    }

    Point apply(const Point& p) const {
        check_dim(p);
        if (p.is_infinity()) return p;
        if (p.is_zero()) return p;
        return std::visit([&](const auto& n) { return apply_node(n, p); }, node_);
    }

    Point apply_inverse(const Point& p) const {
        check_dim(p);
        if (p.is_infinity()) return p;
        if (p.is_zero()) return p;
        return std::visit([&](const auto& n) { return apply_inverse_node(n, p); }, node_);
    }

    /// How far p is from the set where the forward map misbehaves (compared
    /// against the sampling exclusion radius). 2 means unconditionally safe.
    double domain_clearance(const Point& p) const {
        return std::visit([&](const auto& n) { return clearance_node(n, p, /*forward=*/true); }, node_);
    }

    double inverse_domain_clearance(const Point& p) const {
        return std::visit([&](const auto& n) { return clearance_node(n, p, /*forward=*/false); }, node_);
    }

    const hom::Node& node() const noexcept { return node_; }

private:
    explicit Homothety(hom::Node n) : node_(std::move(n)) {}

    void check_dim(const Point& p) const {
        const Index k = dim();
        if (k != 0 && p.dim() != k) {
            if (k == 2 && (std::holds_alternative<hom::Circle>(node_) ||
                           std::holds_alternative<hom::Astroid>(node_))) {
                throw UnsupportedDimension("Homothety: circle/astroid maps require k = 2");
            }
            detail::require_same_dim(p.dim(), k, "Homothety::apply");
        }
    }

    static Point apply_node(const hom::Linear& n, const Point& p) {
        return detail::finite_or_infinity(n.m * p.coords());
    }
    static Point apply_inverse_node(const hom::Linear& n, const Point& p) {
        return detail::finite_or_infinity(n.inv * p.coords());
    }

    static Point apply_node(const hom::Scalar& n, const Point& p) { return scale(p, n.c); }
    static Point apply_inverse_node(const hom::Scalar& n, const Point& p) { return scale(p, 1.0 / n.c); }

    static Point apply_node(const hom::Circle&, const Point& p) {
        const double x = p.coords()[0], y = p.coords()[1];
        if (x == 0.0 || y == 0.0) return Point::infinity(2);  // axis convention
        const double u = x * x + y * y;
        Vec v(2);
        v << u / y, u / x;
        return detail::finite_or_infinity(std::move(v));
    }
    static Point apply_inverse_node(const hom::Circle&, const Point& p) {
        const double x = p.coords()[0], y = p.coords()[1];
        const double u = x * x + y * y;
        Vec v(2);
        v << x * x * y / u, x * y * y / u;
        return detail::finite_or_infinity(std::move(v));
    }

    static Point apply_node(const hom::Astroid&, const Point& p) {
        const double x = p.coords()[0], y = p.coords()[1];
        const double u = x * x + y * y;
        Vec v(2);
        v << x * x * x / u, y * y * y / u;
        return detail::finite_or_infinity(std::move(v));
    }
    static Point apply_inverse_node(const hom::Astroid&, const Point& p) {
        const double x = p.coords()[0], y = p.coords()[1];
        Vec v(2);
        v << x + signed_cuberoot(x * y * y), y + signed_cuberoot(x * x * y);
        return detail::finite_or_infinity(std::move(v));
    }

    static Point apply_node(const hom::Compose& n, const Point& p) {
        Point q = p;
        for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it) q = it->apply(q);
        return q;
    }
    static Point apply_inverse_node(const hom::Compose& n, const Point& p) {
        Point q = p;
        for (const auto& part : n.parts) q = part.apply_inverse(q);
        return q;
    }

    static Point apply_node(const hom::Inverse& n, const Point& p) { return n.inner->apply_inverse(p); }
    static Point apply_inverse_node(const hom::Inverse& n, const Point& p) { return n.inner->apply(p); }

    template <typename NodeT>
    double clearance_node(const NodeT& n, const Point& p, bool forward) const {
        using T = std::decay_t<NodeT>;
        if constexpr (std::is_same_v<T, hom::Linear> || std::is_same_v<T, hom::Scalar>) {
            (void)n;
            (void)forward;
            return 2.0;
        } else if constexpr (std::is_same_v<T, hom::Circle>) {
            if (forward) {
                // trouble set: the coordinate axes (and hence the origin)
                if (p.is_infinity()) return 2.0;
                const double x = p.coords()[0], y = p.coords()[1];
                return std::min(std::abs(x), std::abs(y)) / (1.0 + p.coords().norm());
            }
            // inverse map has no limit at ∞, is fine on all of R²
            return p.is_infinity() ? 0.0 : 2.0;
        } else if constexpr (std::is_same_v<T, hom::Astroid>) {
            return 2.0;
        } else if constexpr (std::is_same_v<T, hom::Compose>) {
            double c = 2.0;
            Point q = p;
            if (forward) {
                for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it) {
                    c = std::min(c, it->domain_clearance(q));
                    if (c == 0.0) return 0.0;
                    q = it->apply(q);
                }
            } else {
                for (const auto& part : n.parts) {
                    c = std::min(c, part.inverse_domain_clearance(q));
                    if (c == 0.0) return 0.0;
                    q = part.apply_inverse(q);
                }
            }
            return c;
        } else {
            return forward ? n.inner->inverse_domain_clearance(p) : n.inner->domain_clearance(p);
        }
    }

    hom::Node node_;
};

/// Max chordal residual of ℓ(zx) = zℓ(x) over seeded samples (x, z), skipping
/// draws inside the map's exclusion zone (δ = 1e−3; the circle map avoids the
/// axes).
inline double check_homogeneity(const Homothety& h, std::int64_t n_samples, std::uint64_t seed) {
    const Index k = h.dim() == 0 ? 2 : h.dim();
    const SampleBox box = SampleBox::standard(k);
    constexpr double kDelta = 1e-3;
    double worst = 0.0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Vec x = box.draw_point(rng);
        const double z = rng.uniform(-2.0, 2.0);
        if (std::abs(z) < 0.05) continue;
        const Point px = Point::finite(x);
        const Point pzx = Point::finite(z * x);
        if (h.domain_clearance(px) < kDelta || h.domain_clearance(pzx) < kDelta) continue;
        const double r = chordal_distance(h.apply(pzx), scale(h.apply(px), z));
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace flowlab
