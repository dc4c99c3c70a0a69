#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "flowlab/forms.hpp"
#include "flowlab/homothety.hpp"
#include "flowlab/space.hpp"

namespace flowlab {

class Solution;

namespace sol {

// φ_{a,Q}(x) = (a·Q(x) + x) / (Q(x)Q(a) + B(x,a) + 1), Q(a) ≠ 0.
struct QuadFlow {
    Vec a;
    QuadraticForm q;
};

// φ_{c,L}(x) = c·L²(x) + x, L(c) = 0.
struct LinFlow {
    Vec c;
    LinearForm l;
};

// (φ₁(x))_j = (Σ x_i² + k·x_j) / Σ (x_i + 1)²; equals φ_{e, |x|²/k}.
struct Canonical1 {
    Index k;
};

// (φ_∞(x))_j = d_j (Σ x_i)² + x_j, Σ d_i = 0.
struct CanonicalInf {
    Vec d;
};

struct Identity {
    Index k;
};

struct Zero {
    Index k;
};

enum class CatalogId { pvz1, pvz2, pvz3, pvz4, pvz5, pvz6, pvz7, pvz8 };

// The explicit 2-D catalog. pvz1–pvz3 take parameters (a, b).
struct Catalog {
    CatalogId id;
    double a = 1.0;
    double b = 1.0;
};

struct Conjugated {
    std::shared_ptr<const Solution> inner;
    Homothety ell;
};

using Node = std::variant<QuadFlow, LinFlow, Canonical1, CanonicalInf, Identity, Zero, Catalog, Conjugated>;

inline const char* catalog_name(CatalogId id) {
    switch (id) {
        case CatalogId::pvz1: return "pvz1";
        case CatalogId::pvz2: return "pvz2";
        case CatalogId::pvz3: return "pvz3";
        case CatalogId::pvz4: return "pvz4";
        case CatalogId::pvz5: return "pvz5";
        case CatalogId::pvz6: return "pvz6";
        case CatalogId::pvz7: return "pvz7";
        case CatalogId::pvz8: return "pvz8";
    }
    return "?";
}

}  // namespace sol

namespace detail {

// Near-singular denominator rule: |den| < 1e−13·(1 + |num|) counts as a pole
// and the value is the point at infinity.
inline bool denominator_vanishes(double den, double num_norm) {
    return !(std::abs(den) >= 1e-13 * (1.0 + num_norm));
}

inline Point rational_point(Vec num, double den) {
    if (denominator_vanishes(den, num.norm())) return Point::infinity(num.size());
    return finite_or_infinity(Vec(num / den));
}

// Componentwise rational value (independent denominators, e.g. pvz1): any
// vanishing denominator sends the whole point to ∞.
inline Point componentwise_rational(const Vec& num, const Vec& den) {
    for (Index i = 0; i < num.size(); ++i) {
        if (denominator_vanishes(den[i], std::abs(num[i]))) return Point::infinity(num.size());
    }
    return finite_or_infinity(Vec(num.array() / den.array()));
}

// Clearance proxy for a rational denominator: |value| relative to the sum of
// the magnitudes of its additive terms. Zero on the singular curve, O(1) far
// from it, scale-free.
inline double term_clearance(double value, double term_magnitudes) {
    return std::abs(value) / (1.0 + term_magnitudes);
}

}  // namespace detail

/// One solution family of the translation-equation special case
/// (1−z)φ(x) = φ(φ(xz)(1−z)/z) acting on R^k ∪ {∞}.
///
/// Every variant satisfies φ(0) = 0; evaluation at a declared singular point
/// yields ∞. `flow(z, x)` is the scaled map φ^z(x) = (1/z)·φ(xz) with the
/// limit conventions φ^0 = id and the per-variant value at z = ∞.
class Solution {
public:
    static Solution quad_flow(Vec a, QuadraticForm q) {
        detail::require_same_dim(a.size(), q.dim(), "Solution::quad_flow");
        const double qa = q(a);
        const double scale = q.matrix().norm() * a.squaredNorm();
        if (!(std::abs(qa) > 1e-12 * (1.0 + scale))) {
            throw DegenerateDirection("Solution::quad_flow: Q(a) = 0");
        }
        return Solution(sol::Node(sol::QuadFlow{std::move(a), std::move(q)}));
    }

    static Solution lin_flow(Vec c, LinearForm l) {
        detail::require_same_dim(c.size(), l.dim(), "Solution::lin_flow");
        const double lc = l(c);
        if (!(std::abs(lc) <= 1e-12 * c.norm() * l.coeffs().norm())) {
            throw DegenerateDirection("Solution::lin_flow: L(c) must vanish");
        }
        return Solution(sol::Node(sol::LinFlow{std::move(c), std::move(l)}));
    }

    static Solution canonical1(Index k) {
        if (k < 1) throw Error("Solution::canonical1: k must be >= 1");
        return Solution(sol::Node(sol::Canonical1{k}));
    }

    static Solution canonical_inf(Vec d) {
        if (d.size() < 1) throw Error("Solution::canonical_inf: dimension must be >= 1");
        if (!(std::abs(d.sum()) <= 1e-12 * d.norm())) {
            throw DegenerateDirection("Solution::canonical_inf: components of d must sum to zero");
        }
        return Solution(sol::Node(sol::CanonicalInf{std::move(d)}));
    }

    static Solution identity(Index k) { return Solution(sol::Node(sol::Identity{k})); }
    static Solution zero(Index k) { return Solution(sol::Node(sol::Zero{k})); }

    static Solution catalog(sol::CatalogId id, double a = 1.0, double b = 1.0) {
        return Solution(sol::Node(sol::Catalog{id, a, b}));
    }

    static Solution conjugated(Solution inner, Homothety ell) {
        const Index hk = ell.dim();
        if (hk != 0) detail::require_same_dim(inner.dim(), hk, "Solution::conjugated");
        return Solution(sol::Node(
            sol::Conjugated{std::make_shared<Solution>(std::move(inner)), std::move(ell)}));
    }

    Index dim() const {
        return std::visit(
            [](const auto& n) -> Index {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, sol::QuadFlow>) return n.a.size();
                else if constexpr (std::is_same_v<T, sol::LinFlow>) return n.c.size();
                else if constexpr (std::is_same_v<T, sol::Canonical1>) return n.k;
                else if constexpr (std::is_same_v<T, sol::CanonicalInf>) return n.d.size();
                else if constexpr (std::is_same_v<T, sol::Identity>) return n.k;
                else if constexpr (std::is_same_v<T, sol::Zero>) return n.k;
                else if constexpr (std::is_same_v<T, sol::Catalog>) return 2;
                else return n.inner->dim();
            },
            node_);
    }

    const sol::Node& node() const noexcept { return node_; }

    Point eval(const Point& p) const {
        detail::require_same_dim(p.dim(), dim(), "Solution::eval");
        if (p.is_infinity()) return eval_at_infinity();
        if (p.is_zero()) {
            // φ(0) = 0 for every solution (z = 1 substitution in the equation)
            return Point::zero(dim());
        }
        return std::visit([&](const auto& n) { return eval_node(n, p); }, node_);
    }

    /// φ^z(x) = (1/z)·φ(xz); φ^0 = id (the z → 0 limit); at z = ∞ the
    /// pointwise limit where one exists, else UnboundedFlow.
    Point flow(const ExtScalar& z, const Point& p) const {
        if (z.is_infinity()) return flow_at_infinite_z(p);
        return flow(z.value(), p);
    }

    Point flow(double z, const Point& p) const {
        detail::require_same_dim(p.dim(), dim(), "Solution::flow");
        if (std::isnan(z) || std::isinf(z)) throw Error("Solution::flow: z must be a finite real");
        if (z == 0.0) return p;  // includes flow(0, ∞) = ∞ by convention
        return scale(eval(scale(p, z)), 1.0 / z);
    }

    /// φ(∞). Finite for quadratic-form flows (a/Q(a)); ∞ for linear-form
    /// flows; a fixed convention (∞) for catalog entries without a limit.
    Point eval_at_infinity() const {
        return std::visit(
            [this](const auto& n) -> Point {
                using T = std::decay_t<decltype(n)>;
                const Index k = dim();
                if constexpr (std::is_same_v<T, sol::QuadFlow>) {
                    return Point::finite(Vec(n.a / n.q(n.a)));
                } else if constexpr (std::is_same_v<T, sol::Canonical1>) {
                    return Point::finite(Vec(Vec::Ones(n.k)));
                } else if constexpr (std::is_same_v<T, sol::Zero>) {
                    return Point::zero(k);
                } else if constexpr (std::is_same_v<T, sol::Catalog>) {
                    switch (n.id) {
                        case sol::CatalogId::pvz5: return Point::finite({2.0, 0.0});
                        case sol::CatalogId::pvz1:
                            if (n.a != 0.0 && n.b != 0.0) return Point::finite({1.0 / n.a, 1.0 / n.b});
                            return Point::infinity(2);
                        default: return Point::infinity(2);
                    }
                } else if constexpr (std::is_same_v<T, sol::Conjugated>) {
                    return n.ell.apply_inverse(n.inner->eval_at_infinity());
                } else {
                    return Point::infinity(k);
                }
            },
            node_);
    }

    /// Exceptional vector when finite: the value of φ at ∞.
    std::optional<Point> finite_exceptional_vector() const {
        Point v = eval_at_infinity();
        if (v.is_finite() && !v.is_zero()) return v;
        return std::nullopt;
    }

    /// Continuous on the whole compactification R^k ∪ {∞}?
    bool continuous_on_sphere() const {
        return std::visit(
            [](const auto& n) -> bool {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, sol::QuadFlow>) {
                    return n.q.positive_definite();
                } else if constexpr (std::is_same_v<T, sol::Catalog>) {
                    switch (n.id) {
                        case sol::CatalogId::pvz1:
                        case sol::CatalogId::pvz2:
                        case sol::CatalogId::pvz3:
                        case sol::CatalogId::pvz6:
                        case sol::CatalogId::pvz7: return false;
                        default: return true;
                    }
                } else if constexpr (std::is_same_v<T, sol::Conjugated>) {
                    return n.inner->continuous_on_sphere() && n.ell.bijective();
                } else {
                    return true;
                }
            },
            node_);
    }

    /// Distance-like margin of p from the declared singular set (and, for
    /// variants discontinuous at ∞, from ∞). Exact chordal distance for point
    /// singular sets; a scale-free denominator magnitude for curve sets.
    /// Verification sampling excludes draws whose full evaluation chain dips
    /// below the exclusion radius.
    double singular_clearance(const Point& p) const {
        return std::visit([&](const auto& n) { return clearance_node(n, p); }, node_);
    }

    /// Human-readable description of the singular set, for the catalog listing.
    std::string singular_description() const;

private:
    explicit Solution(sol::Node n) : node_(std::move(n)) {}

    Point flow_at_infinite_z(const Point& p) const {
        detail::require_same_dim(p.dim(), dim(), "Solution::flow");
        if (std::holds_alternative<sol::Identity>(node_)) return p;
        if (std::holds_alternative<sol::Zero>(node_)) return Point::zero(dim());
        if (const auto* c = std::get_if<sol::Conjugated>(&node_)) {
            return c->ell.apply_inverse(c->inner->flow_at_infinite_z(c->ell.apply(p)));
        }
        if (eval_at_infinity().is_finite()) return Point::zero(dim());
        throw UnboundedFlow("Solution::flow: no pointwise limit of (1/z)·φ(xz) at z = ∞");
    }

    // --- evaluation per variant -------------------------------------------

    static Point eval_node(const sol::QuadFlow& n, const Point& p) {
        const Vec& x = p.coords();
        const double qx = n.q(x);
        const double qa = n.q(n.a);
        const double bxa = n.q.bilinear(x, n.a);
        const double den = qx * qa + bxa + 1.0;
        return detail::rational_point(Vec(n.a * qx + x), den);
    }

    static Point eval_node(const sol::LinFlow& n, const Point& p) {
        const double lx = n.l(p.coords());
        return detail::finite_or_infinity(Vec(n.c * (lx * lx) + p.coords()));
    }

    static Point eval_node(const sol::Canonical1& n, const Point& p) {
        const Vec& x = p.coords();
        const double sumsq = x.squaredNorm();
        const double den = (x.array() + 1.0).square().sum();
        Vec num = static_cast<double>(n.k) * x;
        num.array() += sumsq;
        return detail::rational_point(std::move(num), den);
    }

    static Point eval_node(const sol::CanonicalInf& n, const Point& p) {
        const double s = p.coords().sum();
        return detail::finite_or_infinity(Vec(n.d * (s * s) + p.coords()));
    }

    static Point eval_node(const sol::Identity&, const Point& p) { return p; }

    static Point eval_node(const sol::Zero& n, const Point&) { return Point::zero(n.k); }

    static Point eval_node(const sol::Catalog& n, const Point& p) {
        const double x = p.coords()[0], y = p.coords()[1];
        Vec num(2), den(2);
        switch (n.id) {
            case sol::CatalogId::pvz1:
                num << x, y;
                den << n.a * x + 1.0, n.b * y + 1.0;
                return detail::componentwise_rational(num, den);
            case sol::CatalogId::pvz2: {
                num << x, y;
                return detail::rational_point(std::move(num), n.a * x + n.b * y + 1.0);
            }
            case sol::CatalogId::pvz3: {
                const double d2 = n.b * y + 1.0;
                num << x, y;
                den << d2 * (n.a * x + n.b * y + 1.0), d2;
                return detail::componentwise_rational(num, den);
            }
            case sol::CatalogId::pvz4: {
                num << 2.0 * x * x - 8.0 * y * y + x, x * x - 4.0 * y * y + y;
                return detail::rational_point(std::move(num), 4.0 * x - 8.0 * y + 1.0);
            }
            case sol::CatalogId::pvz5: {
                num << 2.0 * x * x + 2.0 * y * y + 4.0 * x, 4.0 * y;
                return detail::rational_point(std::move(num), x * x + y * y + 4.0 * x + 4.0);
            }
            case sol::CatalogId::pvz6: {
                const double x2 = x * x, y2 = y * y;
                const double bracket = x2 * x2 + 2.0 * y2 * x2 + y2 * y2 + 2.0 * y * x2;
                const double d = x2 * x2 * x2 + 3.0 * x2 * x2 * y2 + 3.0 * x2 * y2 * y2 +
                                 y2 * y2 * y2 + 4.0 * y * x2 * x2 + 4.0 * y2 * y * x2 +
                                 4.0 * y2 * x2;
                num << 4.0 * bracket * bracket * y2 * x, 8.0 * bracket * x2 * y2 * y2;
                return detail::rational_point(std::move(num), d * d);
            }
            case sol::CatalogId::pvz7: {
                const double x2 = x * x, y2 = y * y;
                const double t1 = x * x2 + x2 + y2;
                const double t2 = y * y2 + x2 + y2;
                const double c1 = signed_cuberoot(t1);
                const double c2 = signed_cuberoot(t2);
                if (detail::denominator_vanishes(t1, std::abs(x * x2)) ||
                    detail::denominator_vanishes(t2, std::abs(y * y2))) {
                    return Point::infinity(2);
                }
                num << x * x2 / t1 + x * y2 / (c1 * c2 * c2),
                       y * y2 / t2 + x2 * y / (c1 * c1 * c2);
                return detail::finite_or_infinity(std::move(num));
            }
            case sol::CatalogId::pvz8: {
                const double s = (x - y) * (x - y);
                num << s + x, s + y;
                return detail::finite_or_infinity(std::move(num));
            }
        }
        throw Error("Solution::eval: unknown catalog entry");
    }

    static Point eval_node(const sol::Conjugated& n, const Point& p) {
        return n.ell.apply_inverse(n.inner->eval(n.ell.apply(p)));
    }

    // --- singular clearance per variant -----------------------------------

    template <typename NodeT>
    double clearance_node(const NodeT& n, const Point& p) const {
        using T = std::decay_t<NodeT>;
        if constexpr (std::is_same_v<T, sol::QuadFlow>) {
            if (n.q.positive_definite()) {
                return chordal_distance(p, Point::finite(Vec(-n.a / n.q(n.a))));
            }
            if (p.is_infinity()) return 0.0;  // non-PD flows are not continuous at ∞
            const Vec& x = p.coords();
            const double qx = n.q(x), qa = n.q(n.a), bxa = n.q.bilinear(x, n.a);
            return detail::term_clearance(qx * qa + bxa + 1.0, std::abs(qx * qa) + std::abs(bxa));
        } else if constexpr (std::is_same_v<T, sol::Canonical1>) {
            return chordal_distance(p, Point::finite(Vec(-Vec::Ones(n.k))));
        } else if constexpr (std::is_same_v<T, sol::Catalog>) {
            return catalog_clearance(n, p);
        } else if constexpr (std::is_same_v<T, sol::Conjugated>) {
            double c = n.ell.domain_clearance(p);
            if (c == 0.0) return 0.0;
            const Point q = n.ell.apply(p);
            c = std::min(c, n.inner->singular_clearance(q));
            if (c == 0.0) return 0.0;
            const Point r = n.inner->eval(q);
            return std::min(c, n.ell.inverse_domain_clearance(r));
        } else {
            // LinFlow, CanonicalInf, Identity, Zero: continuous everywhere
            (void)n;
            return 2.0;
        }
    }

    static double catalog_clearance(const sol::Catalog& n, const Point& p) {
        using sol::CatalogId;
        if (n.id == CatalogId::pvz8) return 2.0;
        if (n.id == CatalogId::pvz5) return chordal_distance(p, Point::finite({-2.0, 0.0}));
        if (p.is_infinity()) return 0.0;  // remaining entries are not continuous at ∞
        const double x = p.coords()[0], y = p.coords()[1];
        switch (n.id) {
            case CatalogId::pvz1: {
                double c = 2.0;
                if (n.a != 0.0) c = std::min(c, detail::term_clearance(n.a * x + 1.0, std::abs(n.a * x)));
                if (n.b != 0.0) c = std::min(c, detail::term_clearance(n.b * y + 1.0, std::abs(n.b * y)));
                return c;
            }
            case CatalogId::pvz2:
                return detail::term_clearance(n.a * x + n.b * y + 1.0,
                                              std::abs(n.a * x) + std::abs(n.b * y));
            case CatalogId::pvz3:
                return std::min(
                    detail::term_clearance(n.b * y + 1.0, std::abs(n.b * y)),
                    detail::term_clearance(n.a * x + n.b * y + 1.0,
                                           std::abs(n.a * x) + std::abs(n.b * y)));
            case CatalogId::pvz4:
                return detail::term_clearance(4.0 * x - 8.0 * y + 1.0, 4.0 * std::abs(x) + 8.0 * std::abs(y));
            case CatalogId::pvz6: {
                const double x2 = x * x, y2 = y * y;
                const double d = x2 * x2 * x2 + 3.0 * x2 * x2 * y2 + 3.0 * x2 * y2 * y2 +
                                 y2 * y2 * y2 + 4.0 * y * x2 * x2 + 4.0 * y2 * y * x2 +
                                 4.0 * y2 * x2;
                const double mags = x2 * x2 * x2 + 3.0 * x2 * x2 * y2 + 3.0 * x2 * y2 * y2 +
                                    y2 * y2 * y2 + 4.0 * std::abs(y) * x2 * x2 +
                                    4.0 * y2 * std::abs(y) * x2 + 4.0 * y2 * x2;
                return std::min(chordal_distance(p, Point::zero(2)),
                                detail::term_clearance(d, mags));
            }
            case CatalogId::pvz7: {
                const double x2 = x * x, y2 = y * y;
                return std::min(
                    detail::term_clearance(x * x2 + x2 + y2, std::abs(x * x2) + x2 + y2),
                    detail::term_clearance(y * y2 + x2 + y2, std::abs(y * y2) + x2 + y2));
            }
            default: return 2.0;
        }
    }

    sol::Node node_;
};

inline std::string Solution::singular_description() const {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, sol::QuadFlow>) {
                if (n.q.positive_definite()) return "point -a/Q(a)";
                return "conic Q(x)Q(a)+B(x,a)+1 = 0; no limit at infinity";
            } else if constexpr (std::is_same_v<T, sol::Canonical1>) {
                return "point (-1,...,-1)";
            } else if constexpr (std::is_same_v<T, sol::Catalog>) {
                using sol::CatalogId;
                switch (n.id) {
                    case CatalogId::pvz1: return "lines a*x+1 = 0 and b*y+1 = 0; no limit at infinity";
                    case CatalogId::pvz2: return "line a*x+b*y+1 = 0; no limit at infinity";
                    case CatalogId::pvz3: return "lines b*y+1 = 0 and a*x+b*y+1 = 0; no limit at infinity";
                    case CatalogId::pvz4: return "line 4*x-8*y+1 = 0";
                    case CatalogId::pvz5: return "point (-2,0)";
                    case CatalogId::pvz6: return "origin and infinity (denominator vanishes only at the origin)";
                    case CatalogId::pvz7: return "curves x^3+x^2+y^2 = 0 and y^3+x^2+y^2 = 0; no limit at infinity";
                    case CatalogId::pvz8: return "none";
                }
                return "?";
            } else if constexpr (std::is_same_v<T, sol::Conjugated>) {
                return "preimage under ell of the inner singular set";
            } else {
                return "none";
            }
        },
        node_);
}

/// φ_{a,Q} ∘ φ_{b,Q} = φ_{a+b,Q}: returns the composite as a quadratic-form
/// flow. Throws DegenerateDirection when Q(a+b) = 0 (the composite leaves the
/// family).
inline Solution quadflow_compose(const Vec& a, const Vec& b, const QuadraticForm& q) {
    detail::require_same_dim(a.size(), b.size(), "quadflow_compose");
    const double scale = q.matrix().norm();
    auto check_nonzero = [&](const Vec& v, const char* what) {
        if (!(std::abs(q(v)) > 1e-12 * (1.0 + scale * v.squaredNorm()))) {
            throw DegenerateDirection(std::string("quadflow_compose: Q(") + what + ") = 0");
        }
    };
    check_nonzero(a, "a");
    check_nonzero(b, "b");
    check_nonzero(a + b, "a+b");
    return Solution::quad_flow(a + b, q);
}

/// Both sides of Q(b·Q(x) + x) = (Q(x)Q(b) + B(x,b) + 1)·Q(x).
inline std::pair<double, double> tarp_identity_check(const Vec& b, const QuadraticForm& q, const Vec& x) {
    detail::require_same_dim(b.size(), x.size(), "tarp_identity_check");
    const double qx = q(x);
    const double lhs = q(Vec(b * qx + x));
    const double rhs = (qx * q(b) + q.bilinear(x, b) + 1.0) * qx;
    return {lhs, rhs};
}

/// χ^ℓ = ℓ⁻¹ ∘ χ ∘ ℓ, itself a solution of the functional equation.
inline Solution conjugate(Solution s, Homothety ell) {
    return Solution::conjugated(std::move(s), std::move(ell));
}

}  // namespace flowlab
