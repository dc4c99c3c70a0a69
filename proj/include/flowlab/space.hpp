#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace flowlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct IndeterminateProduct : Error {
    using Error::Error;
};
struct UnsupportedDimension : Error {
    using Error::Error;
};
struct DegenerateDirection : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct AllSamplesExcluded : Error {
    using Error::Error;
};
struct IterateDiverged : Error {
    using Error::Error;
};
struct UnboundedFlow : Error {
    using Error::Error;
};
struct ZeroInput : Error {
    using Error::Error;
};
struct NonPositiveInput : Error {
    using Error::Error;
};
struct NotAOneDSolution : Error {
    using Error::Error;
};
struct DirectionParallelToA : Error {
    using Error::Error;
};
struct DescriptorError : Error {
    using Error::Error;
};

namespace detail {

inline void require_same_dim(Index a, Index b, const char* where) {
    if (a != b) {
        throw DimensionMismatch(std::string(where) + ": dimensions " + std::to_string(a) +
                                " and " + std::to_string(b) + " differ");
    }
}

}  // namespace detail

/// A point of the one-point compactification R^k ∪ {∞}.
///
/// Finite points hold a coordinate vector with no NaN/Inf entries; the single
/// point at infinity carries only the ambient dimension. Arithmetic that
/// overflows double range saturates to the point at infinity.
class Point {
public:
    static Point finite(Vec coords) {
        if (!coords.allFinite()) {
            throw Error("Point::finite: coordinates must be finite and not NaN");
        }
        if (coords.size() < 1) {
            throw Error("Point::finite: dimension must be >= 1");
        }
        return Point(false, std::move(coords));
    }

    static Point finite(std::initializer_list<double> coords) {
        Vec v(static_cast<Index>(coords.size()));
        Index i = 0;
        for (double c : coords) v[i++] = c;
        return finite(std::move(v));
    }

    static Point zero(Index k) { return Point(false, Vec::Zero(k)); }

    static Point infinity(Index k) {
        if (k < 1) throw Error("Point::infinity: dimension must be >= 1");
        Point p(true, Vec());
        p.dim_ = k;
        return p;
    }

    bool is_infinity() const noexcept { return infinity_; }
    bool is_finite() const noexcept { return !infinity_; }
    bool is_zero() const noexcept { return !infinity_ && (coords_.array() == 0.0).all(); }

    const Vec& coords() const {
        if (infinity_) throw Error("Point::coords: point at infinity has no coordinates");
        return coords_;
    }

    Index dim() const noexcept { return infinity_ ? dim_ : coords_.size(); }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.dim() != b.dim()) return false;
        if (a.infinity_ || b.infinity_) return a.infinity_ && b.infinity_;
        return (a.coords_.array() == b.coords_.array()).all();
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
    Point(bool inf, Vec coords) : infinity_(inf), coords_(std::move(coords)), dim_(0) {}

    bool infinity_;
    Vec coords_;
    Index dim_;  // used only when infinity_
};

/// An extended scalar z ∈ R ∪ {∞}: the flow/time parameter.
class ExtScalar {
public:
    static ExtScalar finite(double v) {
        if (std::isnan(v) || std::isinf(v)) {
            throw Error("ExtScalar::finite: value must be a finite real");
        }
        return ExtScalar(false, v);
    }

    static ExtScalar infinity() { return ExtScalar(true, 0.0); }

    bool is_infinity() const noexcept { return infinity_; }
    double value() const {
        if (infinity_) throw Error("ExtScalar::value: infinite scalar has no value");
        return value_;
    }

private:
    ExtScalar(bool inf, double v) : infinity_(inf), value_(v) {}

    bool infinity_;
    double value_;
};

namespace detail {

// Saturating constructor: coordinate overflow collapses to the point at infinity.
inline Point finite_or_infinity(Vec v) {
    if (!v.allFinite()) return Point::infinity(v.size());
    return Point::finite(std::move(v));
}

}  // namespace detail

/// Product z·p on the compactification. 0·∞ and ∞·0 are indeterminate.
inline Point scale(const Point& p, double z) {
    if (std::isnan(z) || std::isinf(z)) throw Error("scale: scalar must be a finite real");
    if (p.is_infinity()) {
        if (z == 0.0) throw IndeterminateProduct("scale: infinity times zero");
        return p;
    }
    return detail::finite_or_infinity(p.coords() * z);
}

inline Point scale(const Point& p, const ExtScalar& z) {
    if (z.is_infinity()) {
        if (p.is_zero()) throw IndeterminateProduct("scale: zero times infinity");
        return Point::infinity(p.dim());
    }
    return scale(p, z.value());
}

/// Embedding of R^k ∪ {∞} onto the unit sphere S^k ⊂ R^{k+1}:
/// x ↦ (2x, |x|²−1)/(|x|²+1), ∞ ↦ north pole.
inline Vec stereographic(const Point& p) {
    const Index k = p.dim();
    Vec s = Vec::Zero(k + 1);
    if (p.is_infinity()) {
        s[k] = 1.0;
        return s;
    }
    const double n2 = p.coords().squaredNorm();
    if (std::isinf(n2)) {
        // |x|² beyond double range: indistinguishable from the pole.
        s[k] = 1.0;
        return s;
    }
    const double denom = n2 + 1.0;
    s.head(k) = 2.0 * p.coords() / denom;
    s[k] = (n2 - 1.0) / denom;
    return s;
}

/// Chordal metric: Euclidean distance of stereographic images. Range [0, 2],
/// continuous across ∞; the canonical comparison metric for all residuals.
inline double chordal_distance(const Point& p, const Point& q) {
    detail::require_same_dim(p.dim(), q.dim(), "chordal_distance");
    return (stereographic(p) - stereographic(q)).norm();
}

}  // namespace flowlab
