#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <utility>
#include <vector>

#include "flowlab/space.hpp"

namespace flowlab {

/// Quadratic form Q(x) = xᵀ M x with M symmetric. Construction symmetrizes the
/// input matrix exactly ((M + Mᵀ)/2) and caches the positive-definiteness test.
class QuadraticForm {
public:
    explicit QuadraticForm(Mat m) {
        if (m.rows() != m.cols()) throw Error("QuadraticForm: matrix must be square");
        if (!m.allFinite()) throw Error("QuadraticForm: matrix entries must be finite");
        mat_ = 0.5 * (m + m.transpose()).eval();
        pd_ = compute_pd(mat_);
    }

    static QuadraticForm identity(Index k) { return QuadraticForm(Mat::Identity(k, k)); }

    static QuadraticForm scaled_identity(Index k, double c) {
        return QuadraticForm(c * Mat::Identity(k, k));
    }

    /// Build from the k(k+1)/2 upper-triangle entries in row-major order
    /// (the CLI wire format for forms).
    static QuadraticForm from_upper_triangle(const std::vector<double>& coeffs) {
        const Index k = dim_from_triangle_size(coeffs.size());
        Mat m(k, k);
        std::size_t idx = 0;
        for (Index i = 0; i < k; ++i) {
            for (Index j = i; j < k; ++j) {
                m(i, j) = coeffs[idx];
                m(j, i) = coeffs[idx];
                ++idx;
            }
        }
        return QuadraticForm(std::move(m));
    }

    std::vector<double> upper_triangle() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(dim() * (dim() + 1) / 2));
        for (Index i = 0; i < dim(); ++i) {
            for (Index j = i; j < dim(); ++j) out.push_back(mat_(i, j));
        }
        return out;
    }

    Index dim() const noexcept { return mat_.rows(); }
    const Mat& matrix() const noexcept { return mat_; }

    double operator()(const Vec& x) const {
        detail::require_same_dim(x.size(), dim(), "QuadraticForm::eval");
        return x.dot(mat_ * x);
    }

    /// Associated bilinear form B(x, y) = Q(x+y) − Q(x) − Q(y), evaluated as
    /// 2 xᵀ M y. The defining identity is kept as a test, not recomputed here.
    double bilinear(const Vec& x, const Vec& y) const {
        detail::require_same_dim(x.size(), dim(), "QuadraticForm::bilinear");
        detail::require_same_dim(y.size(), dim(), "QuadraticForm::bilinear");
        return 2.0 * x.dot(mat_ * y);
    }

    bool positive_definite() const noexcept { return pd_; }

    /// Pullback Q∘M: x ↦ Q(Mx), i.e. the form with matrix Mᵀ (matrix of Q) M.
    QuadraticForm pullback(const Mat& m) const {
        detail::require_same_dim(m.rows(), dim(), "QuadraticForm::pullback");
        return QuadraticForm(m.transpose() * mat_ * m);
    }

private:
    static bool compute_pd(const Mat& m) {
        Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
        const Vec& ev = es.eigenvalues();
        const double largest_abs = ev.cwiseAbs().maxCoeff();
        return ev.minCoeff() > 1e-12 * largest_abs;
    }

    static Index dim_from_triangle_size(std::size_t n) {
        for (Index k = 1; k <= 64; ++k) {
            if (static_cast<std::size_t>(k * (k + 1) / 2) == n) return k;
        }
        throw Error("QuadraticForm: coefficient list is not of length k(k+1)/2");
    }

    Mat mat_;
    bool pd_;
};

/// Linear form L(x) = ⟨coeffs, x⟩.
class LinearForm {
public:
    explicit LinearForm(Vec coeffs) : coeffs_(std::move(coeffs)) {
        if (!coeffs_.allFinite()) throw Error("LinearForm: coefficients must be finite");
        if (coeffs_.size() < 1) throw Error("LinearForm: dimension must be >= 1");
    }

    static LinearForm ones(Index k) { return LinearForm(Vec::Ones(k)); }

    Index dim() const noexcept { return coeffs_.size(); }
    const Vec& coeffs() const noexcept { return coeffs_; }

    double operator()(const Vec& x) const {
        detail::require_same_dim(x.size(), dim(), "LinearForm::eval");
        return coeffs_.dot(x);
    }

    /// Pullback L∘M: x ↦ L(Mx).
    LinearForm pullback(const Mat& m) const {
        detail::require_same_dim(m.rows(), dim(), "LinearForm::pullback");
        return LinearForm(m.transpose() * coeffs_);
    }

private:
    Vec coeffs_;
};

}  // namespace flowlab
