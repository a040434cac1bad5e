#pragma once

// Affine similarity maps x -> rho * R * x + t on R^n, n <= 3.
//
// Points are always stored as 3-vectors. Two-dimensional problems keep the
// third coordinate at zero and embed 2x2 rotations in the upper-left block, so
// a single code path serves both ambient dimensions.

#include <Eigen/Dense>

namespace fiem {

using Point = Eigen::Vector3d;
using Matrix = Eigen::Matrix3d;

class Similarity {
public:
    Similarity() = default;
    Similarity(double rho, const Matrix& rotation, const Point& translation);

    static Similarity identity() { return {}; }

    /// Planar similarity: scale `rho`, counter-clockwise rotation by `angle`,
    /// optional reflection y -> -y applied before the rotation.
    static Similarity planar(double rho, double angle, const Point& translation,
                             bool reflect = false);

    double rho() const { return rho_; }
    const Matrix& rotation() const { return rotation_; }
    const Point& translation() const { return translation_; }

    /// rho * rotation
    Matrix linear() const { return rho_ * rotation_; }

    Point operator()(const Point& x) const { return rho_ * (rotation_ * x) + translation_; }

    /// Composition: (*this)(other(x)).
    Similarity compose(const Similarity& other) const;
    Similarity inverse() const;

    bool is_isometry(double tol = 1e-12) const;

    /// Max-norm distance between the affine coefficients of two maps, with the
    /// translation difference divided by `length_scale`.
    double distance(const Similarity& other, double length_scale = 1.0) const;

    /// Fixed point x = s(x); requires rho < 1.
    Point fixed_point() const;

private:
    double rho_ = 1.0;
    Matrix rotation_ = Matrix::Identity();
    Point translation_ = Point::Zero();
};

inline Similarity operator*(const Similarity& a, const Similarity& b) { return a.compose(b); }

/// Rigid motion with T(Gamma) = Gamma for some attractor; stored as a
/// Similarity with unit ratio.
using Isometry = Similarity;

/// Checks R^T R = I within `tol`.
bool is_orthogonal(const Matrix& m, double tol = 1e-12);

}  // namespace fiem
