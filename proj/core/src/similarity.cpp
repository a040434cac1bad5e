#include "fiem/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace fiem {

Similarity::Similarity(double rho, const Matrix& rotation, const Point& translation)
    : rho_(rho), rotation_(rotation), translation_(translation) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("similarity ratio must be positive and finite");
    if (!is_orthogonal(rotation, 1e-12))
        throw std::invalid_argument("similarity rotation is not orthogonal");
}

Similarity Similarity::planar(double rho, double angle, const Point& translation, bool reflect) {
    Matrix r = Matrix::Identity();
    const double c = std::cos(angle), s = std::sin(angle);
    r(0, 0) = c;
    r(0, 1) = -s;
    r(1, 0) = s;
    r(1, 1) = c;
    if (reflect) r.col(1) *= -1.0;
    return {rho, r, translation};
}

Similarity Similarity::compose(const Similarity& other) const {
    Similarity out;
    out.rho_ = rho_ * other.rho_;
    out.rotation_ = rotation_ * other.rotation_;
    out.translation_ = rho_ * (rotation_ * other.translation_) + translation_;
    return out;
}

Similarity Similarity::inverse() const {
    Similarity out;
    out.rho_ = 1.0 / rho_;
    out.rotation_ = rotation_.transpose();
    out.translation_ = -(out.rotation_ * translation_) / rho_;
    return out;
}

bool Similarity::is_isometry(double tol) const { return std::abs(rho_ - 1.0) <= tol; }

double Similarity::distance(const Similarity& other, double length_scale) const {
    const double lin = (linear() - other.linear()).cwiseAbs().maxCoeff();
    const double tr = (translation_ - other.translation_).cwiseAbs().maxCoeff() / length_scale;
    return std::max(lin, tr);
}

Point Similarity::fixed_point() const {
    if (!(rho_ < 1.0)) throw std::domain_error("fixed point requires a contraction");
    const Matrix lhs = Matrix::Identity() - linear();
    return lhs.partialPivLu().solve(translation_);
}

bool is_orthogonal(const Matrix& m, double tol) {
    return ((m.transpose() * m) - Matrix::Identity()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace fiem
