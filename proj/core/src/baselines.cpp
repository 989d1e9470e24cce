#include "dtr/baselines.hpp"

#include "dtr/error.hpp"

#include <cmath>
#include <string>

namespace dtr {
namespace {

// Solves (S' W^-1 S) P = S' W^-1 given W^-1 S and the normal matrix.
Matrix solve_normal(const AggregationMatrix& s, const Matrix& winv_s) {
    const Matrix& sm = s.entries();
    const Matrix normal = sm.transpose() * winv_s;
    Eigen::LLT<Matrix> llt(normal);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::Numeric, "normal matrix of the reconciliation is not positive definite");
    }
    Matrix p = llt.solve(winv_s.transpose());
    if (!p.allFinite()) throw Error(ErrorKind::Numeric, "reconciliation mapping has non-finite entries");
    return p;
}

} // namespace

std::string_view to_string(MappingMethod m) noexcept {
    switch (m) {
    case MappingMethod::bottom_up: return "bottom_up";
    case MappingMethod::top_down: return "top_down";
    case MappingMethod::ols: return "ols";
    case MappingMethod::wls: return "wls";
    case MappingMethod::gls: return "gls";
    }
    return "unknown";
}

MappingMatrix::MappingMatrix(Matrix p, MappingMethod method, std::optional<Matrix> covariance)
    : p_(std::move(p)), method_(method), covariance_(std::move(covariance)) {
    if (!p_.allFinite()) throw Error(ErrorKind::Numeric, "mapping matrix has non-finite entries");
}

MappingMatrix p_bottom_up(const AggregationMatrix& s) {
    Matrix p = Matrix::Zero(s.bottom(), s.total());
    p.rightCols(s.bottom()).setIdentity();
    return MappingMatrix(std::move(p), MappingMethod::bottom_up);
}

MappingMatrix p_top_down(std::span<const double> shares, const AggregationMatrix& s) {
    if (static_cast<Eigen::Index>(shares.size()) != s.bottom()) {
        throw Error(ErrorKind::Shape, "top-down needs " + std::to_string(s.bottom()) + " shares, got " +
                                          std::to_string(shares.size()));
    }
    double sum = 0.0;
    for (double x : shares) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorKind::InvalidShares, "shares must be finite and non-negative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorKind::InvalidShares, "shares sum to " + std::to_string(sum) + ", expected 1");
    }
    Matrix p = Matrix::Zero(s.bottom(), s.total());
    for (Eigen::Index j = 0; j < s.bottom(); ++j) p(j, 0) = shares[static_cast<std::size_t>(j)];
    return MappingMatrix(std::move(p), MappingMethod::top_down);
}

MappingMatrix p_ols(const AggregationMatrix& s) {
    return MappingMatrix(solve_normal(s, s.entries()), MappingMethod::ols,
                         Matrix::Identity(s.total(), s.total()));
}

MappingMatrix p_wls(const AggregationMatrix& s, std::span<const double> weights) {
    if (static_cast<Eigen::Index>(weights.size()) != s.total()) {
        throw Error(ErrorKind::Shape, "WLS needs " + std::to_string(s.total()) + " weights, got " +
                                          std::to_string(weights.size()));
    }
    Vector w(s.total());
    for (Eigen::Index i = 0; i < s.total(); ++i) {
        const double x = weights[static_cast<std::size_t>(i)];
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw Error(ErrorKind::InvalidWeights, "weight " + std::to_string(i) + " must be positive and finite");
        }
        w(i) = x;
    }
    const Matrix winv_s = w.cwiseInverse().asDiagonal() * s.entries();
    return MappingMatrix(solve_normal(s, winv_s), MappingMethod::wls, Matrix(w.asDiagonal()));
}

MappingMatrix p_gls(const AggregationMatrix& s, const Matrix& covariance) {
    if (covariance.rows() != s.total() || covariance.cols() != s.total()) {
        throw Error(ErrorKind::Shape, "covariance must be " + std::to_string(s.total()) + "x" +
                                          std::to_string(s.total()));
    }
    if (!covariance.isApprox(covariance.transpose(), 1e-12)) {
        throw Error(ErrorKind::InvalidWeights, "covariance matrix is not symmetric");
    }
    Eigen::LLT<Matrix> llt(covariance);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::InvalidWeights, "covariance matrix is not positive definite");
    }
    const Matrix winv_s = llt.solve(s.entries());
    return MappingMatrix(solve_normal(s, winv_s), MappingMethod::gls, covariance);
}

HierarchyVector reconcile(const AggregationMatrix& s, const MappingMatrix& p, const HierarchyVector& y_hat) {
    const Matrix& pm = p.entries();
    if (pm.rows() != s.bottom() || pm.cols() != s.total() || y_hat.size() != s.total()) {
        throw Error(ErrorKind::Shape, "reconcile: S is " + std::to_string(s.total()) + "x" +
                                          std::to_string(s.bottom()) + ", P is " + std::to_string(pm.rows()) +
                                          "x" + std::to_string(pm.cols()) + ", y_hat has " +
                                          std::to_string(y_hat.size()) + " entries");
    }
    const Vector bottom = pm * y_hat.full();
    return aggregate_bottom(bottom, s);
}

} // namespace dtr
