#pragma once

#include "dtr/hierarchy.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace dtr {

enum class MappingMethod { bottom_up, top_down, ols, wls, gls };

std::string_view to_string(MappingMethod m) noexcept;

/// The m x n matrix P of a static linear reconciliation Y~ = S P Y^.
/// For the least-squares variants it also keeps the error covariance W_h it
/// was built from.
class MappingMatrix {
public:
    MappingMatrix(Matrix p, MappingMethod method, std::optional<Matrix> covariance = std::nullopt);

    const Matrix& entries() const noexcept { return p_; }
    MappingMethod method() const noexcept { return method_; }
    const std::optional<Matrix>& covariance() const noexcept { return covariance_; }

private:
    Matrix p_;
    MappingMethod method_;
    std::optional<Matrix> covariance_;
};

/// P = [0 | I]: bottom forecasts pass through, aggregates are re-summed.
MappingMatrix p_bottom_up(const AggregationMatrix& s);

/// P puts `shares` in the column of the top aggregate. Shares must be
/// non-negative and sum to 1 within 1e-9.
MappingMatrix p_top_down(std::span<const double> shares, const AggregationMatrix& s);

/// P = (S'S)^-1 S'.
MappingMatrix p_ols(const AggregationMatrix& s);

/// P = (S' W^-1 S)^-1 S' W^-1 with W = diag(weights); weights are the error
/// variances of each node and must be positive.
MappingMatrix p_wls(const AggregationMatrix& s, std::span<const double> weights);

/// Same formula with a caller-supplied dense, symmetric positive definite W.
/// No covariance estimation happens here.
MappingMatrix p_gls(const AggregationMatrix& s, const Matrix& covariance);

/// Y~ = S P Y^. The result is coherent for every P.
HierarchyVector reconcile(const AggregationMatrix& s, const MappingMatrix& p, const HierarchyVector& y_hat);

} // namespace dtr
